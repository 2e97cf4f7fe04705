"""Point enumerations for projective and affine evaluation codes.

Projective points are the representatives whose first nonzero coordinate is
1.  The ordering is fixed once and for all by a recursion that bottoms out
at P^0 = [(1,)]:

* affine m-space is listed as the cosets xi^0 * P^(m-1), xi^1 * P^(m-1), ...,
  xi^(q-2) * P^(m-1) followed by the origin, each coset in the fixed
  P^(m-1) order;
* P^m is the block {1} x (affine m-space) followed by {0} x P^(m-1).

This exact order is what makes the recursive code constructions hold
coordinate-wise, so it must not be changed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx

DEFAULT_POINT_CAP = 1 << 21


def projective_count(qs: int, m: int) -> int:
    """Number of points of P^m over a field of qs elements."""
    return (qs ** (m + 1) - 1) // (qs - 1) if qs > 1 else m + 1


@dataclass(frozen=True)
class ProjectivePointSet:
    ctx: FieldCtx
    m: int
    points: np.ndarray  # (p_m, m+1) element codes

    @property
    def count(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class AffinePointSet:
    ctx: FieldCtx
    m: int
    points: np.ndarray  # (q^m, m)

    @property
    def count(self) -> int:
        return self.points.shape[0]


def enumerate_projective(ctx: FieldCtx, m: int, cap: int = DEFAULT_POINT_CAP) -> ProjectivePointSet:
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = projective_count(ctx.order, m)
    if n > cap:
        raise ValueError(f"point set size {n} exceeds cap {cap}")
    if m == 0:
        return ProjectivePointSet(ctx, 0, np.ones((1, 1), dtype=np.int64))
    aff = enumerate_affine(ctx, m, cap=cap).points
    prev = enumerate_projective(ctx, m - 1, cap=cap).points
    top = np.hstack([np.ones((aff.shape[0], 1), dtype=np.int64), aff])
    bottom = np.hstack([np.zeros((prev.shape[0], 1), dtype=np.int64), prev])
    return ProjectivePointSet(ctx, m, np.vstack([top, bottom]))


def enumerate_affine(ctx: FieldCtx, m: int, cap: int = DEFAULT_POINT_CAP) -> AffinePointSet:
    if m < 1:
        raise ValueError("m must be positive")
    n = ctx.order**m
    if n > cap:
        raise ValueError(f"point set size {n} exceeds cap {cap}")
    prev = enumerate_projective(ctx, m - 1, cap=cap).points
    blocks = [ctx.scale_vec(ctx.xi_pow(r), prev) for r in range(ctx.order - 1)]
    blocks.append(np.zeros((1, m), dtype=np.int64))
    return AffinePointSet(ctx, m, np.vstack(blocks))
