"""Affine and projective Reed-Muller codes over GF(q^s).

Codes are stored by their RREF generator matrix, so two constructions of the
same code compare equal as matrices.  Generator rows come from evaluating a
fixed monomial basis at the fixed point orders of :mod:`prmkit.pspace`.

The projective code of degree d in m+1 homogeneous variables decomposes as

    {(u + expand_v(v, d), v) : u in RM_{d-1}(m), v in PRM_d(m-1)},

which is the engine behind the dimension recursion, the subfield subcode
recursion and the weight bounds in the sibling modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import linalg
from .gf import FieldCtx, build_field_of_order
from .linalg import Matrix
from .pspace import enumerate_affine, enumerate_projective, projective_count

FAMILIES = ("rm", "prm", "ssc-rm", "ssc-prm", "dual-rm", "dual-prm", "dual-ssc-rm", "dual-ssc-prm")


@dataclass(frozen=True)
class CodeSpec:
    """Symbolic name of a code: field GF(q^s), m variables, degree d."""

    q: int
    s: int
    m: int
    d: int
    family: str = "prm"
    lam: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.q < 2 or self.s < 1 or self.m < 1:
            raise ValueError("invalid code spec")

    @property
    def qs(self) -> int:
        return self.q**self.s

    def field(self) -> FieldCtx:
        return build_field_of_order(self.qs)


def ssc_degree(q: int, s: int, lam: int) -> int:
    """The special degree d_lam = lam*(q^s-1)/(q-1) driving the SSC recursion."""
    num = lam * (q**s - 1)
    if num % (q - 1) != 0:  # pragma: no cover - always divisible
        raise ValueError("degree is not integral")
    return num // (q - 1)


class LinearCode:
    """A linear code given by its canonical (RREF) generator matrix."""

    def __init__(self, ctx: FieldCtx, generator: Matrix, spec: CodeSpec | None = None) -> None:
        self.ctx = ctx
        self.generator = linalg.row_basis(generator)
        self.spec = spec

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.ctx.order}))"

    def contains(self, v) -> bool:
        return linalg.row_space_contains(self.generator, v)

    def codeword(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64).reshape(1, -1)
        return linalg.matmul(Matrix(self.ctx, msg), self.generator).a[0]


# -- closed-form parameters ------------------------------------------------


def _comb0(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def rm_length(qs: int, m: int) -> int:
    return qs**m


def prm_length(qs: int, m: int) -> int:
    return projective_count(qs, m)


def rm_dim(qs: int, m: int, d: int) -> int:
    """Dimension of the degree-d affine code; 0 below degree 0, full above."""
    if d < 0:
        return 0
    if m == 0:
        return 1
    if d >= m * (qs - 1):
        return qs**m
    total = 0
    for t in range(d + 1):
        for j in range(m + 1):
            total += (-1) ** j * _comb0(m, j) * _comb0(t - j * qs + m - 1, t - j * qs)
    return total


def prm_dim(qs: int, m: int, d: int) -> int:
    """Dimension of the degree-d projective code; {0} for d <= 0."""
    if d <= 0:
        return 0
    if m == 0:
        return 1
    if m == 1:
        return min(d + 1, qs + 1)
    if d > m * (qs - 1):
        return prm_length(qs, m)
    total = 0
    for t in range(1, d + 1):
        if (d - t) % (qs - 1) != 0:
            continue
        for j in range(m + 2):
            total += (-1) ** j * _comb0(m + 1, j) * _comb0(t - j * qs + m, t - j * qs)
    return total


def rm_d1(qs: int, m: int, d: int) -> int:
    """Minimum distance of the affine code (full code has distance 1)."""
    if d <= 0:
        return qs**m if d == 0 else 0
    if d >= m * (qs - 1):
        return 1
    nu, mu = divmod(d, qs - 1)
    return (qs - mu) * qs ** (m - nu - 1)


def prm_d1(qs: int, m: int, d: int) -> int:
    if d <= 0:
        return 0
    if d > m * (qs - 1):
        return 1
    nu, mu = divmod(d - 1, qs - 1)
    return (qs - mu) * qs ** (m - nu - 1)


def rm_params(spec: CodeSpec) -> tuple[int, int, int]:
    qs = spec.qs
    if not 0 <= spec.d:
        raise ValueError("degree out of range")
    return rm_length(qs, spec.m), rm_dim(qs, spec.m, spec.d), rm_d1(qs, spec.m, spec.d)


def prm_params(spec: CodeSpec) -> tuple[int, int, int]:
    qs = spec.qs
    if not 1 <= spec.d <= spec.m * (qs - 1):
        raise ValueError("degree out of range")
    return prm_length(qs, spec.m), prm_dim(qs, spec.m, spec.d), prm_d1(qs, spec.m, spec.d)


def rm_dim_m2(qs: int, d: int) -> int:
    """Binomial shortcut for the planar affine dimension, used as cross-check."""
    if d < qs:
        return math.comb(d + 2, 2)
    return math.comb(d + 2, 2) - 2 * math.comb(d - qs + 2, 2)


# -- monomial bases ----------------------------------------------------------


def affine_monomials(qs: int, m: int, d: int) -> list[tuple[int, ...]]:
    """Reduced monomial exponents (all < qs) of total degree <= d, lex order."""
    out = []
    for alpha in product(range(qs), repeat=m):
        if sum(alpha) <= d:
            out.append(alpha)
    return out


def projective_monomials(qs: int, m: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples (a_0..a_m) of the standard degree-d basis.

    Class i consists of the monomials divisible by x_i but by no earlier
    variable, with exponents after position i reduced below qs; the leading
    exponent soaks up the remaining degree.  Classes are listed in ascending
    i, tuples in ascending lexicographic order within a class.
    """
    out = []
    for i in range(m + 1):
        cls = []
        for tail in product(range(qs), repeat=m - i):
            lead = d - sum(tail)
            if lead >= 1:
                cls.append((0,) * i + (lead,) + tail)
        cls.sort()
        out.extend(cls)
    return out


def evaluate_monomials(ctx: FieldCtx, exponents: list[tuple[int, ...]], points: np.ndarray) -> Matrix:
    """Matrix whose row j is the evaluation of the j-th monomial at all points."""
    npts = points.shape[0]
    rows = np.empty((len(exponents), npts), dtype=np.int64)
    for j, alpha in enumerate(exponents):
        acc = np.ones(npts, dtype=np.int64)
        for col, a in enumerate(alpha):
            if a:
                acc = ctx.mul_vec(acc, ctx.pow_vec(points[:, col], a))
        rows[j] = acc
    return Matrix(ctx, rows)


# -- generators --------------------------------------------------------------


def rm_generator(spec: CodeSpec) -> LinearCode:
    qs = spec.qs
    if not 0 <= spec.d <= spec.m * (qs - 1):
        raise ValueError(f"degree {spec.d} out of range for the affine family")
    ctx = spec.field()
    pts = enumerate_affine(ctx, spec.m).points
    mons = affine_monomials(qs, spec.m, spec.d)
    raw = evaluate_monomials(ctx, mons, pts)
    code = LinearCode(ctx, raw, spec)
    if code.k != len(mons):  # pragma: no cover - basis property
        raise AssertionError("monomial evaluations are rank deficient")
    return code


def prm_generator(spec: CodeSpec) -> LinearCode:
    qs = spec.qs
    if not 1 <= spec.d <= spec.m * (qs - 1):
        raise ValueError(f"degree {spec.d} out of range for the projective family")
    return _prm_generator_unchecked(spec.q, spec.s, spec.m, spec.d)


def _prm_generator_unchecked(q: int, s: int, m: int, d: int) -> LinearCode:
    """Projective generator allowing d beyond m*(qs-1) (the full code)."""
    spec = CodeSpec(q, s, m, d, "prm")
    ctx = spec.field()
    pts = enumerate_projective(ctx, m).points
    mons = projective_monomials(spec.qs, m, d)
    raw = evaluate_monomials(ctx, mons, pts)
    code = LinearCode(ctx, raw, spec)
    if code.k != len(mons):  # pragma: no cover - basis property
        raise AssertionError("monomial evaluations are rank deficient")
    return code


def dual_code(C: LinearCode) -> LinearCode:
    spec = None
    if C.spec is not None and not C.spec.family.startswith("dual-"):
        spec = CodeSpec(C.spec.q, C.spec.s, C.spec.m, C.spec.d, "dual-" + C.spec.family, C.spec.lam)
    return LinearCode(C.ctx, linalg.kernel(C.generator), spec)


def prm_dual_generator(spec: CodeSpec) -> LinearCode:
    """The dual described in closed form: degree m(qs-1)-d, plus the all-ones
    row when d is a multiple of qs-1."""
    qs = spec.qs
    dperp = spec.m * (qs - 1) - spec.d
    if spec.d % (qs - 1) != 0:
        return prm_generator(CodeSpec(spec.q, spec.s, spec.m, dperp, "prm"))
    ctx = spec.field()
    n = prm_length(qs, spec.m)
    ones = np.ones((1, n), dtype=np.int64)
    if dperp <= 0:
        return LinearCode(ctx, Matrix(ctx, ones))
    base = prm_generator(CodeSpec(spec.q, spec.s, spec.m, dperp, "prm"))
    return LinearCode(ctx, Matrix(ctx, np.vstack([base.generator.a, ones])))


# -- the recursive construction ----------------------------------------------


def expand_v(ctx: FieldCtx, v: np.ndarray, d: int) -> np.ndarray:
    """Lift a vector on P^(m-1) to the affine block: (v, xi^d v, ..., 0)."""
    v = np.asarray(v, dtype=np.int64)
    qs = ctx.order
    blocks = [ctx.scale_vec(ctx.xi_pow(r * d), v) for r in range(qs - 1)]
    blocks.append(np.zeros(1, dtype=np.int64))
    return np.concatenate(blocks)


def assemble_recursive(ctx: FieldCtx, u: np.ndarray, v: np.ndarray, d: int) -> np.ndarray:
    """Combine u (affine part) and v (hyperplane part) into (u + v_exp, v)."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    ve = expand_v(ctx, v, d)
    if ve.shape != u.shape:
        raise ValueError("length mismatch between affine word and lifted word")
    return np.concatenate([ctx.add_vec(u, ve), v])


def recursive_span(q: int, s: int, m: int, d: int) -> LinearCode:
    """The code spanned by {(u,0)} and {(expand_v(v), v)} over component bases."""
    spec = CodeSpec(q, s, m, d, "prm")
    ctx = spec.field()
    u_code = rm_generator(CodeSpec(q, s, m, d - 1, "rm"))
    v_code = _prm_generator_unchecked(q, s, m - 1, d) if m >= 2 else None
    n_prev = prm_length(spec.qs, m - 1)
    rows = []
    for u in u_code.generator.a:
        rows.append(np.concatenate([u, np.zeros(n_prev, dtype=np.int64)]))
    if m >= 2:
        v_rows = v_code.generator.a
    else:
        v_rows = np.ones((1, 1), dtype=np.int64)  # P^0 evaluation of x_m^d
    for v in v_rows:
        rows.append(np.concatenate([expand_v(ctx, v, d), v]))
    return LinearCode(ctx, Matrix(ctx, np.array(rows, dtype=np.int64)), spec)


def verify_recursion(spec: CodeSpec) -> bool:
    """Check the two-block construction against the direct generator.

    True iff the span of the lifted component bases equals the projective
    code and the dimension splits as dim RM_{d-1}(m) + dim PRM_d(m-1).
    """
    if spec.m < 1:
        raise ValueError("m must be at least 1")
    direct = prm_generator(spec)
    assembled = recursive_span(spec.q, spec.s, spec.m, spec.d)
    qs = spec.qs
    dim_sum = rm_dim(qs, spec.m, spec.d - 1) + prm_dim(qs, spec.m - 1, spec.d)
    return (
        linalg.row_space_equal(direct.generator, assembled.generator)
        and direct.k == dim_sum
        and assembled.k == dim_sum
    )
