"""Dense exact linear algebra over a FieldCtx.

Matrices carry their field context and a 2-D int64 numpy array of element
codes.  Everything is deterministic: pivots are chosen leftmost-first,
first nonzero row below, and RREF is the canonical form used for all code
identity questions.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx


class Matrix:
    """A rows x cols matrix of field element codes."""

    def __init__(self, ctx: FieldCtx, array) -> None:
        a = np.array(array, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("matrix array must be 2-dimensional")
        if a.size and (a.min() < 0 or a.max() >= ctx.order):
            raise ValueError("entries outside field range")
        self.ctx = ctx
        self.a = a

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def copy(self) -> "Matrix":
        return Matrix(self.ctx, self.a)

    def transpose(self) -> "Matrix":
        return Matrix(self.ctx, self.a.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ctx is other.ctx
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __repr__(self) -> str:
        return f"Matrix({self.ctx!r}, {self.rows}x{self.cols})"


def zeros(ctx: FieldCtx, rows: int, cols: int) -> Matrix:
    return Matrix(ctx, np.zeros((rows, cols), dtype=np.int64))


def identity(ctx: FieldCtx, n: int) -> Matrix:
    return Matrix(ctx, np.eye(n, dtype=np.int64))


def vstack(blocks: list[Matrix]) -> Matrix:
    ctx = blocks[0].ctx
    return Matrix(ctx, np.vstack([b.a for b in blocks]))


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form; returns (R, pivot columns, rank)."""
    ctx = M.ctx
    A = M.a.copy()
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        below = np.nonzero(A[r:, c])[0]
        if below.size == 0:
            continue
        pr = r + int(below[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r] = ctx.scale_vec(ctx.inv(piv), A[r])
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = A[others, c]
            A[others] = ctx.sub_vec(A[others], ctx.mul_vec(factors[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return Matrix(ctx, A), tuple(pivots), len(pivots)


def rank(M: Matrix) -> int:
    return rref(M)[2]


def row_basis(M: Matrix) -> Matrix:
    """RREF with zero rows removed: the canonical basis of the row space."""
    R, _, rk = rref(M)
    return Matrix(M.ctx, R.a[:rk])


def kernel(M: Matrix) -> Matrix:
    """Basis of the right null space {x : M x = 0}, as rows."""
    ctx = M.ctx
    R, pivots, rk = rref(M)
    n = M.cols
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, pc in enumerate(pivots):
            out[i, pc] = ctx.neg(int(R.a[j, f]))
    return Matrix(ctx, out)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise ValueError("dimension mismatch")
    ctx = A.ctx
    out = np.zeros((A.rows, B.cols), dtype=np.int64)
    for t in range(A.cols):
        col = A.a[:, t]
        if not col.any():
            continue
        out = ctx.add_vec(out, ctx.mul_vec(col[:, None], B.a[t][None, :]))
    return Matrix(ctx, out)


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    """True iff A and B generate the same row space (same ambient width)."""
    if A.ctx is not B.ctx or A.cols != B.cols:
        raise ValueError("matrices live in different ambient spaces")
    return bool(np.array_equal(row_basis(A).a, row_basis(B).a))


def row_space_contains(A: Matrix, v) -> bool:
    """True iff the vector v lies in the row space of A."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    stacked = Matrix(A.ctx, np.vstack([A.a, v]))
    return rank(stacked) == rank(A)


def solve_right(A: Matrix, b) -> np.ndarray | None:
    """One solution x of A x = b, or None if inconsistent."""
    ctx = A.ctx
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != A.rows:
        raise ValueError("dimension mismatch")
    aug = Matrix(ctx, np.hstack([A.a, b[:, None]]))
    R, pivots, rk = rref(aug)
    if A.cols in pivots:
        return None
    x = np.zeros(A.cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R.a[i, A.cols]
    return x


def solve_left(A: Matrix, b) -> np.ndarray | None:
    """One solution x of x A = b, or None if b is outside the row space."""
    return solve_right(A.transpose(), b)
