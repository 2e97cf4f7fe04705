"""Brute-force ground truth for distances and weight hierarchies.

Nothing here trusts the closed-form machinery: minimum distances come from
enumerating the full message space, and generalized Hamming weights from
enumerating r-dimensional subspaces in RREF canonical form (each subspace
appears exactly once; the total per run is checked against the Gaussian
binomial).

For a code whose own enumeration is out of reach, the full hierarchy can
still be obtained when the dual side is small, via the complement identity
{d_r(C)} = {1..n} \\ {n+1-d_r(dual)}; results carry the method used.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .codes import LinearCode

DEFAULT_DISTANCE_CAP = 1 << 22
DEFAULT_SUBSPACE_CAP = 10**8
# Beyond this many subspaces a Python-level enumeration is not worth waiting
# for even when the caller's cap allows it; the duality route takes over.
PRACTICAL_SUBSPACE_CAP = 4 * 10**6


class EnumerationInfeasible(Exception):
    """Raised when an exact computation would exceed its enumeration cap."""

    def __init__(self, needed: int, cap: int, what: str = "enumeration"):
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what} needs {needed} steps, cap is {cap}")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PRMKIT_THREADS", "1")))
    except ValueError:
        return 1


# -- minimum distance ---------------------------------------------------------


def _combo_table(code: LinearCode, rows: np.ndarray) -> np.ndarray:
    """All field-linear combinations of the given generator rows, by doubling."""
    ctx = code.ctx
    table = np.zeros((1, code.n), dtype=np.int64)
    for row in rows:
        parts = [table]
        for c in range(1, ctx.order):
            parts.append(ctx.add_vec(table, ctx.scale_vec(c, row)))
        table = np.vstack(parts)
    return table


def _pack_gf2(rows: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows into uint64 words for popcount-based weighing."""
    nwords = (rows.shape[1] + 63) // 64
    padded = np.zeros((rows.shape[0], nwords * 64), dtype=np.uint8)
    padded[:, : rows.shape[1]] = rows.astype(np.uint8)
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


if hasattr(np, "bitwise_count"):
    _popcount64 = np.bitwise_count
else:  # pragma: no cover - numpy < 2.0
    _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

    def _popcount64(words):
        halves = np.ascontiguousarray(words).view(np.uint16)
        return _POP16[halves].reshape(*words.shape, 4).sum(axis=-1, dtype=np.int64)


def min_distance_exact(C: LinearCode, cap: int = DEFAULT_DISTANCE_CAP) -> int:
    """Exact minimum distance by scanning all q^k codewords.

    The message space is split in half: every combination of each half is
    tabulated once, then each cross sum is weighed in vectorized blocks.
    Workers set via PRMKIT_THREADS share only the block range; the result
    is a plain minimum and independent of scheduling.
    """
    k, n, q = C.k, C.n, C.ctx.order
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    total = q**k
    if total > cap:
        raise EnumerationInfeasible(total, cap, "codeword enumeration")
    ctx = C.ctx
    G = C.generator.a
    ka = (k + 1) // 2
    A = _combo_table(C, G[:ka])  # the larger half, weighed vectorized
    B = _combo_table(C, G[ka:])

    if q == 2:
        Ap = _pack_gf2(A)
        Bp = _pack_gf2(B)

        def scan(lo: int, hi: int) -> int:
            best = n + 1
            for i in range(lo, hi):
                w = _popcount64(Ap ^ Bp[i]).sum(axis=1)
                if i == 0:
                    w[0] = n + 1  # the zero codeword
                m = int(w.min())
                if m < best:
                    best = m
            return best

    else:

        def scan(lo: int, hi: int) -> int:
            best = n + 1
            for i in range(lo, hi):
                w = np.count_nonzero(ctx.add_vec(A, B[i][None, :]), axis=1)
                if i == 0:
                    w[0] = n + 1
                m = int(w.min())
                if m < best:
                    best = m
            return best

    nb = B.shape[0]
    workers = min(_threads(), nb)
    if workers == 1:
        return scan(0, nb)
    bounds = [nb * t // workers for t in range(workers + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(scan, bounds[:-1], bounds[1:])
    return min(parts)


# -- subspace enumeration -------------------------------------------------


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of a k-dimensional space over GF(q)."""
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_bases(k: int, r: int, q: int):
    """Yield one canonical (RREF) r x k basis per r-dimensional subspace.

    Pivot columns run over all r-subsets; entries right of each pivot and
    off the later pivot columns run over all field values.
    """
    if r == 0:
        yield np.zeros((0, k), dtype=np.int64)
        return
    for pivots in combinations(range(k), r):
        pivset = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, k) if c not in pivset]
        base = np.zeros((r, k), dtype=np.int64)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        counter = [0] * len(free)
        while True:
            yield base.copy()
            pos = len(free) - 1
            while pos >= 0:
                counter[pos] += 1
                i, c = free[pos]
                if counter[pos] < q:
                    base[i, c] = counter[pos]
                    break
                counter[pos] = 0
                base[i, c] = 0
                pos -= 1
            if pos < 0:
                break


def code_support_size(C: LinearCode) -> int:
    """Number of coordinates where some codeword is nonzero."""
    return int(np.count_nonzero(C.generator.a.any(axis=0)))


def _support_masks(rows_nonzero: np.ndarray) -> list[int]:
    packed = np.packbits(rows_nonzero, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _ghw_enumerate(C: LinearCode, r: int, expected: int) -> int:
    """Minimum support over all r-dim subcodes, with earliest-abandon pruning."""
    ctx = C.ctx
    q = ctx.order
    k = C.k

    # Light generator rows first: early pivot patterns then combine
    # low-weight rows, which tightens the incumbent quickly.
    order = np.argsort(np.count_nonzero(C.generator.a, axis=1), kind="stable")
    G = C.generator.a[order]

    best = code_support_size(C)
    seen = 0
    for pivots in combinations(range(k), r):
        pivset = set(pivots)
        # Per basis row: candidate support masks over that row's free entries.
        cand_masks: list[list[int]] = []
        pattern_count = 1
        for i, p in enumerate(pivots):
            freecols = [c for c in range(p + 1, k) if c not in pivset]
            msgs = np.zeros((q ** len(freecols), k), dtype=np.int64)
            msgs[:, p] = 1
            if freecols:
                msgs[:, freecols] = np.indices([q] * len(freecols)).reshape(len(freecols), -1).T
            words = np.zeros((msgs.shape[0], C.n), dtype=np.int64)
            for t in range(k):
                col = msgs[:, t]
                if col.any():
                    words = ctx.add_vec(words, ctx.mul_vec(col[:, None], G[t][None, :]))
            cand_masks.append(_support_masks(words != 0))
            pattern_count *= msgs.shape[0]
        seen += pattern_count
        best = _best_of_pattern(cand_masks, best)
    if seen != expected:  # pragma: no cover - enumeration soundness guard
        raise AssertionError(f"enumerated {seen} subspaces, expected {expected}")
    return best


def _best_of_pattern(cand_masks: list[list[int]], best: int) -> int:
    depth = len(cand_masks)

    def rec(level: int, acc: int, bound: int) -> int:
        if level == depth:
            return acc.bit_count()
        for mask in cand_masks[level]:
            nacc = acc | mask
            if nacc.bit_count() < bound:
                bound = rec(level + 1, nacc, bound)
        return bound

    return rec(0, 0, best)


def ghw_exact(
    C: LinearCode,
    r: int,
    cap: int = DEFAULT_SUBSPACE_CAP,
    use_duality: bool = True,
) -> int:
    """Exact r-th generalized Hamming weight.

    Direct route: enumerate canonical subspace bases with branch-and-bound
    on the accumulated support.  When the subspace count is out of reach and
    ``use_duality`` is set, the hierarchy is derived through the dual code
    instead (see :func:`weight_hierarchy_exact`).
    """
    k = C.k
    if r == 0:
        return 0
    if not 1 <= r <= k:
        raise ValueError(f"rank {r} out of range for a dimension-{k} code")
    count = gaussian_binomial(k, r, C.ctx.order)
    if count <= min(cap, PRACTICAL_SUBSPACE_CAP):
        return _ghw_enumerate(C, r, count)
    if use_duality:
        entries = weight_hierarchy_exact(C, cap=cap, use_duality=True)
        if entries[r - 1].value is not None:
            return entries[r - 1].value
    raise EnumerationInfeasible(count, cap, "subspace enumeration")


@dataclass
class HierarchyEntry:
    r: int
    value: int | None
    method: str  # "direct", "duality", or "infeasible"


def weight_hierarchy_exact(
    C: LinearCode,
    cap: int = DEFAULT_SUBSPACE_CAP,
    use_duality: bool = True,
) -> list[HierarchyEntry]:
    """The full list d_1..d_k with per-rank feasibility flags.

    Ranks whose direct enumeration is too large are filled in from the dual
    code's hierarchy when that side is enumerable, via the complement of the
    mirrored values n+1-d_r.  Computed ranks are checked to be strictly
    increasing.
    """
    k, n, q = C.k, C.n, C.ctx.order
    entries: list[HierarchyEntry] = []
    missing = False
    for r in range(1, k + 1):
        count = gaussian_binomial(k, r, q)
        if count <= min(cap, PRACTICAL_SUBSPACE_CAP):
            entries.append(HierarchyEntry(r, _ghw_enumerate(C, r, count), "direct"))
        else:
            entries.append(HierarchyEntry(r, None, "infeasible"))
            missing = True
    if missing and use_duality:
        dual = LinearCode(C.ctx, linalg.kernel(C.generator))
        counts = [gaussian_binomial(dual.k, r, q) for r in range(1, dual.k + 1)]
        if all(c <= min(cap, PRACTICAL_SUBSPACE_CAP) for c in counts):
            mirror = set()
            for r in range(1, dual.k + 1):
                mirror.add(n + 1 - _ghw_enumerate(dual, r, counts[r - 1]))
            hier = sorted(set(range(1, n + 1)) - mirror)
            if len(hier) != k:  # pragma: no cover - complement soundness guard
                raise AssertionError("dual complement does not have size k")
            for r in range(1, k + 1):
                if entries[r - 1].value is None:
                    entries[r - 1] = HierarchyEntry(r, hier[r - 1], "duality")
                elif entries[r - 1].value != hier[r - 1]:  # pragma: no cover
                    raise AssertionError("direct and duality hierarchies disagree")
    values = [e.value for e in entries if e.value is not None]
    if any(b <= a for a, b in zip(values, values[1:])):  # pragma: no cover
        raise AssertionError("hierarchy is not strictly increasing")
    return entries
