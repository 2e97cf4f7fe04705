import numpy as np
import pytest

from prmkit import linalg
from prmkit.codes import CodeSpec, LinearCode, dual_code, prm_generator, rm_generator
from prmkit.gf import build_field, build_field_of_order
from prmkit.oracle import (
    EnumerationInfeasible,
    gaussian_binomial,
    ghw_exact,
    min_distance_exact,
    subspace_bases,
    weight_hierarchy_exact,
)
from prmkit.subfield import ssc_prm


def test_min_distance_repetition():
    code = rm_generator(CodeSpec(3, 1, 2, 0, "rm"))
    assert min_distance_exact(code) == 9


def test_min_distance_simplex():
    code = prm_generator(CodeSpec(2, 1, 2, 1))
    assert min_distance_exact(code) == 4


def test_min_distance_cap():
    code = prm_generator(CodeSpec(2, 1, 3, 3))  # [15, 14]
    with pytest.raises(EnumerationInfeasible):
        min_distance_exact(code, cap=1 << 10)


def test_min_distance_threads(monkeypatch):
    monkeypatch.setenv("PRMKIT_THREADS", "4")
    code = prm_generator(CodeSpec(3, 1, 2, 2))
    assert min_distance_exact(code) == 6


def test_ssc_distance_bound():
    code = ssc_prm(2, 2, 2, 3).as_code()
    assert min_distance_exact(code) >= 8


@pytest.mark.parametrize("k,r,q", [(4, 2, 2), (4, 2, 3), (5, 3, 2), (5, 2, 3), (3, 1, 4), (6, 3, 2)])
def test_subspace_iterator_count(k, r, q):
    seen = set()
    count = 0
    for basis in subspace_bases(k, r, q):
        count += 1
        seen.add(basis.tobytes())
    assert count == gaussian_binomial(k, r, q)
    assert len(seen) == count  # every canonical form distinct


def test_subspace_bases_are_canonical():
    ctx = build_field(2, 1)
    for basis in subspace_bases(4, 2, 2):
        R, _, rk = linalg.rref(linalg.Matrix(ctx, basis))
        assert rk == 2 and (R.a == basis).all()


def test_ghw_simplex():
    code = prm_generator(CodeSpec(2, 1, 2, 1))
    assert [ghw_exact(code, r) for r in (1, 2, 3)] == [4, 6, 7]
    assert ghw_exact(code, 0) == 0


def test_ghw_full_rank_is_length():
    code = prm_generator(CodeSpec(3, 1, 2, 2))
    assert ghw_exact(code, code.k) == code.n


def test_ghw_matches_min_distance():
    for spec in [CodeSpec(2, 1, 2, 2), CodeSpec(3, 1, 2, 1), CodeSpec(2, 2, 2, 1)]:
        code = prm_generator(spec)
        assert ghw_exact(code, 1) == min_distance_exact(code)


def test_ghw_table_cell():
    # quadratic plane code over the 3-element field: second weight is 8
    code = prm_generator(CodeSpec(3, 1, 2, 2))
    assert ghw_exact(code, 2) == 8


def test_hierarchy_mds():
    # projective Reed-Solomon codes are MDS: d_r = n - k + r throughout
    code = prm_generator(CodeSpec(5, 1, 1, 2))
    entries = weight_hierarchy_exact(code)
    assert [e.value for e in entries] == [code.n - code.k + r for r in range(1, code.k + 1)]


def test_hierarchy_strictly_increasing():
    code = prm_generator(CodeSpec(2, 1, 3, 2))
    vals = [e.value for e in weight_hierarchy_exact(code)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[-1] <= code.n


def test_hierarchy_zero_rank():
    ctx = build_field(2, 1)
    zero = LinearCode(ctx, linalg.zeros(ctx, 0, 5))
    assert weight_hierarchy_exact(zero) == []


def test_duality_fallback_used():
    code = prm_generator(CodeSpec(2, 1, 3, 3))  # [15, 14]
    entries = weight_hierarchy_exact(code)
    assert any(e.method == "duality" for e in entries)
    assert all(e.value is not None for e in entries)
    # the [15, 14] code misses only the full-weight value
    assert [e.value for e in entries] == [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]


def test_ghw_infeasible_without_duality():
    code = prm_generator(CodeSpec(2, 1, 3, 2))  # [15, 10]
    with pytest.raises(EnumerationInfeasible):
        ghw_exact(code, 5, cap=10_000, use_duality=False)


@pytest.mark.parametrize("spec", [CodeSpec(2, 1, 2, 1), CodeSpec(2, 1, 2, 2), CodeSpec(3, 1, 2, 1)])
def test_wei_partition_on_pairs(spec):
    """A hierarchy and its dual's mirror partition the coordinate range."""
    code = prm_generator(spec)
    dual = dual_code(code)
    h = [e.value for e in weight_hierarchy_exact(code)]
    hd = [e.value for e in weight_hierarchy_exact(dual)]
    n = code.n
    assert sorted(h + [n + 1 - v for v in hd]) == list(range(1, n + 1))


def test_wei_partition_random_codes():
    rng = np.random.default_rng(11)
    for q in (2, 3):
        ctx = build_field_of_order(q)
        for _ in range(8):
            n = int(rng.integers(6, 12))
            k = int(rng.integers(2, 5))
            G = linalg.Matrix(ctx, rng.integers(0, q, size=(k, n)))
            code = LinearCode(ctx, G)
            if code.k == 0 or code.k == n:
                continue
            dual = dual_code(code)
            h = [e.value for e in weight_hierarchy_exact(code, use_duality=False)]
            hd = [e.value for e in weight_hierarchy_exact(dual, use_duality=False)]
            if None in h or None in hd:
                continue
            assert sorted(h + [code.n + 1 - v for v in hd]) == list(range(1, code.n + 1))
