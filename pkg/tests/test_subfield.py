import numpy as np
import pytest

from prmkit import linalg
from prmkit.codes import CodeSpec, LinearCode, prm_generator, ssc_degree
from prmkit.gf import build_field, build_field_of_order, embed_table
from prmkit.linalg import Matrix
from prmkit.subfield import (
    _parity_expansion,
    homogenize,
    poly_eval,
    prm_basis_polys,
    rm_basis_polys,
    ssc_basis_recursive,
    ssc_dual_recursive,
    ssc_inequalities_check,
    ssc_prm,
    ssc_recursion_check,
    subfield_subcode,
)
from prmkit.pspace import enumerate_projective


def test_ssc_known_dimensions():
    assert (ssc_prm(2, 2, 2, 3).n, ssc_prm(2, 2, 2, 3).k_sigma) == (21, 9)
    assert (ssc_prm(2, 2, 3, 3).n, ssc_prm(2, 2, 3, 3).k_sigma) == (85, 16)


def test_ssc_of_subfield_spanned_code_is_itself():
    # all-ones repetition over GF(4) is spanned by a binary word
    f4 = build_field(2, 2)
    f2 = build_field(2, 1)
    rep = LinearCode(f4, Matrix(f4, np.ones((1, 6), dtype=np.int64)))
    sub = subfield_subcode(rep, f2)
    assert sub.k_sigma == rep.k == 1


def test_methods_agree():
    f2 = build_field(2, 1)
    f3 = build_field(3, 1)
    for spec, small in [
        (CodeSpec(2, 2, 2, 3), f2),
        (CodeSpec(2, 2, 2, 2), f2),
        (CodeSpec(3, 2, 1, 4), f3),
    ]:
        C = prm_generator(spec)
        a = subfield_subcode(C, small, method="parity")
        b = subfield_subcode(C, small, method="generator")
        assert (a.generator.a == b.generator.a).all()


def test_ssc_invariants():
    """Rows embed into the parent; maximality via the rank identity and sampling."""
    spec = CodeSpec(2, 2, 2, 3)
    C = prm_generator(spec)
    f2 = build_field(2, 1)
    sub = subfield_subcode(C, f2)
    emb = embed_table(f2, C.ctx)
    for row in sub.generator.a:
        assert linalg.row_space_contains(C.generator, emb[row])
    expanded = _parity_expansion(C, f2)
    assert sub.k_sigma == C.n - linalg.rank(expanded)
    rng = np.random.default_rng(3)
    # random small-field words: membership in the subcode and in the parent agree
    for _ in range(200):
        w = rng.integers(0, 2, size=C.n)
        inside_sub = linalg.row_space_contains(sub.generator, w)
        inside_parent = linalg.row_space_contains(C.generator, emb[w])
        assert inside_sub == inside_parent
    # random subcode members embed into the parent
    for _ in range(50):
        msg = rng.integers(0, 2, size=sub.k_sigma)
        w = sub.as_code().codeword(msg)
        assert linalg.row_space_contains(C.generator, emb[w])


def test_invalid_subfield():
    C = prm_generator(CodeSpec(2, 2, 2, 1))
    with pytest.raises(ValueError):
        subfield_subcode(C, build_field(3, 1))


@pytest.mark.parametrize(
    "q,s,m,lam,total",
    [(2, 2, 2, 1, 9), (2, 2, 3, 2, 60), (3, 2, 2, 1, 9), (2, 2, 2, 2, None), (2, 2, 3, 1, 16)],
)
def test_recursion_check(q, s, m, lam, total):
    ok, dims = ssc_recursion_check(q, s, m, lam)
    assert ok
    assert dims["whole"] == dims["rm_part"] + dims["prm_part"]
    if total is not None:
        assert dims["whole"] == total


def test_recursion_check_validation():
    with pytest.raises(ValueError):
        ssc_recursion_check(2, 2, 1, 1)
    with pytest.raises(ValueError):
        ssc_recursion_check(2, 2, 2, 5)


def test_homogenize():
    assert homogenize({(0,): 1}, 3) == {(3, 0): 1}
    assert homogenize({(1,): 1, (2,): 1}, 3) == {(2, 1): 1, (1, 2): 1}
    assert homogenize({}, 3) == {}
    with pytest.raises(ValueError):
        homogenize({(3,): 1}, 3)


def test_homogenize_degree_preserving_injective():
    rng = np.random.default_rng(4)
    monos = [(1, 0), (0, 2), (2, 1), (0, 0)]
    out = homogenize({a: 1 for a in monos}, 4)
    assert len(out) == len(monos)
    assert all(sum(a) == 4 for a in out)


def test_worked_basis_example():
    """Three variables over the 4-element field at degree 3: 7 homogenized
    affine polynomials plus 9 hyperplane polynomials give the 16-dimensional
    subcode."""
    rm_polys = rm_basis_polys(2, 2, 3, 2)
    prm_polys = prm_basis_polys(2, 2, 2, 3)
    assert len(rm_polys) == 7 and len(prm_polys) == 9
    basis = ssc_basis_recursive(2, 2, 3, 1, rm_polys, prm_polys)
    assert len(basis) == 16
    assert all(len(set(map(sum, p))) == 1 and sum(next(iter(p))) == 3 for p in basis if p)


def test_basis_recursive_plane():
    basis = ssc_basis_recursive(2, 2, 2, 1)
    assert len(basis) == 9


def test_basis_recursive_rejects_bad_inputs():
    with pytest.raises(ValueError):
        ssc_basis_recursive(2, 2, 2, 1, rm_polys=[{(0, 0): 1}], prm_polys=None)


def test_poly_eval_matches_monomial_route():
    ctx = build_field_of_order(4)
    pts = enumerate_projective(ctx, 2).points
    poly = {(3, 0, 0): 1, (1, 1, 1): ctx.xi}
    direct = poly_eval(ctx, poly, pts)
    manual = ctx.add_vec(
        ctx.pow_vec(pts[:, 0], 3),
        ctx.scale_vec(ctx.xi, ctx.mul_vec(pts[:, 0], ctx.mul_vec(pts[:, 1], pts[:, 2]))),
    )
    assert (direct == manual).all()


@pytest.mark.parametrize("q,s,m,lam,expected", [(2, 2, 2, 1, (21, 12)), (2, 2, 3, 2, (85, 25)), (3, 2, 2, 1, (91, 82))])
def test_dual_recursion(q, s, m, lam, expected):
    code = ssc_dual_recursive(q, s, m, lam)
    assert (code.n, code.k) == expected


def test_dual_recursion_zero_dim_inner():
    # at lambda=2 the inner line subcode is the full [5,5] space, so its dual
    # vanishes and the assembled dual comes from the affine factor alone
    assert ssc_prm(2, 2, 1, 6).k_sigma == 5
    code = ssc_dual_recursive(2, 2, 2, 2)
    assert (code.n, code.k) == (21, 1)


def test_inequalities_report():
    rep = ssc_inequalities_check(2, 2, 2, 3)
    assert rep["distances_ok"] and rep["dim_gap_ok"]
    assert rep["d1_rm_parent"] == 8 and rep["d1_ssc_prm"] == 8
    assert rep["dim_ssc_prm"] == 9 and rep["dim_ssc_rm"] == 5
    assert rep["nondegenerate"] and rep["dim_gap_strict"]
    rep2 = ssc_inequalities_check(2, 2, 3, 3)
    assert rep2["dim_ssc_prm"] == 16
    assert rep2["distances_ok"]


def test_whole_field_subcode_is_code_itself():
    # s=1: the "subfield" is the field, the subcode is the code
    C = prm_generator(CodeSpec(3, 1, 2, 2))
    sub = subfield_subcode(C, build_field(3, 1))
    assert linalg.row_space_equal(sub.generator, C.generator)


def test_ssc_degree_values():
    assert ssc_degree(2, 2, 1) == 3
    assert ssc_degree(2, 2, 2) == 6
    assert ssc_degree(3, 2, 1) == 4
    assert ssc_degree(5, 2, 1) == 6
