import pytest

from prmkit.gf import build_field, build_field_of_order
from prmkit.pspace import enumerate_affine, enumerate_projective, projective_count


def test_base_case():
    for q in (2, 3, 4):
        ctx = build_field_of_order(q)
        assert enumerate_projective(ctx, 0).points.tolist() == [[1]]


def test_line_over_gf2():
    # The binding constraint is that the recursive construction holds
    # coordinate-wise, which forces the affine block before the hyperplane.
    ctx = build_field(2, 1)
    assert enumerate_projective(ctx, 1).points.tolist() == [[1, 1], [1, 0], [0, 1]]


def test_affine_orders():
    f3 = build_field(3, 1)
    assert enumerate_affine(f3, 1).points.tolist() == [[1], [2], [0]]
    f4 = build_field(2, 2)
    assert enumerate_affine(f4, 1).points.tolist() == [[1], [2], [3], [0]]
    f2 = build_field(2, 1)
    assert enumerate_affine(f2, 2).points.tolist() == [[1, 1], [1, 0], [0, 1], [0, 0]]


def test_plane_over_gf2():
    ctx = build_field(2, 1)
    pts = enumerate_projective(ctx, 2).points
    assert pts.shape == (7, 3)
    assert (pts[:4, 0] == 1).all() and (pts[4:, 0] == 0).all()
    assert pts[4:, 1:].tolist() == enumerate_projective(ctx, 1).points.tolist()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_counts_distinct_normalized(q, m):
    if q ** (m + 1) > 2_000_000:
        pytest.skip("point set too large for this sweep")
    ctx = build_field_of_order(q)
    ps = enumerate_projective(ctx, m)
    assert ps.count == projective_count(q, m) == sum(q** (j) for j in range(m + 1))
    as_tuples = {tuple(p) for p in ps.points.tolist()}
    assert len(as_tuples) == ps.count
    for p in ps.points.tolist():
        first = next(x for x in p if x)
        assert first == 1


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2), (9, 1)])
def test_coset_consistency(q, m):
    """Block r of affine m-space is xi^r times the fixed P^(m-1), pointwise."""
    ctx = build_field_of_order(q)
    aff = enumerate_affine(ctx, m).points
    prev = enumerate_projective(ctx, m - 1).points
    npts = prev.shape[0]
    assert aff.shape[0] == q**m == (q - 1) * npts + 1
    for r in range(q - 1):
        block = aff[r * npts : (r + 1) * npts]
        assert (block == ctx.scale_vec(ctx.xi_pow(r), prev)).all()
    assert not aff[-1].any()
    distinct = {tuple(p) for p in aff.tolist()}
    assert len(distinct) == q**m


def test_size_cap():
    ctx = build_field(2, 1)
    with pytest.raises(ValueError):
        enumerate_projective(ctx, 3, cap=10)
    with pytest.raises(ValueError):
        enumerate_affine(ctx, 0)
