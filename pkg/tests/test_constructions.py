"""Tests for the family builders: the two-block spreads, the masa spread,
the frame embedding and the recursion."""

import pytest

from qospread.constructions import (
    INFINITY,
    MASA,
    MATRIX_ALGEBRA,
    ConstructionParams,
    build_C,
    build_D,
    build_masa_spread,
    build_recursive,
    build_spread_2,
    embed_hat,
)
from qospread.finite_field import gf
from qospread.phase_space import (
    Subspace,
    check_pairwise_trivial,
    check_partition,
    classify_subspace,
    span_enumerate,
    symplectic_basis,
)
from qospread.verify import expected_count

P3 = ConstructionParams.create(3, 1, 2)


def scal(params, x):
    return params.field.scalar(x)


# --- C and D subspaces --------------------------------------------------------


def test_build_c_frozen_generators():
    sub = build_C(scal(P3, 1), scal(P3, 0), P3)
    assert [pt.coords for pt in sub.basis] == [(1, 0, 0, 1), (0, 1, 2, 0)]


def test_build_c_zero_zero():
    sub = build_C(scal(P3, 0), scal(P3, 0), P3)
    assert sub == Subspace.from_generators(3, 2, [(1, 0, 0, 0), (0, 0, 2, 0)])
    assert classify_subspace(sub).kind == "isotropic"


def test_build_c_gf9_nondegenerate():
    params = ConstructionParams.create(3, 2, 2)
    sub = build_C(params.field.one(), params.field.zero(), params)
    assert sub.dim == 4
    cls = classify_subspace(sub)
    assert cls == ("nondegenerate", 4)


def test_build_c_infinity_rejects_second_parameter():
    with pytest.raises(ValueError, match="no second parameter"):
        build_C(INFINITY, scal(P3, 1), P3)


def test_build_d_frozen_generators():
    d0 = build_D(scal(P3, 0), P3)
    assert d0 == Subspace.from_generators(3, 2, [(1, 1, 0, 0), (1, 2, 0, 0)])
    d1 = build_D(scal(P3, 1), P3)
    assert d1 == Subspace.from_generators(3, 2, [(1, 1, 2, 2), (1, 2, 2, 1)])
    dinf = build_D(INFINITY, P3)
    assert [pt.coords for pt in dinf.basis] == [(0, 0, 1, 0), (0, 0, 0, 1)]


@pytest.mark.parametrize("params", [P3, ConstructionParams.create(5, 1, 2), ConstructionParams.create(3, 2, 2)],
                         ids=["p3", "p5", "p3k2"])
def test_build_d_always_nondegenerate(params):
    for a in params.field.elements():
        assert classify_subspace(build_D(a, params)).kind == "nondegenerate"
    assert classify_subspace(build_D(INFINITY, params)).kind == "nondegenerate"


# --- two-block spread ----------------------------------------------------------


@pytest.mark.parametrize("p,k,count", [(3, 1, 10), (5, 1, 26), (7, 1, 50), (3, 2, 82)])
def test_spread_2_counts(p, k, count):
    fam = build_spread_2(ConstructionParams.create(p, k, 2))
    assert len(fam.members) == count == expected_count(p, k, 2)
    assert all(m.kind == MATRIX_ALGEBRA for m in fam.members)
    assert len(set(fam.labels())) == count


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (3, 2)])
def test_spread_2_is_a_spread_of_full_algebras(p, k):
    fam = build_spread_2(ConstructionParams.create(p, k, 2))
    assert check_pairwise_trivial(fam.subspaces(), fam.labels()).passed
    rep = check_partition(fam.subspaces(), fam.labels())
    assert rep.passed
    assert rep.covered == p ** (4 * k) - 1
    for m in fam.members:
        assert classify_subspace(m.subspace) == ("nondegenerate", 2 * k)


def test_spread_2_label_order():
    fam = build_spread_2(P3)
    assert fam.labels() == [
        "C[1,0]", "C[1,1]", "C[1,2]", "C[2,0]", "C[2,1]", "C[2,2]",
        "D[0]", "D[1]", "D[2]", "D[inf]",
    ]


def test_spread_2_requires_two_blocks():
    with pytest.raises(ValueError, match="n = 2"):
        build_spread_2(ConstructionParams.create(3, 1, 3))


# --- union identity -------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_union_identity_prime_fields(p):
    params = ConstructionParams.create(p, 1, 2)
    field = params.field
    ds = [build_D(a, params) for a in field.elements()] + [build_D(INFINITY, params)]
    cs = [build_C(field.zero(), b, params) for b in field.elements()]
    cs.append(build_C(INFINITY, None, params))
    assert check_partition(ds, against=cs).passed
    assert check_partition(cs, against=ds).passed


def test_union_identity_gf9():
    params = ConstructionParams.create(3, 2, 2)
    field = params.field
    ds = [build_D(a, params) for a in field.elements()] + [build_D(INFINITY, params)]
    cs = [build_C(field.zero(), b, params) for b in field.elements()]
    cs.append(build_C(INFINITY, None, params))
    assert check_partition(ds, against=cs).passed


# --- masa spread ----------------------------------------------------------------


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (3, 2)])
def test_masa_spread_is_an_isotropic_spread(p, k):
    fam = build_masa_spread(ConstructionParams.create(p, k, 2))
    assert len(fam.members) == p ** (2 * k) + 1
    assert all(m.kind == MASA for m in fam.members)
    for m in fam.members:
        cls = classify_subspace(m.subspace)
        assert cls.kind == "isotropic"
        assert m.subspace.dim == 2 * k
    rep = check_partition(fam.subspaces(), fam.labels())
    assert rep.passed


def test_masa_spread_contains_pure_shift_and_pure_clock():
    fam = build_masa_spread(P3)
    pure_s = Subspace.from_generators(3, 2, [(1, 0, 0, 0), (0, 0, 1, 0)])
    pure_w = Subspace.from_generators(3, 2, [(0, 1, 0, 0), (0, 0, 0, 1)])
    assert fam.members[0].label == "M[0]"
    assert fam.members[0].subspace == pure_s
    assert fam.members[-1].label == "M[inf]"
    assert fam.members[-1].subspace == pure_w


# --- frame embedding --------------------------------------------------------------


def standard_block_frame():
    full = Subspace.from_generators(3, 1, [(1, 0), (0, 1)])
    return symplectic_basis(full)


def pure_clock_basis():
    masa = build_masa_spread(P3).members[-1].subspace
    return list(masa.basis)


def test_embed_hat_zero_pair_is_left_padded():
    frame = standard_block_frame()
    right = pure_clock_basis()
    sub = embed_hat(scal(P3, 0), scal(P3, 0), frame, right, P3)
    assert sub == Subspace.from_generators(3, 3, [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)])


def test_embed_hat_infinity_is_right_padded():
    frame = standard_block_frame()
    right = pure_clock_basis()
    sub = embed_hat(INFINITY, None, frame, right, P3)
    assert sub == Subspace.from_generators(3, 3, [(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 1)])


def test_embed_hat_frozen_mixed_member():
    # (a, b) = (1, 0) with the standard frame and the pure-clock masa:
    # generators thread to S⊗W⊗I and W⊗I⊗W
    sub = embed_hat(scal(P3, 1), scal(P3, 0), standard_block_frame(), pure_clock_basis(), P3)
    assert sub == Subspace.from_generators(3, 3, [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 0, 1)])
    assert classify_subspace(sub) == ("nondegenerate", 2)
    # only the leading factor contributes to the pairing, which is 1
    from qospread.phase_space import symplectic_product

    g1, g2 = sub.basis
    assert symplectic_product(g1, g2) == symplectic_product(g1, g2, nfactors=1) == 1


def test_embed_hat_partitions_with_ends():
    # over all (a, b), plus the infinity member, the images partition the
    # 4k-dimensional pullback of frame + masa
    frame = standard_block_frame()
    right = pure_clock_basis()
    subs = [
        embed_hat(a, b, frame, right, P3)
        for a in P3.field.elements()
        for b in P3.field.elements()
    ]
    subs.append(embed_hat(INFINITY, None, frame, right, P3))
    assert check_pairwise_trivial(subs).passed
    covered = set()
    for s in subs:
        covered |= {pt.coords for pt in span_enumerate(s) if not pt.is_zero}
    assert len(covered) == 3**4 - 1


def test_embed_hat_validates_inputs():
    frame = standard_block_frame()
    right = pure_clock_basis()
    with pytest.raises(ValueError, match="2k"):
        embed_hat(scal(P3, 1), scal(P3, 0), frame[:1], right, P3)
    skewed = [frame[0], 2 * frame[1]]
    with pytest.raises(ValueError, match="symplectic frame"):
        embed_hat(scal(P3, 1), scal(P3, 0), skewed, right, P3)
    not_isotropic = standard_block_frame()
    not_isotropic = [
        pt.__class__(3, 2, pt.coords + (0, 0)) for pt in not_isotropic
    ]
    with pytest.raises(ValueError, match="isotropic"):
        embed_hat(scal(P3, 1), scal(P3, 0), frame, not_isotropic, P3)


# --- recursion ---------------------------------------------------------------------


def test_recursive_n1_single_full_block():
    fam = build_recursive(ConstructionParams.create(3, 1, 1))
    assert len(fam.members) == 1
    assert fam.members[0].label == "full"
    sub = fam.members[0].subspace
    assert sub.dim == 2
    assert classify_subspace(sub) == ("nondegenerate", 2)


def test_recursive_n2_is_spread_2():
    fam = build_recursive(P3)
    assert fam.labels() == build_spread_2(P3).labels()


@pytest.mark.parametrize("p,k,n", [(3, 1, 3), (3, 1, 4), (5, 1, 3), (3, 2, 3)])
def test_recursive_counts(p, k, n):
    fam = build_recursive(ConstructionParams.create(p, k, n))
    assert len(fam.members) == expected_count(p, k, n)
    assert len(set(fam.labels())) == len(fam.members)
    assert all(m.kind == MATRIX_ALGEBRA for m in fam.members)


@pytest.mark.parametrize("p,k,n", [(3, 1, 3), (3, 1, 4), (3, 1, 5)])
def test_recursive_partitions_ambient(p, k, n):
    fam = build_recursive(ConstructionParams.create(p, k, n))
    rep = check_partition(fam.subspaces(), fam.labels())
    assert rep.passed
    assert rep.covered == p ** (2 * k * n) - 1


def test_recursive_members_all_full_algebras_n3():
    fam = build_recursive(ConstructionParams.create(3, 1, 3))
    for m in fam.members:
        assert classify_subspace(m.subspace) == ("nondegenerate", 2)


def test_recursive_member_budget_guard():
    with pytest.raises(ValueError, match="budget"):
        build_recursive(ConstructionParams.create(11, 2, 5))


def test_recursive_gf9_members_have_dimension_2k():
    fam = build_recursive(ConstructionParams.create(3, 2, 3))
    assert len(fam.members) == expected_count(3, 2, 3) == 6643
    for m in fam.members[:50] + fam.members[-50:]:
        assert m.subspace.dim == 4


# --- parameter validation -----------------------------------------------------------


def test_params_reject_even_prime():
    with pytest.raises(ValueError, match="odd prime"):
        ConstructionParams.create(2, 1, 2)


def test_params_reject_square_nonresidue():
    with pytest.raises(ValueError, match="square"):
        ConstructionParams.create(3, 1, 2, nonresidue=(1,))


def test_params_reject_zero_nonresidue():
    with pytest.raises(ValueError, match="nonzero"):
        ConstructionParams.create(3, 1, 2, nonresidue=(0,))


def test_params_accept_override():
    # 1+2t is the other non-residue class representative pattern in GF(9):
    # anything non-square should be accepted
    f9 = gf(3, 2)
    squares = {x * x for x in f9.elements()}
    alt = next(x for x in f9.elements() if not x.is_zero and x not in squares and x.coords != (1, 1))
    params = ConstructionParams.create(3, 2, 2, nonresidue=alt.coords)
    fam = build_spread_2(params)
    assert check_partition(fam.subspaces()).passed
