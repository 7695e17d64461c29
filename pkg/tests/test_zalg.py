import pytest

from cohprobe.errors import NotPresentedByProjectives, WindowTooShallow
from cohprobe.freealg import GeneratorTable, parse_poly
from cohprobe.gbasis import AlgebraPresentation, complete_to_degree
from cohprobe.grmod import ModulePresentation
from cohprobe.linalg import QQ
from cohprobe.zalg import (
    ProjectivePresentation,
    cohproj_hom,
    coker_window,
    direct_sum,
    from_graded,
    gamma_star_presentation,
    hom_dim_window,
    projective_window,
    simple_window,
    tensor_projective_iso_check,
    transport_module,
    truncate_below,
    window_min_generator_profile,
)


@pytest.fixture(scope="module")
def model_tgb(corpus_fast):
    return complete_to_degree(corpus_fast["commutative_model"].presentation, 14)


@pytest.fixture(scope="module")
def free1_tgb():
    gt = GeneratorTable(["x"])
    return complete_to_degree(AlgebraPresentation(QQ, gt, [], label="free1"), 8)


def test_from_graded_dims_free1(free1_tgb):
    zw = from_graded(free1_tgb, 0, 6)
    assert all(zw.dim(i, j) == 1 for i in range(0, 7) for j in range(i, 7))


def test_from_graded_dims_free2(corpus_fast, tgb_fast):
    zw = from_graded(tgb_fast("free2"), 0, 4)
    for i in range(0, 5):
        for j in range(i, 5):
            assert zw.dim(i, j) == 2 ** (j - i)


def test_from_graded_dims_model(model_tgb):
    zw = from_graded(model_tgb, 0, 6)
    for i in range(0, 7):
        for j in range(i, 7):
            assert zw.dim(i, j) == j - i + 1


def test_window_audits(model_tgb, tgb_fast):
    assert from_graded(model_tgb, 0, 5).audit()["ok"]
    assert from_graded(tgb_fast("free2"), 0, 4).audit()["ok"]
    assert from_graded(tgb_fast("example2"), 0, 4).audit()["ok"]


def test_transport_projective(model_tgb):
    P3 = projective_window(model_tgb, 3, -2, 8)
    for i in range(-2, 9):
        assert P3.dim(i) == (3 - i + 1 if i <= 3 else 0)
    assert P3.audit()["ok"]


def test_transport_algebra_is_p0(model_tgb):
    pres = ModulePresentation.free(model_tgb, (0,))
    M = transport_module(pres, model_tgb, -4, 8)
    P0 = projective_window(model_tgb, 0, -4, 8)
    assert M.dims == P0.dims
    assert M.dim(0) == 1 and M.dim(-4) == 5


def test_transport_simple(model_tgb):
    pres = ModulePresentation.of_map(
        model_tgb, (1, 1), (0,),
        {(0, 0): parse_poly(model_tgb.gt, model_tgb.field, "x"),
         (0, 1): parse_poly(model_tgb.gt, model_tgb.field, "y")},
    )
    S = transport_module(pres, model_tgb, -4, 8)
    assert S.dim(0) == 1
    assert all(S.dim(i) == 0 for i in range(-4, 9) if i != 0)


def test_truncate_below(model_tgb):
    P3 = projective_window(model_tgb, 3, -2, 8)
    t = truncate_below(P3, 2)
    assert t.dim(3) == 0
    assert t.dim(2) == 2
    # truncating at the window top is the identity
    t2 = truncate_below(P3, 8)
    assert t2.dims == P3.dims
    # truncating below the floor kills everything
    t3 = truncate_below(P3, -3)
    assert all(v == 0 for v in t3.dims.values())


def test_truncation_exact_triple(model_tgb):
    # (P_j)_{<= j-1} + S_j fills P_j dimensionwise
    P2 = projective_window(model_tgb, 2, -2, 8)
    t = truncate_below(P2, 1)
    S = simple_window(model_tgb, 2, -2, 8)
    for i in range(-2, 9):
        assert t.dim(i) + S.dim(i) == P2.dim(i)


def test_hom_full_projectives(model_tgb):
    P0 = projective_window(model_tgb, 0, -2, 8)
    P2 = projective_window(model_tgb, 2, -2, 8)
    assert hom_dim_window(P0, P2) == 3  # A_2 of the model
    assert hom_dim_window(P2, P0) == 0


def test_cohproj_hom_model_values(model_tgb):
    for a, b in [(0, 0), (0, 3), (1, 4), (2, 5)]:
        r = cohproj_hom(
            projective_window(model_tgb, a, -2, 12),
            projective_window(model_tgb, b, -2, 12),
        )
        assert r.stabilized and r.value == b - a + 1, (a, b, r.table)


def test_cohproj_hom_bounded_target(model_tgb):
    P0 = projective_window(model_tgb, 0, -6, 8)
    S0 = simple_window(model_tgb, 0, -6, 8)
    r = cohproj_hom(P0, S0)
    assert r.stabilized and r.value == 0


def test_cohproj_hom_tensor_growth(tgb_fast):
    tgb = tgb_fast("free2")
    P0 = projective_window(tgb, 0, -6, 1)
    r = cohproj_hom(P0, P0)
    assert not r.stabilized
    values = [h for _, h in r.table]
    assert values[1:] == [1, 4, 16, 64, 256, 1024]
    assert all(values[i] <= values[i + 1] for i in range(len(values) - 1))


def test_cohproj_hom_tensor_coker_growth(tgb_fast):
    # M = coker(P_0 -x-> P_1) over T(k^2): trunc(P_1, n) is free on
    # 2^(1-n) generators and dim M_n = 2^(-n) for n <= 0, so the hom table
    # reads 1, 2, 8, 32, 128 on the window [-4, 1]
    tgb = tgb_fast("free2")
    gt, fld = tgb.gt, tgb.field
    pp = ProjectivePresentation([0], [1], {(0, 0): parse_poly(gt, fld, "x")})
    M = coker_window(pp, tgb, -5, 1)
    P1 = projective_window(tgb, 1, -5, 1)
    r = cohproj_hom(P1, M)
    assert not r.stabilized
    assert r.table == [(1, 1), (0, 2), (-1, 8), (-2, 32), (-3, 128), (-4, 512)]


def test_window_too_shallow(model_tgb):
    P0 = projective_window(model_tgb, 0, 0, 3)
    with pytest.raises(WindowTooShallow):
        cohproj_hom(P0, P0)


def test_direct_sum_dims(model_tgb):
    P1 = projective_window(model_tgb, 1, -2, 8)
    two = direct_sum([P1, P1])
    for i in range(-2, 9):
        assert two.dim(i) == 2 * P1.dim(i)
    assert two.audit()["ok"]


def test_tensor_iso_check():
    rep = tensor_projective_iso_check(2, 0, 8)
    assert rep.ok
    assert rep.dims[0][1:] == (256, 256, 256)
    assert not tensor_projective_iso_check(2, 0, 8, negative=True).ok
    # one generator: P_i is isomorphic to P_{i-1} on the nose
    assert tensor_projective_iso_check(1, 0, 6).ok


def test_gamma_star_projective(model_tgb):
    pp = ProjectivePresentation([], [2], {})
    pres = gamma_star_presentation(pp, model_tgb)
    assert pres.f0.shifts == (-2,)
    assert len(pres.f1.shifts) == 0


def test_gamma_star_requires_projectives(model_tgb):
    S = simple_window(model_tgb, 0, -2, 8)
    with pytest.raises(NotPresentedByProjectives):
        gamma_star_presentation(S, model_tgb)


def test_gamma_star_simple_vanishes_in_cohproj(model_tgb):
    # S_0 = coker(P_{-1}^2 -> P_0) maps to the trivial graded module; its
    # transport is bounded, so every cohproj hom into it stabilizes at 0
    gt = model_tgb.gt
    fld = model_tgb.field
    pp = ProjectivePresentation(
        [-1, -1], [0],
        {(0, 0): parse_poly(gt, fld, "x"), (0, 1): parse_poly(gt, fld, "y")},
    )
    rt = transport_module(gamma_star_presentation(pp, model_tgb), model_tgb, -6, 8)
    assert rt.dim(0) == 1 and all(rt.dim(i) == 0 for i in range(-6, 9) if i != 0)
    P1 = projective_window(model_tgb, 1, -6, 8)
    r = cohproj_hom(P1, rt)
    assert r.stabilized and r.value == 0


def test_coker_window_matches_transport(model_tgb):
    gt = model_tgb.gt
    fld = model_tgb.field
    pp = ProjectivePresentation([0], [1], {(0, 0): parse_poly(gt, fld, "x")})
    direct = coker_window(pp, model_tgb, -2, 10)
    rt = transport_module(gamma_star_presentation(pp, model_tgb), model_tgb, -2, 10)
    assert direct.dims == rt.dims
    for c in range(3):
        Pc = projective_window(model_tgb, c, -2, 10)
        t1 = cohproj_hom(Pc, direct).table
        t2 = cohproj_hom(Pc, rt).table
        assert t1 == t2, c


def test_min_generator_profile_truncation(model_tgb):
    # Prop-style check: truncations of P_a over the model need no new
    # generators below the truncation index
    P2 = projective_window(model_tgb, 2, -4, 8)
    t = truncate_below(P2, 0)
    profile = window_min_generator_profile(t)
    assert profile[0] == t.dim(0)
    assert all(profile[i] == 0 for i in range(-3, 0))


def test_module_fold_audit(model_tgb, tgb_fast):
    assert projective_window(model_tgb, 2, -2, 6).audit()["ok"]
    assert projective_window(tgb_fast("example2"), 1, -3, 4).audit()["ok"]
