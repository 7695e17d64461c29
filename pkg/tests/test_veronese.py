import pytest

from cohprobe.errors import NotDegreeOneGenerated
from cohprobe.freealg import GeneratorTable, parse_poly
from cohprobe.gbasis import AlgebraPresentation, complete_to_degree
from cohprobe.linalg import QQ
from cohprobe.veronese import (
    decomposition_audit,
    degree_one_generated,
    pm_module_presentations,
    veronese_cross_check,
    veronese_presentation,
)


def test_free2_veronese_relation_free(corpus_fast, tgb_fast):
    pres = corpus_fast["free2"].presentation
    vp = veronese_presentation(pres, tgb_fast("free2"), 2, 10, require_degree_one=True)
    assert len(vp.generator_words) == 4
    assert all(c == 0 for c in vp.relations_per_degree.values())
    assert vp.hilbert_internal == [4 ** i for i in range(6)]
    assert vp.hilbert_internal == vp.hilbert_ambient


def test_commutative_veronese(corpus_fast, tgb_fast):
    pres = corpus_fast["commutative_model"].presentation
    vp = veronese_presentation(pres, tgb_fast("commutative_model"), 2, 10)
    assert len(vp.generator_words) == 3
    # four independent quadratic relations: three commutators and the
    # determinantal one (hilbert forces 9 - 5 = 4, not 1)
    assert vp.relations_per_degree == {1: 0, 2: 4, 3: 0, 4: 0, 5: 0}
    assert vp.hilbert_internal == [1, 3, 5, 7, 9, 11]
    assert vp.hilbert_internal == vp.hilbert_ambient


def test_remark_veronese_monomial_finite(corpus_fast, tgb_fast):
    pres = corpus_fast["remark"].presentation
    vp = veronese_presentation(pres, tgb_fast("remark"), 2, 10)
    assert vp.all_relations_monomial()
    assert vp.last_relation_degree() == 2
    assert vp.trailing_silence() >= 3
    assert vp.hilbert_internal == vp.hilbert_ambient == [1, 4, 5, 5, 5, 5]


def test_pm_modules_free2(corpus_fast, tgb_fast):
    reports = pm_module_presentations(corpus_fast["free2"].presentation, tgb_fast("free2"), 2, 10)
    assert [r.m for r in reports] == [0, 1]
    for r in reports:
        assert all(c == 0 for c in r.syzygy_profile)
        assert all(d == 0 for d in r.generator_degrees)


def test_pm_modules_commutative(corpus_fast, tgb_fast):
    reports = pm_module_presentations(
        corpus_fast["commutative_model"].presentation, tgb_fast("commutative_model"), 2, 10
    )
    p1 = reports[1]
    assert p1.syzygy_profile[1] > 0  # finitely many syzygies...
    assert all(c == 0 for c in p1.syzygy_profile[2:])  # ...then silence
    assert p1.trailing_silence() >= 3


def test_decomposition_audit(tgb_fast):
    assert decomposition_audit(tgb_fast("commutative_model"), 2, 10)
    assert decomposition_audit(tgb_fast("example2"), 3, 9)


def test_degree_one_generation_detector():
    gt = GeneratorTable(["x", "z"], weights=[1, 2])
    pres = AlgebraPresentation(
        QQ, gt, [parse_poly(gt, QQ, "x*z - z*x")], label="weighted"
    )
    tgb = complete_to_degree(pres, 8)
    assert not degree_one_generated(tgb)
    with pytest.raises(NotDegreeOneGenerated):
        veronese_presentation(pres, tgb, 2, 8, require_degree_one=True)


def test_veronese_of_veronese_hilbert(corpus_fast):
    pres = corpus_fast["commutative_model"].presentation
    tgb12 = complete_to_degree(pres, 12)
    vp2 = veronese_presentation(pres, tgb12, 2, 12)
    inner_tgb = complete_to_degree(vp2.presentation, 3)
    vp22 = veronese_presentation(vp2.presentation, inner_tgb, 2, 3)
    vp4 = veronese_presentation(pres, tgb12, 4, 12)
    shared = min(len(vp22.hilbert_internal), len(vp4.hilbert_internal))
    assert vp22.hilbert_internal[:shared] == vp4.hilbert_internal[:shared]


def test_cross_checks(corpus_fast):
    cc_free, _ = veronese_cross_check(corpus_fast["free2"].presentation, 2, 10)
    assert cc_free.agree
    assert cc_free.ambient_verdict.kind == "STABLE"
    cc_remark, vp = veronese_cross_check(corpus_fast["remark"].presentation, 2, 10)
    assert not cc_remark.agree
    assert cc_remark.ambient_verdict.kind == "GROWING"
    assert cc_remark.veronese_verdict.kind == "STABLE"
    assert vp.all_relations_monomial()


def test_cross_check_example1_both_growing(corpus_fast):
    cc, _ = veronese_cross_check(corpus_fast["example1"].presentation, 2, 10)
    assert cc.agree
    assert cc.ambient_verdict.kind == "GROWING"
    assert cc.veronese_verdict.kind == "GROWING"


def test_hilbert_mismatch_hard_failure():
    # not generated in degree <= n slices: the honest hard failure fires
    from cohprobe.errors import HilbertMismatch

    gt = GeneratorTable(["x", "z"], weights=[1, 3])
    pres = AlgebraPresentation(QQ, gt, [], label="weighted_free")
    tgb = complete_to_degree(pres, 8)
    with pytest.raises(HilbertMismatch):
        veronese_presentation(pres, tgb, 2, 8)
