import pytest

from xmodlab.catalogue import catalogue, catalogue_sequences, normal_subs
from xmodlab.errors import ConditionFails
from xmodlab.flatness import (AdmissibilitySquare, admissibility_check,
                              admissibility_scan, apply_to_ses,
                              birkhoff_check, commutation_check,
                              conditional_flatness_scan, counterexample_demo,
                              default_counterexample_phi,
                              fgab_admissibility_square, fiberwise_condition,
                              fiberwise_localize, isokernel_check,
                              nullification_ladder, pullback_ses)
from xmodlab.groups import cyclic, make_hom, symmetric
from xmodlab.localize import (AbLocalizer, ILocalizer, LfLocalizer,
                              NullificationLocalizer, PxzLocalizer)
from xmodlab.xmod import (enumerate_xmod_morphisms, functor_R, functor_X,
                          make_sub, r_morphism, ses_from_normal_sub,
                          x_morphism)


def _rs3_sequence():
    rs3 = catalogue()["RS3"]
    sub = next(s for s in normal_subs(rs3) if len(s.members2) == 3)
    return ses_from_normal_sub(rs3, sub)


def test_i_flat():
    seq = _rs3_sequence()
    assert apply_to_ses(ILocalizer(), seq).flat


def test_ab_not_flat_on_rs3_sequence():
    seq = _rs3_sequence()
    report = apply_to_ses(AbLocalizer(), seq)
    assert not report.flat
    assert "NOT FLAT" in report.describe()
    assert report.failure is not None


def test_pullback_ses_shares_kernel():
    seq = _rs3_sequence()
    c2 = cyclic(2)
    rc2 = functor_R(c2)
    g = r_morphism(rc2, seq.quotient, make_hom(c2, seq.quotient.top, [0, 1]))
    pulled = pullback_ses(seq, g)
    assert pulled.sequence.kernel is seq.kernel
    assert pulled.sequence.quotient is rc2


def test_fiberwise_roundtrip():
    seq = _rs3_sequence()
    loc = AbLocalizer()
    ok, witness = fiberwise_condition(loc, seq)
    assert ok and witness is None
    result = fiberwise_localize(loc, seq)
    assert result.comparison_is_equivalence
    # the replaced kernel is the localized kernel
    assert loc.is_local(result.sequence.kernel)


def test_commutation_check():
    # an Ab-flat sequence: C2 inside C4, trivial bottoms
    xc4 = catalogue()["XC4"]
    sub = make_sub(xc4, [0], [0, 2])
    seq = ses_from_normal_sub(xc4, sub)
    assert apply_to_ses(AbLocalizer(), seq).flat
    c2 = cyclic(2)
    xc2 = functor_X(c2)
    g = x_morphism(xc2, seq.quotient, make_hom(c2, seq.quotient.top, [0, 1]))
    assert commutation_check(AbLocalizer(), seq, g)


def test_admissibility_square_and_ladder():
    cat = catalogue()
    pa = NullificationLocalizer(cat["XC2"], name="nullify:XC2")
    q_src = cat["XC4"]
    lq = pa.localize(q_src)
    t_src = cat["XC6"]
    lt = pa.localize(t_src)
    epis = [m for m in enumerate_xmod_morphisms(lt.local, lq.local)
            if m.is_regular_epi]
    assert epis
    h = epis[0]
    square = AdmissibilitySquare(pa, h, q_src, lq.coaugmentation)
    report = admissibility_check(square)
    assert report.admissible and report.row_flat
    assert isokernel_check(cat["XC2"], h, q_src, lq.coaugmentation)
    ladder = nullification_ladder(pa, h, q_src, lq.coaugmentation)
    assert ladder.final_iso.is_iso


def test_admissibility_scan_pxz_passes():
    small = {k: v for k, v in catalogue().items() if max(v.sizes) <= 8}
    report = admissibility_scan(PxzLocalizer(), small, seed=7)
    assert report.verdict and report.passed > 0


def test_conditional_flatness_scan_lf_fails():
    c2, c4 = cyclic(2), cyclic(4)
    xc2, xc4 = functor_X(c2), functor_X(c4)
    phi = x_morphism(xc4, xc2, make_hom(c4, c2, [0, 1, 0, 1]))
    loc = LfLocalizer(phi, name="lf:phi", ab_phi=default_counterexample_phi())
    seqs = catalogue_sequences(max_count=6)
    small = {k: v for k, v in catalogue().items() if max(v.sizes) <= 6}
    report = conditional_flatness_scan(loc, seqs, small, seed=1)
    assert not report.verdict  # the appended infinite-coefficient case fails
    assert any("infinite-coefficient" in str(w) for w in report.witnesses)


def test_birkhoff_for_bottom_only_nullification():
    small = {k: v for k, v in catalogue().items() if max(v.sizes) <= 8}
    ok, witness = birkhoff_check(PxzLocalizer(), small)
    assert ok, witness


def test_counterexample_demo():
    report = counterexample_demo()
    assert not report.flat
    assert report.kernel_index == 2
    assert report.middle.describe() == "Z + Z/2"
    assert [g.describe() for g in report.localized_triple] == \
        ["Z", "Z + Z/2", "Z/2"]


def test_fgab_admissibility_square():
    res = fgab_admissibility_square()
    assert not res["admissible"]
