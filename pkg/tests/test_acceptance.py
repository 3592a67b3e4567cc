"""Acceptance suite: eleven end-to-end checks, one reported line each.

Each test exercises a full pipeline (construction, localization, scanning)
at desk scale, asserts the expected verdicts and runtime bounds, and prints
a single pass/fail line.
"""
import sys
import time
from dataclasses import replace

import pytest

from xmodlab.catalogue import catalogue, catalogue_sequences
from xmodlab.cli import main as cli_main
from xmodlab.config import DEFAULT_LIMITS
from xmodlab.errors import CM1Violation, CM2Violation, ValidationError
from xmodlab.fgab import (ab_cyclic, ab_pullback, enumerate_ab_homs,
                          lf_ab_localize, make_ab_hom)
from xmodlab.flatness import (admissibility_scan, apply_to_ses, birkhoff_check,
                              commutation_check, conditional_flatness_scan,
                              counterexample_demo, default_counterexample_phi,
                              fiberwise_condition, isokernel_check,
                              nullification_ladder)
from xmodlab.groups import (count_homs_bruteforce, cyclic, dihedral,
                            enumerate_homs, make_action, make_hom,
                            pullback_grp, symmetric)
from xmodlab.localize import (AbLocalizer, ILocalizer, LfLocalizer,
                              NullificationLocalizer, PxzLocalizer,
                              induced_on_quotients)
from xmodlab.xmod import (enumerate_xmod_morphisms, functor_X,
                          identity_xmorphism, make_xmod,
                          xnormal_closure, xnormal_closure_bruteforce,
                          x_morphism)

TIGHT = replace(DEFAULT_LIMITS, scan_cap=30, scan_order_cap=8)

REPORT_LINES: list[str] = []


def _report(number: int, name: str, ok: bool, detail: str):
    line = f"[acceptance {number:02d}] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    REPORT_LINES.append(line)
    print(line, file=sys.stderr)
    assert ok, line


def _small():
    return {k: v for k, v in catalogue().items() if max(v.sizes) <= 8}


def _phi_morphism():
    c2, c4 = cyclic(2), cyclic(4)
    return x_morphism(functor_X(c4), functor_X(c2),
                      make_hom(c4, c2, [0, 1, 0, 1]))


def test_01_axiom_engine():
    t0 = time.perf_counter()
    cat = catalogue()
    assert len(cat) >= 30
    for t in cat.values():
        rebuilt = make_xmod(t.bottom, t.top, t.boundary, t.action)
        assert rebuilt.sizes == t.sizes
    # corrupted action: swap two entries of a valid action table
    base = cat["C4<D4"]
    broken = base.action.act.copy()
    broken[[1, 4], :] = broken[[4, 1], :]
    with pytest.raises((CM1Violation, CM2Violation, ValidationError)) as err:
        make_xmod(base.bottom, base.top, base.boundary,
                  make_action(base.top, base.bottom, broken, check=False))
    witness = str(err.value)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report(1, "axiom engine", True,
            f"{len(cat)} objects validated, corruption rejected with "
            f"'{witness[:40]}...', {elapsed:.1f}s")


def test_02_closed_formula_vs_nullification():
    t0 = time.perf_counter()
    cat = catalogue()
    pxz = PxzLocalizer()
    by_exponent = {}
    for name, t in cat.items():
        m = t.top.exponent
        pa = by_exponent.setdefault(
            m, NullificationLocalizer(functor_X(cyclic(m))))
        closed = pxz.localize(t)
        generic = pa.localize(t)
        comparison = induced_on_quotients(closed.coaugmentation,
                                          generic.coaugmentation,
                                          identity_xmorphism(t))
        assert comparison.is_iso, name
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(2, "closed formula vs generic nullification", True,
            f"{len(cat)} objects, comparison isomorphism each, {elapsed:.1f}s")


def test_03_abelianization():
    from xmodlab.groups import (are_isomorphic_grp, normal_closure_grp,
                                quotient_grp)
    from xmodlab.xmod import action_commutators, are_isomorphic_xmod
    cat = catalogue()
    loc = AbLocalizer()
    res = loc.localize(cat["XS3"])
    assert are_isomorphic_xmod(res.local, cat["XC2"])
    checked = 0
    for name, t in cat.items():
        local = loc.localize(t).local
        # levelwise brute force: quotient the bottom by all action
        # commutators and the top by its commutator subgroup
        n1 = normal_closure_grp(t.bottom,
                                action_commutators(t, t.top.elements()))
        b_quot, _ = quotient_grp(t.bottom, n1)
        comms = {t.top.mul(t.top.mul(a, b),
                           t.top.mul(t.top.inv(a), t.top.inv(b)))
                 for a in t.top.elements() for b in t.top.elements()}
        n2 = normal_closure_grp(t.top, comms)
        t_quot, _ = quotient_grp(t.top, n2)
        assert are_isomorphic_grp(local.bottom, b_quot), name
        assert are_isomorphic_grp(local.top, t_quot), name
        checked += 1
    _report(3, "abelianization vs levelwise brute force", True,
            f"X S3 lands on X C2; {checked} objects agree levelwise")


def test_04_counterexample(capsys):
    t0 = time.perf_counter()
    exit_code = cli_main(["counterexample"])
    out = capsys.readouterr().out
    report = counterexample_demo()
    elapsed = time.perf_counter() - t0
    assert exit_code == 1
    assert report.middle.describe() == "Z + Z/2"
    assert [g.describe() for g in report.localized_triple] == \
        ["Z", "Z + Z/2", "Z/2"]
    assert report.kernel_index == 2
    assert not report.flat and "NOT FLAT" in out
    assert elapsed < 1.0
    _report(4, "non-flat pullback counterexample", True,
            f"middle Z + Z/2, triple (Z, Z + Z/2, Z/2), index 2, "
            f"exit 1, {elapsed:.2f}s")


def _generate_squares(a_names, per_pair=2):
    cat = catalogue()
    small = _small()
    squares = []
    for a_name in a_names:
        pa = NullificationLocalizer(cat[a_name], name=f"nullify:{a_name}")
        for t in small.values():
            for q in small.values():
                lt, lq = pa.localize(t), pa.localize(q)
                epis = [m for m in
                        enumerate_xmod_morphisms(lt.local, lq.local)
                        if m.is_regular_epi]
                for h in epis[:per_pair]:
                    squares.append((a_name, pa, h, q, lq.coaugmentation))
    return squares


def test_05_isokernel():
    cat = catalogue()
    squares = _generate_squares(["XC2", "XC3", "XC4", "XC6", "XK4", "XS3"])
    sample = squares[:300]
    assert len(sample) >= 50
    failures = [s[0] for s in sample
                if not isokernel_check(cat[s[0]], s[2], s[3], s[4])]
    _report(5, "pullback kernels match base kernels", not failures,
            f"{len(sample)} squares checked, {len(failures)} failures")


def test_06_admissibility_of_nullifications():
    cat = catalogue()
    small = _small()
    scan_fails = []
    for a_name, a in cat.items():
        pa = NullificationLocalizer(a, name=f"nullify:{a_name}")
        rep = admissibility_scan(pa, small,
                                 replace(TIGHT, scan_cap=8), seed=11)
        if not rep.verdict:
            scan_fails.append(a_name)
    ladders = 0
    for a_name, pa, h, q, ell in _generate_squares(["XC2", "XC4"])[:60]:
        ladder = nullification_ladder(pa, h, q, ell)
        assert ladder.final_iso.is_iso
        ladders += 1
    _report(6, "nullifications are admissible", not scan_fails,
            f"scans over {len(cat)} annihilators "
            f"({len(scan_fails)} failing), {ladders} quotient towers "
            f"with every stage assertion holding")


def test_07_scan_verdict_agreement():
    cat = catalogue()
    small = _small()
    seqs = catalogue_sequences()
    locs = {
        "ab": AbLocalizer(),
        "pxz": PxzLocalizer(),
        "nullify:XC2": NullificationLocalizer(cat["XC2"], name="nullify:XC2"),
        "lf:phi": LfLocalizer(_phi_morphism(), name="lf:phi",
                              ab_phi=default_counterexample_phi()),
    }
    expected = {"ab": True, "pxz": True, "nullify:XC2": True, "lf:phi": False}
    assert not ILocalizer().regular_epi  # excluded from the comparison
    verdicts = {}
    for name, loc in locs.items():
        adm = admissibility_scan(loc, small, TIGHT, seed=5).verdict
        cf = conditional_flatness_scan(loc, seqs, small, TIGHT, seed=5).verdict
        assert adm == cf, f"{name}: scans disagree ({adm} vs {cf})"
        verdicts[name] = adm
    _report(7, "admissibility and conditional flatness agree",
            verdicts == expected,
            ", ".join(f"{k}={'pass' if v else 'fail'}"
                      for k, v in sorted(verdicts.items())))


def test_08_certified_sequences_i_flat():
    seqs = catalogue_sequences()
    assert len(seqs) >= 100
    loc = ILocalizer()
    flat = sum(1 for s in seqs if apply_to_ses(loc, s).flat)
    _report(8, "certified exact sequences stay exact under I",
            flat == len(seqs), f"{flat}/{len(seqs)} flat")


def test_09_fiberwise_suite():
    small = _small()
    loc = AbLocalizer()
    flat_seqs = [s for s in catalogue_sequences()
                 if max(s.total.sizes) <= 12 and apply_to_ses(loc, s).flat]
    cond_bad = [s for s in flat_seqs if not fiberwise_condition(loc, s)[0]]
    samples, comm_ok = 0, True
    for s in flat_seqs:
        for gsrc in small.values():
            if samples >= 35:
                break
            for g in enumerate_xmod_morphisms(gsrc, s.quotient)[:1]:
                comm_ok = comm_ok and commutation_check(loc, s, g)
                samples += 1
        if samples >= 35:
            break
    ok = not cond_bad and comm_ok and samples >= 30
    _report(9, "fiberwise condition and commutation", ok,
            f"{len(flat_seqs)} flat sequences, condition holds on all, "
            f"{samples} commutation samples")


def test_10_oracle_equivalences():
    # normal closure: fixpoint vs intersection of normals
    cat = catalogue()
    closure_cases = 0
    for t in cat.values():
        if max(t.sizes) > 16:
            continue
        seed1 = {1} if t.bottom.order > 1 else set()
        seed2 = {1} if t.top.order > 1 else set()
        assert xnormal_closure(t, seed1, seed2) == \
            xnormal_closure_bruteforce(t, seed1, seed2)
        closure_cases += 1
    # hom enumeration vs exhaustive search
    hom_cases = 0
    pairs = [(cyclic(4), cyclic(2)), (symmetric(3), cyclic(2)),
             (cyclic(6), symmetric(3)), (dihedral(4), cyclic(4)),
             (cyclic(2), dihedral(4))]
    for src, dst in pairs:
        assert src.order * dst.order <= 64
        assert {h.mapping for h in enumerate_homs(src, dst)} == \
            set(count_homs_bruteforce(src, dst))
        hom_cases += 1
    # abelian backend vs Cayley-table backend on overlapping inputs
    c4ab, c2ab = ab_cyclic(4), ab_cyclic(2)
    phi_ab = make_ab_hom(c4ab, c2ab, [[1]])
    assert len(enumerate_ab_homs(c4ab, c2ab)) == \
        len(enumerate_homs(cyclic(4), cyclic(2)))
    f = make_hom(cyclic(4), cyclic(2), [0, 1, 0, 1])
    pb_fin = pullback_grp(f, f)
    pb_ab = ab_pullback(phi_ab, phi_ab)
    order_ab = 1
    for inv in pb_ab.group.invariants:
        order_ab *= inv
    assert pb_ab.group.rank == 0 and order_ab == pb_fin.group.order
    loc_ab, _ = lf_ab_localize(phi_ab, c4ab)
    loc_fin = LfLocalizer(_phi_morphism()).localize(functor_X(cyclic(4)))
    assert loc_ab.invariants == (2,) and loc_fin.local.sizes == (1, 2)
    _report(10, "oracle equivalences", True,
            f"{closure_cases} closure cases, {hom_cases} hom tables, "
            f"abelian and finite backends agree")


def test_11_birkhoff():
    pxz = PxzLocalizer()
    ok, witness = birkhoff_check(pxz, catalogue())
    _report(11, "locals closed under subobjects and quotients", ok,
            "full catalogue" if ok else str(witness))
