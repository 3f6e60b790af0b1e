import json

import mpmath
import pytest

from linea.arrangements import defining_ideal, named
from linea.exactnum import RationalFunction1
from linea.hilbert import regularity_alpha
from linea.ideals import Ideal
from linea.koszul import (KOSZUL, NOT_KOSZUL, UNKNOWN, Classification, Filtration,
                          MalformedFiltration, Step, classify,
                          construct_filtration_thm43, discriminant, five_p6_case,
                          five_p6_filtration, froberg_probe, hilbert_claims_check,
                          linear_colon_forms, monomial_filtration, rejection_harness,
                          rules_conflict, specializations, threshold_exceeded,
                          verify_filtration)
from linea.multipoly import Polynomial


def test_threshold_examples():
    assert threshold_exceeded(5, 5)
    assert threshold_exceeded(6, 6)
    assert not threshold_exceeded(4, 5)


def test_threshold_against_floats_small_grid():
    mpmath.mp.prec = 200
    for n in range(2, 20):
        bound = (3 * (n * n + 10 * n + 13) + mpmath.sqrt(3 * (n - 1) ** 3 * (3 * n + 5))) / 72
        for m in range(1, 60):
            assert threshold_exceeded(m, n) == (m > bound)


def test_discriminant_examples():
    assert discriminant(5, 5) == -560
    assert discriminant(1, 5) == -688
    for m in range(1, 10):
        assert discriminant(m, 1) == -108 * m * (m - 1) ** 2


def test_discriminant_negative_past_threshold():
    for n in range(3, 30):
        for m in range(1, 120):
            if threshold_exceeded(m, n) and regularity_alpha(m, n) == 2:
                assert discriminant(m, n) < 0


def test_froberg_probe():
    assert froberg_probe(1, 5, 40) is None
    assert froberg_probe(2, 3, 20) is None
    assert froberg_probe(6, 6, 20) == 12


@pytest.mark.parametrize("m,n,verdict,reason", [
    (3, 4, NOT_KOSZUL, "Prop 5.3"),
    (5, 6, KOSZUL, "Prop 4.4"),
    (7, 8, UNKNOWN, None),
    (2, 2, KOSZUL, "hypersurface"),
    (3, 2, NOT_KOSZUL, "hypersurface"),
    (1, 7, KOSZUL, "linear ideal"),
    (3, 5, KOSZUL, "Prop 4.1"),
    (4, 5, KOSZUL, "Thm 4.3"),
    (5, 5, NOT_KOSZUL, "Thm 5.2"),
    (9, 3, NOT_KOSZUL, "Thm 5.2"),
])
def test_classify_examples(m, n, verdict, reason):
    assert classify(m, n) == Classification(verdict, reason)


def test_rules_never_conflict():
    for m in range(1, 13):
        for n in range(2, 13):
            assert not rules_conflict(m, n), (m, n)
            assert classify(m, n) == classify(m, n)


def test_classification_invariants():
    with pytest.raises(ValueError):
        Classification(UNKNOWN, "Thm 4.3")
    with pytest.raises(ValueError):
        Classification(KOSZUL)


def test_koszul_verdicts_pass_froberg():
    for m in range(1, 13):
        for n in range(3, 7):
            if classify(m, n).verdict == KOSZUL:
                assert froberg_probe(m, n, 20) is None, (m, n)


def _chain(nv):
    x = [Polynomial.var(i, nv) for i in range(nv)]
    ideals = {"0": []}
    steps = []
    for k in range(1, nv + 1):
        key = f"c{k}"
        ideals[key] = x[:k]
        steps.append(Step(key, "0" if k == 1 else f"c{k - 1}", x[k - 1], "0" if k == 1 else f"c{k - 1}"))
    return Filtration(nv, ideals, steps)


def test_regular_sequence_chain():
    report = verify_filtration(Ideal.zero(4), _chain(4))
    assert report.accepted
    assert report.members == 5 and report.maximal_id == "c4"


def test_wrong_colon_is_reported():
    F = _chain(4)
    F.steps[2] = Step("c3", "c2", F.steps[2].gen, "c1")
    report = verify_filtration(Ideal.zero(4), F)
    assert not report.accepted
    assert report.failures() == [{"ideal": "c3", "sub": "c2", "colon": "c1",
                                  "check": "sub : ideal != colon"}]


def test_malformed_filtrations():
    J = Ideal.zero(3)
    F = _chain(3)
    F.steps = F.steps[:-1]
    with pytest.raises(MalformedFiltration, match="without a step"):
        verify_filtration(J, F)
    F = _chain(3)
    F.ideals["c2"] = [Polynomial.var(0, 3) * Polynomial.var(1, 3)]
    with pytest.raises(MalformedFiltration, match="not linear"):
        verify_filtration(J, F)
    F = _chain(3)
    F.steps[0] = Step("c1", "nowhere", F.steps[0].gen, "0")
    with pytest.raises(MalformedFiltration, match="missing member"):
        verify_filtration(J, F)
    F = _chain(3)
    del F.ideals["c3"]
    F.steps = F.steps[:-1]
    with pytest.raises(MalformedFiltration, match="maximal"):
        verify_filtration(J, F)


def test_filtration_json_roundtrip():
    F = five_p6_filtration()
    back = Filtration.from_json(json.loads(json.dumps(F.to_json())))
    assert back.to_json() == F.to_json()
    with pytest.raises(MalformedFiltration):
        Filtration.from_json({"n": 3, "ideals": [{"id": "a"}], "steps": []})


def test_five_p6_template():
    F = five_p6_filtration("2", "3")
    assert len(F) == 57 and len(F.steps) == 56
    g = F.ideals["F17"][3]
    assert g.coefficient_vector() == [0, 0, 0, 1, 3, 1, 3]
    pairs = specializations(4)
    assert len(set(pairs)) == 4


def test_five_p6_worked_colon():
    J, F = five_p6_case()
    x = [Polynomial.var(i, 7) for i in range(7)]
    lift = Ideal(list(J.generators) + [x[0]], 7)
    from linea.ideals import colon
    from linea.hilbert import hilbert_series
    C = colon(lift, x[1])
    assert C == Ideal(list(J.generators) + [x[0], x[3], x[4], x[6]], 7)
    assert C == colon(lift, x[1], "elimination")
    assert hilbert_series(C) == RationalFunction1([1, 1, -1], 2)


def test_five_p6_accepted_by_both_colon_routes():
    J, F = five_p6_case(-3, "5/7")
    assert verify_filtration(J, F).accepted
    report = verify_filtration(J, F, colon_method="elimination")
    assert report.accepted and report.distinct == 56


def test_monomial_filtration():
    J, F = construct_filtration_thm43(3, 6, 0)
    assert F.meta["kind"] == "monomial"
    assert verify_filtration(J, F).accepted


def test_monomial_filtration_needs_monomials():
    with pytest.raises(ValueError):
        monomial_filtration(Ideal.parse(["x0*x1 + x2^2"], 3))


def test_linear_colon_forms_match_colon():
    from linea.koszul import two_block
    from linea.ideals import colon
    data = two_block(4, 5, 0)
    x = [Polynomial.var(i, 6) for i in range(6)]
    forms = linear_colon_forms(data.J, [x[0]], x[1])
    C = colon(Ideal(list(data.J.generators) + [x[0]], 6), x[1])
    assert len(forms) == len([g for g in C.gb().elements if g.is_linear_form()])
    assert all(C.contains(f) for f in forms)


def test_two_block_construction_small():
    J, F = construct_filtration_thm43(4, 5, 0)
    report = verify_filtration(J, F)
    assert report.accepted
    assert F.meta["blocks"] == [2, 2]
    for s in F.steps:
        assert s.colon in F.ideals


def test_construction_rejects_outside_range():
    with pytest.raises(ValueError):
        construct_filtration_thm43(5, 6, 0)
    with pytest.raises(ValueError):
        construct_filtration_thm43(4, 4, 0)


def test_claims_examples():
    report = hilbert_claims_check(4, 5, 0)
    assert report.ok
    by_name = {c.name: c for c in report.claims}
    colon_series = by_name["S/((J+(x0)):(x1))"].computed
    assert colon_series.expand(4) == [1, 2, 2, 2, 2]
    assert by_name["S/(J+(x0,x1,l0,l1))"].computed == RationalFunction1([1, 2])


def test_claims_degenerate_block():
    report = hilbert_claims_check(2, 3, 0)
    assert report.ok
    by_name = {c.name: c for c in report.claims}
    assert by_name["S/(I+(x0,x1))"].computed == RationalFunction1([1])


def test_three_lines_reject_candidates():
    J = defining_ideal(named("three_p4"))
    reports = rejection_harness(J, count=4, seed=1)
    assert len(reports) == 4
    assert not any(r.accepted for r in reports)
