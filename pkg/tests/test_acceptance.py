"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Time limits are wall-clock budgets measured inside each test.
"""

import random
import time
from contextlib import contextmanager

import mpmath

from linea.arrangements import certified_generic, defining_ideal, named, random_generic, staircase
from linea.betti import (graded_betti, mantero_inequality_check, pdim_of, reg_of,
                         residue_field_resolution)
from linea.exactnum import RationalFunction1, first_negative, reciprocal_series, series_divide
from linea.hilbert import (hh_series, hilbert_gb, hilbert_linalg, hilbert_series,
                           regularity_alpha, regularity_bound)
from linea.ideals import Ideal, buchberger, colon, intersect, minimal_generators_up_to
from linea.koszul import (KOSZUL, NOT_KOSZUL, UNKNOWN, classify, construct_filtration_thm43,
                          discriminant, five_p6_case, froberg_probe, hilbert_claims_check,
                          specializations, threshold_exceeded, verify_filtration)
from linea.multipoly import Polynomial

from conftest import random_form, random_linear

EXAMPLE_62 = {(1, 2): 6, (2, 4): 25, (3, 5): 36, (4, 6): 20, (5, 7): 4}
EXAMPLE_63 = {(1, 2): 10, (2, 3): 10, (2, 4): 30, (3, 5): 76, (4, 6): 70, (5, 7): 30, (6, 8): 5}

_tables = {}


@contextmanager
def criterion(number: int, title: str, limit: float, capsys):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed <= limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} ({elapsed:.1f}s, limit {limit:.0f}s)")


def _generic_table(m, n, seed=0):
    key = (m, n, seed)
    if key not in _tables:
        J = defining_ideal(random_generic(m, n, seed))
        nv = n + 1
        _tables[key] = graded_betti(J, nv, nv + regularity_alpha(m, n))
    return _tables[key]


def test_criterion_01_special_versus_generic_four_lines(capsys):
    with criterion(1, "four lines in P^3: special [1,4,9], generic [1,4,10]", 5, capsys):
        special = defining_ideal(named("four_p3_special"))
        generic, _ = certified_generic(4, 3, 0)
        J = defining_ideal(generic)
        assert [hilbert_gb(special, d) for d in range(3)] == [1, 4, 9]
        assert [hilbert_gb(J, d) for d in range(3)] == [1, 4, 10]
        assert [hilbert_linalg(special, d, exact=True) for d in range(3)] == [1, 4, 9]


def test_criterion_02_five_lines_in_p5(capsys):
    with criterion(2, "Betti table of 5 generic lines in P^5", 300, capsys):
        table = _generic_table(5, 5)
        assert table.path == "modular"
        assert {k: v for k, v in table.nonzero().items() if k[0] >= 1} == EXAMPLE_62
        assert pdim_of(table) == 5 and reg_of(table) == 2


def test_criterion_03_six_lines_in_p6(capsys):
    with criterion(3, "Betti table of 6 generic lines in P^6 and the quadric-count inequality",
                   1200, capsys):
        table = _generic_table(6, 6)
        assert {k: v for k, v in table.nonzero().items() if k[0] >= 1} == EXAMPLE_63
        assert mantero_inequality_check(table, table[(1, 2)])
        t62 = _generic_table(5, 5)
        assert not mantero_inequality_check(t62, t62[(1, 2)])


def test_criterion_04_three_lines_in_p4(capsys):
    with criterion(4, "three lines in P^4: cubic generator and non-linear syzygy", 30, capsys):
        J = defining_ideal(named("three_p4"))
        gens = minimal_generators_up_to(J, 4, exact=True)
        assert gens[2] == 6 and gens.get(3, 0) >= 1
        assert [hilbert_gb(J, d) for d in range(4)] == [1, 5, 9, 12]
        assert classify(3, 4).verdict == NOT_KOSZUL
        res = residue_field_resolution(J, steps=2, cutoff=3, exact=True)
        assert res[(2, 3)] >= 1


def test_criterion_05_five_lines_in_p6_filtration(capsys):
    with criterion(5, "57-member filtration for five lines in P^6, 3 specializations", 1800, capsys):
        x = [Polynomial.var(i, 7) for i in range(7)]
        for a, b in specializations(3):
            start = time.perf_counter()
            J, F = five_p6_case(a, b)
            report = verify_filtration(J, F)
            assert report.accepted, report.failures()
            assert report.members == 57 and len(report.steps) == 56
            lift = Ideal(list(J.generators) + [x[0]], 7)
            C = colon(lift, x[1])
            assert C == Ideal(list(J.generators) + [x[0], x[3], x[4], x[6]], 7)
            assert hilbert_series(C) == RationalFunction1([1, 1, -1], 2)
            assert time.perf_counter() - start <= 600


def test_criterion_06_two_block_constructor(capsys):
    with criterion(6, "two-block filtrations and intermediate series", 2400, capsys):
        for m, n in [(4, 5), (3, 5), (6, 7), (5, 7)]:
            start = time.perf_counter()
            J, F = construct_filtration_thm43(m, n, 0)
            report = verify_filtration(J, F)
            assert report.accepted, (m, n, report.failures())
            claims = hilbert_claims_check(m, n, 0)
            assert claims.ok, (m, n, claims.mismatches())
            final = next(c for c in claims.claims if c.name == "S/(J+(x0,x1,l0,l1))")
            assert final.computed == RationalFunction1([1, n - 3])
            assert time.perf_counter() - start <= 600


def test_criterion_07_regularity_and_projective_dimension(capsys):
    with criterion(7, "reg = alpha, pdim = n on 2<=m<=5, 3<=n<=6, 3 seeds", 1800, capsys):
        for m in range(2, 6):
            for n in range(3, 7):
                alpha = regularity_alpha(m, n)
                assert alpha <= min(m, regularity_bound(m, n))
                for seed in range(3):
                    table = _generic_table(m, n, seed)
                    assert not table.truncated
                    assert reg_of(table) == alpha, (m, n, seed)
                    assert pdim_of(table) == n, (m, n, seed)


def test_criterion_08_threshold_criterion(capsys):
    with criterion(8, "exact threshold test versus 200-bit floats", 5, capsys):
        mpmath.mp.prec = 200
        disagreements = 0
        for n in range(2, 51):
            bound = (3 * (n * n + 10 * n + 13) + mpmath.sqrt(3 * (n - 1) ** 3 * (3 * n + 5))) / 72
            for m in range(1, 201):
                if threshold_exceeded(m, n) != (m > bound):
                    disagreements += 1
        assert disagreements == 0
        assert discriminant(5, 5) == -560
        for m, n in [(5, 5), (6, 6), (4, 4), (3, 3)]:
            assert classify(m, n).verdict == NOT_KOSZUL
        assert classify(7, 8).verdict == UNKNOWN


def _hypersurface_reciprocal(m, N):
    # H(t) = (1 - t^m)/(1 - t)^3 for a degree-m form in three variables
    num = [1] + [0] * (m - 1) + [-1]
    num_neg = [c if i % 2 == 0 else -c for i, c in enumerate(num)]
    return series_divide([1, 3, 3, 1], num_neg, N)


def test_criterion_09_froberg_consistency(capsys):
    with criterion(9, "reciprocal series nonnegative for Koszul verdicts; (6,6) turns at 12", 5, capsys):
        checked = 0
        for n in range(2, 7):
            for m in range(1, 60):
                if classify(m, n).verdict != KOSZUL:
                    continue
                checked += 1
                if n == 2:
                    assert first_negative(_hypersurface_reciprocal(m, 20)) is None
                else:
                    assert froberg_probe(m, n, 20) is None, (m, n)
        assert checked > 10
        index = froberg_probe(6, 6, 20)
        # independent expansion of (1+t)^2/p(-t) with mpmath
        p = list(hh_series(6, 6).numerator)
        mpmath.mp.dps = 60
        f = lambda t: (1 + t) ** 2 / sum(c * (-t) ** i for i, c in enumerate(p))
        oracle = [int(mpmath.nint(c)) for c in mpmath.taylor(f, 0, 20)]
        assert oracle == reciprocal_series(hh_series(6, 6), 20)
        assert index == first_negative(oracle) == 12


def _corpus():
    x3 = lambda gens: Ideal.parse(gens, 3)
    out = [
        defining_ideal(named("three_p4")),
        defining_ideal(named("four_p3_special")),
        defining_ideal(random_generic(4, 3, 0)),
        defining_ideal(random_generic(3, 4, 1)),
        defining_ideal(random_generic(2, 4, 2)),
        defining_ideal(staircase(2, 3)),
        x3(["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
        x3(["x0^3", "x1^2*x2", "x0*x1*x3"]),
        Ideal.parse(["x0^2 + x1*x2", "x2^3 - x0*x1^2"], 2),
    ]
    rng = random.Random(77)
    for _ in range(4):
        out.append(Ideal([random_form(rng, 4, 2) for _ in range(3)], 4))
    return out


def test_criterion_10_oracle_equivalence(capsys):
    with criterion(10, "Hilbert oracles agree, additivity, basis uniqueness", 600, capsys):
        for I in _corpus():
            for d in range(9):
                assert hilbert_gb(I, d) == hilbert_linalg(I, d), (I, d)
        rng = random.Random(2026)
        for _ in range(50):
            nv = rng.choice([4, 5, 6])
            I = Ideal([random_linear(rng, nv) for _ in range(rng.randint(1, nv - 1))], nv)
            J = Ideal([random_linear(rng, nv) for _ in range(rng.randint(1, nv - 1))], nv)
            # 0 -> S/(I meet J) -> S/I + S/J -> S/(I+J) -> 0
            lhs = hilbert_series(intersect(I, J)) + hilbert_series(I + J)
            assert lhs == hilbert_series(I) + hilbert_series(J)
        for _ in range(100):
            nv = rng.choice([3, 4])
            gens = [random_form(rng, nv, rng.choice([2, 3])) for _ in range(rng.choice([2, 3]))]
            shuffled = gens[:]
            rng.shuffle(shuffled)
            shuffled = [g.scale(rng.choice([1, -2, 3])) for g in shuffled]
            assert buchberger(Ideal(gens, nv)) == buchberger(Ideal(shuffled, nv))
