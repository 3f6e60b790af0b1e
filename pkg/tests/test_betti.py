from math import comb

import pytest

from linea.arrangements import defining_ideal, named, random_generic
from linea.betti import (BettiTable, TruncatedTableError, graded_betti, mantero_inequality_check,
                         pdim_of, reg_of, residue_field_resolution)
from linea.exactnum import one_minus_t_power, poly_mul
from linea.hilbert import hilbert_gb
from linea.ideals import Ideal

TWISTED_CUBIC = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


def test_polynomial_ring():
    table = graded_betti(Ideal.zero(4), jmax=6)
    assert table.nonzero() == {(0, 0): 1}
    assert pdim_of(table) == 0 and reg_of(table) == 0


def test_complete_intersection_of_variables():
    table = graded_betti(Ideal.parse(["x0", "x1"], 3), jmax=5)
    assert table.nonzero() == {(0, 0): 1, (1, 1): 2, (2, 2): 1}


def test_twisted_cubic():
    table = graded_betti(Ideal.parse(TWISTED_CUBIC, 3), jmax=6)
    assert table.nonzero() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert pdim_of(table) == 2 and reg_of(table) == 1


def test_modular_and_exact_paths_agree():
    J = defining_ideal(named("three_p4"))
    fast = graded_betti(J, jmax=8)
    slow = graded_betti(J, jmax=8, exact=True)
    assert fast.path == "modular" and slow.path == "exact"
    assert fast.nonzero() == slow.nonzero()
    assert fast.nonzero() == {(0, 0): 1, (1, 2): 6, (1, 3): 1, (2, 3): 8, (2, 4): 3,
                              (3, 4): 3, (3, 5): 3, (4, 6): 1}


def test_alternating_sum_is_hilbert_numerator():
    J = defining_ideal(random_generic(4, 4, 1))
    table = graded_betti(J, jmax=8)
    alt = [0] * 9
    for (i, j), v in table.nonzero().items():
        alt[j] += (-1) ** i * v
    values = [hilbert_gb(J, d) for d in range(9)]
    assert poly_mul(values, one_minus_t_power(5))[:9] == alt


def test_truncation_is_flagged():
    J = Ideal.parse(TWISTED_CUBIC, 3)
    table = graded_betti(J, jmax=2)
    assert table.truncated
    with pytest.raises(TruncatedTableError):
        reg_of(table)


def test_render_and_json():
    table = graded_betti(Ideal.parse(TWISTED_CUBIC, 3), jmax=6)
    assert table.render().splitlines() == [
        "       0 1 2",
        "total: 1 3 2",
        "    0: 1 . .",
        "    1: . 3 2",
    ]
    back = BettiTable.from_json(table.to_json())
    assert back.nonzero() == table.nonzero()


def test_mantero_inequality():
    ok = BettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 2, (2, 4): 3}, 3, 6)
    assert mantero_inequality_check(ok, 3)
    bad = BettiTable({(0, 0): 1, (1, 2): 3, (2, 4): 4}, 3, 6)
    assert not mantero_inequality_check(bad, 3)
    assert mantero_inequality_check(BettiTable({(0, 0): 1}, 3, 5), 0)


def test_residue_field_over_polynomial_ring():
    res = residue_field_resolution(Ideal.zero(3), steps=3, cutoff=5)
    assert {k: v for k, v in res.betti.items() if v} == {(i, i): comb(3, i) for i in range(4)}


def test_residue_field_over_truncated_rings():
    # k[x]/(x^2) is Koszul; k[x]/(x^3) has syzygies in degrees 0, 1, 3, 4, 6
    koszul = residue_field_resolution(Ideal.parse(["x0^2"], 0), steps=4, cutoff=6)
    assert not koszul.nonlinear()
    assert all(koszul[(i, i)] == 1 for i in range(5))
    cube = residue_field_resolution(Ideal.parse(["x0^3"], 0), steps=4, cutoff=7)
    assert {k: v for k, v in cube.betti.items() if v} == {(0, 0): 1, (1, 1): 1, (2, 3): 1,
                                                         (3, 4): 1, (4, 6): 1}


def test_residue_field_exact_and_modular():
    J = defining_ideal(named("three_p4"))
    a = residue_field_resolution(J, steps=2, cutoff=3)
    b = residue_field_resolution(J, steps=2, cutoff=3, exact=True)
    assert a.betti == b.betti
    assert a[(2, 3)] >= 1
