"""Smoke tests for the python bindings."""

from fractions import Fraction

import cyclocoef as cc


def test_elementary_functions():
    assert cc.moebius(30) == -1
    assert cc.moebius(4) == 0
    assert cc.euler_phi(105) == 48
    assert cc.squarefree_kernel(12) == 6
    assert cc.ramanujan_sum(6, 3) == -2
    assert cc.partition_count(50) == 204226
    assert cc.partition_count(200) == 3972999029388


def test_cyclotomic_and_coefficients():
    assert cc.cyclotomic(6) == [1, -1, 1]
    assert cc.cyclotomic(105)[7] == -2
    assert cc.coeff(105, 7) == -2
    for engine in ("naive", "gt", "partition"):
        assert cc.coeff(105, 7, 1, engine) == -2
    assert cc.coeff_series(6, -1, 4) == [1, 1, 0, -1, -1]
    assert cc.coeff(6, 9, -1) == -1


def test_value_set_and_density():
    vs = cc.value_set(7)
    assert vs["A"] == 2
    assert vs["values"] == [-2, -1, 0, 1, 2]
    assert vs["diff"] == [-2]
    assert vs["symmetric"]

    d = cc.density(7)
    assert d["scaled"][-2] == Fraction(1, 576)
    assert d["scaled"][2] == Fraction(1, 1152)


def test_averages():
    assert cc.average_e(4) == Fraction(1, 3)
    assert cc.average_e(10) == Fraction(31, 160)
    assert cc.average_e(4, "divisor") == Fraction(1, 3)
    tw = cc.twisted_averages(20)
    assert tw["f"] == Fraction(-173, 4032)
    assert tw["g"] == Fraction(101, 480)


def test_kmin_and_construction():
    r = cc.kmin(-2)
    assert r["found"] and r["k"] == 7
    assert cc.coeff(r["witness_n"], 7) == -2

    p1, p2, p3, value = cc.minus_two_construction(20)
    assert value == -2
    assert p3 <= 20 < p1 + p2


def test_tables_match_reference():
    assert cc.verify_tables() == []
    t2 = dict(((row, col), value) for row, col, value in cc.table(2))
    assert t2[("10", "e")] == "31/160"
    assert t2[("16", "e")] == "733/4032"
