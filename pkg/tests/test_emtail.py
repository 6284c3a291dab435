"""Euler-Maclaurin tail enclosures for the slowly convergent series."""

from fractions import Fraction

import pytest

from binomharm import _emtail, registry
from binomharm.ball_arith import Ball

from _frozen import RHS_REFS, Z_REFS, ZL_REFS, assert_contains

PREC = 160

ASYMPTOTIC_IDS = ("EQ1", "EQ2", "EQ3", "EQ34", "EQ35", "EQ36", "THM25B")


def interval(b):
    return b.to_interval_fractions()


# ----------------------------------------------------------------------
# the Euler-Maclaurin zeta-like building blocks


@pytest.mark.parametrize("s,a,ref", Z_REFS)
def test_z_em_matches_reference(s, a, ref):
    ball = _emtail.z_em(Fraction(s), a, PREC)
    assert_contains(ball, ref, what=f"Z({s},{a})")
    assert ball.rad_fraction() < Fraction(1, 10 ** 30)


@pytest.mark.parametrize("s,a,ref", ZL_REFS)
def test_zl_em_matches_reference(s, a, ref):
    ball = _emtail.zl_em(Fraction(s), a, PREC)
    assert_contains(ball, ref, what=f"ZL({s},{a})")
    assert ball.rad_fraction() < Fraction(1, 10 ** 25)


def test_z_em_monotone_in_a():
    lo1, hi1 = interval(_emtail.z_em(Fraction(3, 2), 33, PREC))
    lo2, hi2 = interval(_emtail.z_em(Fraction(3, 2), 64, PREC))
    assert hi2 < lo1  # dropping terms strictly reduces a positive sum


# ----------------------------------------------------------------------
# recipe polynomials


def test_build_poly_is_cached():
    recipe = registry._RECIPES["EQ1"]
    a = _emtail.build_poly(recipe, 120)
    b = _emtail.build_poly(recipe, 120)
    assert a is b


def test_tail_requires_min_index():
    recipe = registry._RECIPES["EQ1"]
    with pytest.raises(ValueError):
        _emtail.tail_enclosure(recipe, 31, PREC)
    _emtail.tail_enclosure(recipe, 32, PREC)  # boundary is allowed


# ----------------------------------------------------------------------
# tails against exact partial-sum movement
#
# For any correct tail, T(32) - T(2048) must enclose the exact finite
# window sum_{n=33}^{2048} t_n; the window is computed by exact
# rational summation of the stream, so no asymptotics are shared
# between the two sides.


@pytest.mark.parametrize("eid", ASYMPTOTIC_IDS)
def test_tail_window_consistency(eid):
    reg = registry.make_registry()
    entry = reg[eid]
    stream, strat = entry.make_stream()
    recipe = strat.recipe
    window = Fraction(0)
    for n, t in stream.iter_exact():
        if n > 2048:
            break
        if n >= 33:
            window += t
    t32 = _emtail.tail_enclosure(recipe, 32, PREC)
    t2048 = _emtail.tail_enclosure(recipe, 2048, PREC)
    lo, hi = interval(t32 - t2048)
    assert lo <= window <= hi, f"{eid}: window {float(window)} escapes tail"


def test_thm24_composite_tail_window_consistency():
    reg = registry.make_registry()
    stream, strat = reg["THM24"].make_stream()
    s32, _ = stream.partial_sum(32, PREC)
    s2048, _ = stream.partial_sum(2048, PREC)
    window = s2048 - s32
    t32 = strat.tail_ball(stream, 32, PREC, None)
    t2048 = strat.tail_ball(stream, 2048, PREC, None)
    dlo, dhi = interval(window)
    wlo, whi = interval(t32 - t2048)
    assert wlo <= dlo and dhi <= whi


def test_tail_absolute_remainder_eq1():
    # S - S_N must fall inside tail(N), with S the closed form
    reg = registry.make_registry()
    entry = reg["EQ1"]
    stream, strat = entry.make_stream()
    s32 = stream.partial_sum_exact(32)
    remainder = Fraction(RHS_REFS["EQ1"]) - s32
    lo, hi = interval(_emtail.tail_enclosure(strat.recipe, 32, PREC))
    slack = Fraction(1, 10 ** 40)
    assert lo - slack <= remainder <= hi + slack


def test_tail_shrinks_with_n():
    recipe = registry._RECIPES["EQ34"]
    widths = []
    for N in (32, 128, 1024, 4096):
        lo, hi = interval(_emtail.tail_enclosure(recipe, N, PREC))
        widths.append(hi - lo)
        assert hi - lo >= 0
    assert widths == sorted(widths, reverse=True)
    assert widths[-1] < widths[0] / 10 ** 6


def test_scaled_recipe_negates_tail():
    # the tails enclose exactly opposite values, so their sum straddles 0
    t34 = _emtail.tail_enclosure(registry._RECIPES["EQ34"], 64, PREC)
    t35 = _emtail.tail_enclosure(registry._RECIPES["EQ35"], 64, PREC)
    lo, hi = interval(t34 + t35)
    assert lo <= 0 <= hi
    assert t34.is_positive() and t35.is_negative()
