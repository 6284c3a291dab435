"""Term streams, tail strategies, and rigorous summation."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binomharm.ball_arith import Ball
from binomharm.exact_core import harmonic
from binomharm.series_engine import (AlternatingTail, GeometricTail,
                                     HarmonicStream, PrecisionNotReached,
                                     PSeriesTail, PureRatioStream,
                                     SignPattern, TailHypothesisViolation,
                                     d_value, empirical_tail_check,
                                     sum_to_precision)

PREC = 200


def interval(b):
    return b.to_interval_fractions()


def contains(b, v: Fraction) -> bool:
    lo, hi = interval(b)
    return lo <= v <= hi


def geometric_stream(q: Fraction) -> PureRatioStream:
    sign = SignPattern.POSITIVE if q > 0 else SignPattern.ALTERNATING
    return PureRatioStream(seed=q, ratio=lambda n: q, sign=sign)


def geometric_tail(q: Fraction) -> GeometricTail:
    aq = abs(q)
    return GeometricTail(step_env=lambda n: aq, sup_env=lambda n: aq)


# ----------------------------------------------------------------------
# harmonic-difference kinds


@given(st.sampled_from(["H", "HD", "HDM", "H2N", "HD_HALF"]),
       st.integers(min_value=1, max_value=200))
def test_d_value_definitions(kind, n):
    expected = {
        "H": harmonic(n),
        "HD": harmonic(2 * n) - harmonic(n),
        "HDM": harmonic(2 * n - 1) - harmonic(n),
        "H2N": harmonic(2 * n),
        "HD_HALF": harmonic(2 * n) - harmonic(n) / 2,
    }[kind]
    assert d_value(kind, n) == expected


# ----------------------------------------------------------------------
# streams: exact, ball, and fixed-point routes agree


def test_pure_ratio_exact_partials():
    s = geometric_stream(Fraction(1, 2))
    assert s.partial_sum_exact(5) == Fraction(31, 32)
    assert s.term(3) == Fraction(1, 8)


@given(st.integers(min_value=1, max_value=120))
def test_fixed_route_contains_exact_sum(N):
    s = HarmonicStream(seed=Fraction(1, 6),
                       uratio=lambda n: Fraction((2 * n + 1) ** 2,
                                                 (2 * n + 2) * (2 * n + 3)),
                       kind="HD")
    exact = s.partial_sum_exact(N)
    total_fixed, last_fixed = s.partial_sum_fixed(N, 150)
    total_ball, last_ball = s.partial_sum_ball(N, 150)
    assert contains(total_fixed, exact)
    assert contains(total_ball, exact)
    assert total_fixed.overlaps(total_ball)
    assert last_fixed.overlaps(last_ball)


def test_partial_sum_auto_mode_switch():
    s = geometric_stream(Fraction(1, 3))
    # auto mode must agree with both explicit routes around the cutoff
    for N in (64, 65, 200):
        exact = s.partial_sum_exact(N)
        total, _ = s.partial_sum(N, PREC)
        assert contains(total, exact)


# ----------------------------------------------------------------------
# tail strategies


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(9, 10),
                    max_denominator=100),
       st.integers(min_value=1, max_value=60))
def test_geometric_tail_bounds_true_tail(q, N):
    s = geometric_stream(q)
    tail_true = q ** (N + 1) / (1 - q)  # sum_{n>N} q^n
    _, last = s.partial_sum(N, PREC)
    tail = geometric_tail(q).tail_ball(s, N, PREC, last)
    lo, hi = interval(tail)
    assert lo <= tail_true <= hi


@given(st.integers(min_value=2, max_value=5),
       st.integers(min_value=4, max_value=10 ** 6))
def test_pseries_tail_bounds_true_tail(p, N):
    # t_n = 1/n^p; true tail below integral bound C/((p-1) N^(p-1))
    strat = PSeriesTail(C=Fraction(1), p=p)
    tail_true = sum(Fraction(1, n ** p) for n in range(N + 1, N + 50))
    stream = PureRatioStream(seed=Fraction(1),
                             ratio=lambda n: Fraction(n ** p, (n + 1) ** p))
    tail = strat.tail_ball(stream, N, PREC, None)
    lo, hi = interval(tail)
    assert lo <= tail_true <= hi


def test_pseries_plan_terms_is_minimal():
    strat = PSeriesTail(C=Fraction(9, 10), p=2)
    tol = Fraction(1, 10 ** 6)
    n = strat.plan_terms(tol, 10 ** 7)
    assert strat.C / ((strat.p - 1) * Fraction(n)) <= tol
    assert strat.C / ((strat.p - 1) * Fraction(n - 1)) > tol


def test_alternating_tail_bounds_true_tail():
    q = Fraction(-2, 3)
    s = geometric_stream(q)
    for N in (5, 20, 57):
        tail_true = q ** (N + 1) / (1 - q)
        _, last = s.partial_sum(N, PREC)
        tail = AlternatingTail().tail_ball(s, N, PREC, last)
        lo, hi = interval(tail)
        assert lo <= tail_true <= hi


# ----------------------------------------------------------------------
# sum_to_precision


def test_sum_reaches_requested_digits():
    q = Fraction(1, 3)
    res = sum_to_precision(geometric_stream(q), geometric_tail(q), 40)
    limit = q / (1 - q)
    assert contains(res.value, limit)
    assert res.value.rad_fraction() < Fraction(1, 10 ** 40)
    assert res.mode in ("fixed", "ball")
    assert res.n_terms >= 1


def test_sum_alternating_series():
    q = Fraction(-1, 2)
    res = sum_to_precision(geometric_stream(q), AlternatingTail(), 30)
    assert contains(res.value, q / (1 - q))


def test_budget_exhaustion_raises_with_best_effort():
    # 1/n^2 from a planned p-series bound needs ~10^15 terms for 15
    # digits; a 1000-term budget must fail loudly but keep the partial
    stream = PureRatioStream(seed=Fraction(1),
                             ratio=lambda n: Fraction(n * n, (n + 1) ** 2))
    strat = PSeriesTail(C=Fraction(1), p=2)
    with pytest.raises(PrecisionNotReached) as info:
        sum_to_precision(stream, strat, 15, max_terms=1000)
    err = info.value
    assert err.requested_digits == 15
    assert err.best is None or err.best.rad_fraction() > 0


def test_hypothesis_violation_detected():
    # claimed envelope 1/3 but true ratio 1/2: the replay check must
    # refuse to certify the sum
    s = geometric_stream(Fraction(1, 2))
    bad = GeometricTail(step_env=lambda n: Fraction(1, 3),
                        sup_env=lambda n: Fraction(1, 2))
    with pytest.raises(TailHypothesisViolation):
        sum_to_precision(s, bad, 30)


def test_checks_can_be_disabled():
    s = geometric_stream(Fraction(1, 2))
    bad = GeometricTail(step_env=lambda n: Fraction(1, 3),
                        sup_env=lambda n: Fraction(1, 2))
    res = sum_to_precision(s, bad, 30, check_hypotheses=False)
    assert contains(res.value, Fraction(1))


# ----------------------------------------------------------------------
# empirical tail audit


def test_empirical_tail_check_passes_on_sound_setup():
    q = Fraction(1, 3)
    rows = empirical_tail_check(geometric_stream(q), geometric_tail(q))
    assert [row["N"] for row in rows] == [32, 128, 512]
    assert all(row["ok"] for row in rows)
    for row in rows:
        assert row["observed"] <= row["bound"]


def test_empirical_tail_check_flags_unsound_bound():
    # sup_env lies by a factor 1000, so the claimed tail bound falls
    # under the observed remainder
    q = Fraction(1, 2)
    lying = GeometricTail(step_env=lambda n: q,
                          sup_env=lambda n: Fraction(1, 1000))
    rows = empirical_tail_check(geometric_stream(q), lying, probes=(32,))
    assert rows and not rows[0]["ok"]
