"""Validated Euler-Maclaurin tail enclosures for binomial-harmonic series.

Private engine room behind :class:`series_engine.AsymptoticTail`.  Terms
of the shape

    t_n = R(n) * b(n)^e * D(n),    b(n) = C(2n,n)/4^n,

with R = P/Q rational and D one of the harmonic factors, decay like
n^(-3/2) or n^(-2): summing them to 15 digits directly is hopeless, so
the tail past N is evaluated analytically instead.

Pipeline, all error-tracked:

1. Expand ln(b(n) sqrt(pi n)) as a power series in u = 1/n with a tail
   coefficient rho certifying |remainder| <= rho u^(J+1) on 0 < u <= 1/33
   (Stirling series for ln Gamma with enveloped remainders), then
   exponentiate the series with a rigorous exp remainder.
2. Expand the harmonic factor via H_m = ln m + gamma + h_m with the
   enveloped asymptotic series for h_m, so each term becomes

       t_n = sum_j (a_j + b_j ln n) n^(-sigma0-j)  +  graded remainder.

3. Sum over n > N exactly in terms of the Hurwitz-type sums
   Z(s,a) = sum n^-s and ZL(s,a) = sum n^-s ln n, both evaluated by
   Euler-Maclaurin with first-omitted-term (Z) and derivative-sign (ZL)
   remainder bounds.

Every series is a :class:`USeries`: ball coefficients up to degree J
plus an exact rational rho with |f(u) - poly(u)| <= rho u^(J+1) on the
validity window.  All bound bookkeeping is exact rational arithmetic;
only midpoint values live in balls.  Valid for N >= 32 (so a = N+1 >= 33).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from mpmath import bernfrac
from mpmath.libmp import fzero, to_rational

from .ball_arith import (
    Ball,
    ConstantName,
    constant,
    _euler_gamma_ball,
)

J = 12                       # series degree in u = 1/n
U0 = Fraction(1, 33)         # validity window 0 < u <= U0
_MIN_A = 33                  # tails valid for a = N+1 >= 33

__all__ = ["EmRecipe", "tail_enclosure", "build_poly", "z_em", "zl_em", "J", "U0"]


def _bern(m: int) -> Fraction:
    p, q = bernfrac(m)
    return Fraction(int(p), int(q))


def _fr_abs_hi(b: Ball) -> Fraction:
    """Exact rational upper bound for |values in b| (mpf hulls are dyadic)."""
    p, q = to_rational(b.abs_hi())
    return Fraction(int(p), int(q))


def _fr_up(x: Fraction, bits: int = 120) -> Fraction:
    """Round a nonnegative rational up to a dyadic with a short mantissa."""
    if x == 0:
        return x
    n = (x.numerator << bits) // x.denominator + 1
    return Fraction(n, 1 << bits)


def _is_zero_ball(b: Ball) -> bool:
    return b.mid == fzero and b.rad == fzero


# --------------------------------------------------------------------
# u-series with graded remainders
# --------------------------------------------------------------------

class USeries:
    """f(u) = sum_{m<=J} c[m] u^m + r(u), |r(u)| <= rho u^(J+1) on (0, U0]."""

    __slots__ = ("c", "rho", "prec")

    def __init__(self, prec: int, coeffs=None, rho: Fraction = Fraction(0)):
        self.prec = prec
        self.c = [Ball.zero(prec) for _ in range(J + 1)]
        if coeffs:
            for m, v in enumerate(coeffs[: J + 1]):
                self.c[m] = self._ball(v)
        self.rho = Fraction(rho)

    def _ball(self, v) -> Ball:
        if isinstance(v, Ball):
            return v
        return Ball.from_fraction(Fraction(v), self.prec)

    def polybound(self) -> Fraction:
        tot = Fraction(0)
        for m, b in enumerate(self.c):
            if not _is_zero_ball(b):
                tot += _fr_abs_hi(b) * U0 ** m
        return _fr_up(tot)

    def bound(self) -> Fraction:
        return _fr_up(self.polybound() + self.rho * U0 ** (J + 1))

    def __add__(self, other: "USeries") -> "USeries":
        r = USeries(self.prec)
        r.c = [a + b for a, b in zip(self.c, other.c)]
        r.rho = _fr_up(self.rho + other.rho)
        return r

    def __sub__(self, other: "USeries") -> "USeries":
        r = USeries(self.prec)
        r.c = [a - b for a, b in zip(self.c, other.c)]
        r.rho = _fr_up(self.rho + other.rho)
        return r

    def scale_frac(self, k: Fraction) -> "USeries":
        k = Fraction(k)
        r = USeries(self.prec)
        if k == 0:
            return r
        kb = Ball.from_fraction(k, self.prec)
        r.c = [a * kb for a in self.c]
        r.rho = _fr_up(abs(k) * self.rho)
        return r

    def scale_ball(self, k: Ball) -> "USeries":
        r = USeries(self.prec)
        r.c = [a * k for a in self.c]
        r.rho = _fr_up(_fr_abs_hi(k) * self.rho)
        return r

    def __mul__(self, other: "USeries") -> "USeries":
        prec = self.prec
        conv = [Ball.zero(prec) for _ in range(2 * J + 1)]
        for i, a in enumerate(self.c):
            if _is_zero_ball(a):
                continue
            for j2, b in enumerate(other.c):
                if _is_zero_ball(b):
                    continue
                conv[i + j2] = conv[i + j2] + a * b
        r = USeries(prec)
        r.c = conv[: J + 1]
        fold = Fraction(0)
        for m in range(J + 1, 2 * J + 1):
            if not _is_zero_ball(conv[m]):
                fold += _fr_abs_hi(conv[m]) * U0 ** (m - J - 1)
        r.rho = _fr_up(fold
                       + self.polybound() * other.rho
                       + other.polybound() * self.rho
                       + self.rho * other.rho * U0 ** (J + 1))
        return r


def _const_ser(prec: int, v) -> USeries:
    return USeries(prec, [v])


def _mono_ser(prec: int, m: int, v) -> USeries:
    coeffs = [Fraction(0)] * m + [v]
    return USeries(prec, coeffs)


# --------------------------------------------------------------------
# exact rational division P*(u)/Q*(u) with certified remainder
# --------------------------------------------------------------------

def _interval_horner(Q, lo: Fraction, hi: Fraction):
    """Exact interval evaluation of a polynomial on [lo, hi]."""
    a, b = Fraction(Q[-1]), Fraction(Q[-1])
    for q in reversed(Q[:-1]):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + q, max(cands) + q
    return a, b


def _poly_abs_min(Q, lo: Fraction, hi: Fraction, depth: int = 0) -> Fraction:
    """Rigorous lower bound for min |Q(u)| on [lo, hi]."""
    a, b = _interval_horner(Q, lo, hi)
    if a > 0:
        return a
    if b < 0:
        return -b
    if depth >= 24:
        raise ArithmeticError("denominator may vanish on the validity window")
    mid = (lo + hi) / 2
    return min(_poly_abs_min(Q, lo, mid, depth + 1),
               _poly_abs_min(Q, mid, hi, depth + 1))


def rational_useries(P, Q, prec: int) -> USeries:
    """P*(u)/Q*(u) with exact rational synthetic division, Q*(0) != 0."""
    P = [Fraction(x) for x in P]
    Q = [Fraction(x) for x in Q]
    c = [Fraction(0)] * (J + 1)
    for m in range(J + 1):
        acc = P[m] if m < len(P) else Fraction(0)
        for i in range(1, min(m, len(Q) - 1) + 1):
            acc -= Q[i] * c[m - i]
        c[m] = acc / Q[0]
    # residual numerator E = P - Q * c, supported on degrees J+1 .. J+degQ
    E = [Fraction(0)] * (J + len(Q))
    for m, v in enumerate(P):
        E[m] += v
    for i, qv in enumerate(Q):
        for m2, cv in enumerate(c):
            E[i + m2] -= qv * cv
    for m in range(J + 1):
        assert E[m] == 0
    num = sum(abs(E[m]) * U0 ** (m - J - 1) for m in range(J + 1, len(E)))
    qmin = _poly_abs_min(Q, Fraction(0), U0)
    ser = USeries(prec, c)
    ser.rho = _fr_up(Fraction(num) / qmin)
    return ser


# --------------------------------------------------------------------
# exp of a u-series that vanishes at u = 0 (up to ball slack)
# --------------------------------------------------------------------

def _exp_hi(x: Fraction) -> Fraction:
    """Exact-rational upper bound for e^x, x >= 0 (coarse is fine)."""
    b = Ball.from_fraction(x, 80).exp()
    return _fr_abs_hi(b)


def exp_useries(f: USeries) -> USeries:
    prec = f.prec
    c0 = f.c[0]
    p = USeries(prec)
    p.c = [Ball.zero(prec)] + list(f.c[1:])
    p.rho = f.rho
    out = _const_ser(prec, Fraction(1))
    term = _const_ser(prec, Fraction(1))
    for k in range(1, J + 1):
        term = term * p
        out = out + term.scale_frac(Fraction(1, math.factorial(k)))
    # truncated powers P^(J+1)/((J+1)!) + ... <= qhat^(J+1) e^(qhat U0)/(J+1)!
    qhat = Fraction(0)
    for m in range(1, J + 1):
        if not _is_zero_ball(p.c[m]):
            qhat += _fr_abs_hi(p.c[m]) * U0 ** (m - 1)
    out.rho = _fr_up(out.rho
                     + qhat ** (J + 1) * _exp_hi(qhat * U0)
                     / math.factorial(J + 1))
    # exp(poly + r) = exp(poly) exp(r): |exp(r) - 1| <= |r| e^|r|
    d0 = f.rho * U0 ** (J + 1)
    out.rho = _fr_up(out.rho + out.bound() * f.rho * _exp_hi(d0))
    # fold the (tiny) constant slack c0 back in multiplicatively
    if not _is_zero_ball(c0):
        out = out.scale_ball(c0.exp())
    return out


# --------------------------------------------------------------------
# Stirling / harmonic building blocks
# --------------------------------------------------------------------

def _a_series(prec: int) -> USeries:
    """(n + 1/2) ln(1 + u/2) - 1 - n ln(1 + u) + u-free normalization.

    Exact alternating coefficients; remainder bounded by the three
    first-omitted magnitudes (each factor series is alternating with
    decreasing terms on (0, U0]).
    """
    coeffs = [Fraction(-1, 2)]
    for m in range(1, J + 1):
        v = (Fraction(1, (m + 1) * 2 ** (m + 1)) - Fraction(1, m + 1)
             + Fraction(1, 2 * m))
        coeffs.append(Fraction((-1) ** m) * v)
    rho = (Fraction(1, (J + 2) * 2 ** (J + 2)) + Fraction(1, J + 2)
           + Fraction(1, 2 * (J + 1)))
    ser = USeries(prec, coeffs)
    ser.rho = rho
    return ser


def _s_series(a: Fraction, prec: int, js: int = 8) -> USeries:
    """Stirling correction S(n+a) = sum_j B_2j/(2j(2j-1)(n+a)^(2j-1))."""
    a = Fraction(a)
    out = USeries(prec)
    for j in range(1, js + 1):
        coef = _bern(2 * j) / (2 * j * (2 * j - 1))
        deg = 2 * j - 1
        den = [math.comb(deg, i) * a ** i for i in range(deg + 1)]
        num = [Fraction(0)] * deg + [coef]
        out = out + rational_useries(num, den, prec)
    # enveloped Stirling remainder, first omitted term at (n+a) >= n
    rem = abs(_bern(2 * js + 2)) / Fraction((2 * js + 2) * (2 * js + 1))
    out.rho = _fr_up(out.rho + rem * U0 ** (2 * js + 1 - (J + 1)))
    return out


def _h_series(s: int, prec: int, kh: int = 7) -> USeries:
    """h_{sn} = H_{sn} - ln(sn) - gamma as a series in u = 1/n."""
    ser = USeries(prec, [Fraction(0), Fraction(1, 2 * s)])
    for k in range(1, kh + 1):
        v = -_bern(2 * k) / Fraction(2 * k * s ** (2 * k))
        if 2 * k <= J:
            ser.c[2 * k] = ser.c[2 * k] + Ball.from_fraction(v, prec)
        else:
            ser.rho = _fr_up(ser.rho + abs(v) * U0 ** (2 * k - (J + 1)))
    rem = abs(_bern(2 * kh + 2)) / Fraction((2 * kh + 2) * s ** (2 * kh + 2))
    ser.rho = _fr_up(ser.rho + rem * U0 ** (2 * kh + 2 - (J + 1)))
    return ser


def _g_series(prec: int) -> USeries:
    """ln(b(n) sqrt(pi n)) as a u-series."""
    return (_a_series(prec) + _const_ser(prec, Fraction(1, 2))
            + _s_series(Fraction(1, 2), prec) - _s_series(Fraction(1), prec))


def _d_part(kind: str, prec: int):
    """Harmonic factor D(n) = alpha_L ln n + D0(u); returns (alpha_L, D0)."""
    ln2 = constant(ConstantName.LN2, prec)
    gamma = _euler_gamma_ball(prec)
    h1 = _h_series(1, prec)
    h2 = _h_series(2, prec)
    if kind == "1":
        return Fraction(0), _const_ser(prec, Fraction(1))
    if kind == "HD":
        return Fraction(0), _const_ser(prec, ln2) + h2 - h1
    if kind == "HDM":
        return (Fraction(0), _const_ser(prec, ln2) + h2 - h1
                - _mono_ser(prec, 1, Fraction(1, 2)))
    if kind == "H":
        return Fraction(1), _const_ser(prec, gamma) + h1
    if kind == "H2N":
        return Fraction(1), _const_ser(prec, ln2 + gamma) + h2
    if kind == "HD_HALF":
        return (Fraction(1, 2),
                _const_ser(prec, ln2 + gamma.mul_2exp(-1)) + h2
                - h1.scale_frac(Fraction(1, 2)))
    raise ValueError(f"unknown harmonic kind {kind!r}")


# --------------------------------------------------------------------
# recipes and the assembled coefficient polynomials
# --------------------------------------------------------------------

@dataclass(frozen=True)
class EmRecipe:
    """t_n = scale * (P/Q)(n) * b(n)^e * D_kind(n), coefficients ascending."""

    key: str
    P: tuple
    Q: tuple
    e: int
    dkind: str
    scale: Fraction = Fraction(1)

    @property
    def sigma0(self) -> Fraction:
        return Fraction(len(self.Q) - len(self.P)) + Fraction(self.e, 2)


_POLY_CACHE: dict = {}
_POLY_LOCK = threading.Lock()


def build_poly(recipe: EmRecipe, prec: int):
    """(sigma0, W0, W1): t_n = sum_j (W0_j + W1_j ln n) n^(-sigma0-j) + rem."""
    cache_key = (recipe.key, recipe.P, recipe.Q, recipe.e, recipe.dkind, prec)
    with _POLY_LOCK:
        got = _POLY_CACHE.get(cache_key)
    if got is not None:
        return got
    pstar = tuple(reversed(recipe.P))
    qstar = tuple(reversed(recipe.Q))
    t = rational_useries(pstar, qstar, prec)
    if recipe.e:
        g = _g_series(prec)
        x = exp_useries(g.scale_frac(Fraction(recipe.e)))
        pi = constant(ConstantName.PI, prec)
        if recipe.e == 1:
            pref = 1 / pi.sqrt()
        elif recipe.e == 2:
            pref = 1 / pi
        else:
            pref = 1 / pi.sqrt().pow_int(recipe.e)
        t = (t * x).scale_ball(pref)
    alpha_l, d0 = _d_part(recipe.dkind, prec)
    w1 = t.scale_frac(alpha_l)
    w0 = t * d0
    result = (recipe.sigma0, w0, w1)
    with _POLY_LOCK:
        _POLY_CACHE[cache_key] = result
    return result


# --------------------------------------------------------------------
# Euler-Maclaurin evaluation of Z(s,a) and ZL(s,a)
# --------------------------------------------------------------------

def _poch(s: Fraction, m: int) -> Fraction:
    v = Fraction(1)
    for i in range(m):
        v *= s + i
    return v


def _apow(a: int, expo: Fraction, prec: int) -> Ball:
    """a^expo for integer a >= 2 and expo with denominator 1 or 2."""
    expo = Fraction(expo)
    if expo.denominator == 1:
        return Ball.from_int(a, prec).pow_int(expo.numerator)
    if expo.denominator == 2:
        m = expo.numerator // 2          # floor, so the leftover is +1/2
        base = Ball.from_int(a, prec).pow_int(m)
        return base * Ball.from_int(a, prec).sqrt()
    raise ValueError("exponent must be an integer or half-integer")


def z_em(s: Fraction, a: int, prec: int, k_order: int = 10) -> Ball:
    """sum_{n >= a} n^-s with the remainder folded into the radius."""
    s = Fraction(s)
    val = (_apow(a, 1 - s, prec)
           * Ball.from_fraction(Fraction(1) / (s - 1), prec))
    val = val + _apow(a, -s, prec).mul_2exp(-1)
    for k in range(1, k_order + 1):
        coef = _bern(2 * k) / Fraction(math.factorial(2 * k)) * _poch(s, 2 * k - 1)
        val = val + Ball.from_fraction(coef, prec) * _apow(a, -s - 2 * k + 1, prec)
    err_coef = (abs(_bern(2 * k_order + 2))
                / Fraction(math.factorial(2 * k_order + 2))
                * _poch(s, 2 * k_order + 1))
    err = Ball.from_fraction(err_coef, prec) * _apow(a, -s - 2 * k_order - 1, prec)
    return val.widened(err.abs_hi())


def zl_em(s: Fraction, a: int, prec: int) -> Ball:
    """sum_{n >= a} n^-s ln n with a certified remainder.

    The remainder bound 4 (2 pi)^(-2K) |g^(2K-1)(a)| requires g^(2K) to
    keep one sign on [a, inf), which reduces to
    ln a >= sum_{i<2K} 1/(s+i); K adapts downward until that holds.
    """
    s = Fraction(s)
    la = Ball.from_int(a, prec).ln()
    la_lo_ok = None
    for k_order in (10, 8, 6, 4, 3):
        cond = sum(Fraction(1, s + i) for i in range(2 * k_order))
        gap = la - Ball.from_fraction(cond, prec)
        if gap.is_positive():
            la_lo_ok = k_order
            break
    if la_lo_ok is None:
        raise ArithmeticError("no valid Euler-Maclaurin order for ZL")
    k_order = la_lo_ok

    sm1 = Ball.from_fraction(Fraction(1) / (s - 1), prec)
    val = _apow(a, 1 - s, prec) * (la * sm1 + sm1 * sm1)
    val = val + _apow(a, -s, prec) * la.mul_2exp(-1)
    # g^(m)(x) = x^(-s-m) (p_m ln x + q_m), exact rational p, q
    p, q = Fraction(1), Fraction(0)
    derivs = {}
    for m in range(1, 2 * k_order):
        p, q = -(s + m - 1) * p, p - (s + m - 1) * q
        derivs[m] = (p, q)
    for k in range(1, k_order + 1):
        pm, qm = derivs[2 * k - 1]
        gk = _apow(a, -s - (2 * k - 1), prec) * (
            Ball.from_fraction(pm, prec) * la + Ball.from_fraction(qm, prec))
        val = val - Ball.from_fraction(
            _bern(2 * k) / Fraction(math.factorial(2 * k)), prec) * gk
    pm, qm = derivs[2 * k_order - 1]
    glast = _apow(a, -s - (2 * k_order - 1), prec) * (
        Ball.from_fraction(pm, prec) * la + Ball.from_fraction(qm, prec))
    two_pi = constant(ConstantName.PI, prec).mul_2exp(1)
    err = (glast * (Ball.from_int(4, prec)
                    / two_pi.pow_int(2 * k_order))).abs_hi()
    return val.widened(err)


# --------------------------------------------------------------------
# the tail enclosure
# --------------------------------------------------------------------

def tail_enclosure(recipe: EmRecipe, N: int, prec: int) -> Ball:
    """Rigorous ball enclosing sum_{n > N} t_n; requires N + 1 >= 33."""
    a = N + 1
    if a < _MIN_A:
        raise ValueError(f"asymptotic tail needs N >= {_MIN_A - 1}")
    wp = prec + 30
    sigma0, w0, w1 = build_poly(recipe, wp)
    tot = Ball.zero(wp)
    for j in range(J + 1):
        s = sigma0 + j
        if not _is_zero_ball(w0.c[j]):
            tot = tot + w0.c[j] * z_em(s, a, wp)
        if not _is_zero_ball(w1.c[j]):
            tot = tot + w1.c[j] * zl_em(s, a, wp)
    s_rem = sigma0 + J + 1
    rem = Fraction(0)
    if w0.rho:
        rem += w0.rho * _fr_abs_hi(z_em(s_rem, a, wp))
    if w1.rho:
        rem += w1.rho * _fr_abs_hi(zl_em(s_rem, a, wp))
    if rem:
        tot = tot.widened(Ball.from_fraction(rem, wp).abs_hi())
    if recipe.scale != 1:
        tot = tot * Ball.from_fraction(recipe.scale, wp)
    return Ball(tot.mid, tot.rad, prec)
