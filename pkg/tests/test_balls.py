"""Enclosure arithmetic: containment, constants, quadrature cross-checks."""

import math
import random
from fractions import Fraction as F

import pytest

from binom4k.balls import (
    Ball,
    BallDomainError,
    QuadratureError,
    const_log,
    const_pi,
    const_sqrt,
    quad_integrate,
)

PI_DIGITS = F("3.14159265358979323846264338327950288")
LOG2_DIGITS = F("0.69314718055994530941723212145817657")


def _mercator_enclosure(t: F, digits: int) -> tuple[F, F]:
    """log(1+t) for 0 <= t <= 1/2 by the alternating series, with the
    first-omitted-term remainder.  Independent of the package's atanh route."""
    assert 0 <= t <= F(1, 2)
    target = F(1, 10 ** (digits + 2))
    s = F(0)
    sign = 1
    power = t
    n = 1
    while True:
        s += sign * power / n
        power *= t
        n += 1
        sign = -sign
        if power / n <= target:
            nxt = sign * power / n
            lo, hi = sorted((s, s + nxt))
            return lo, hi


def _log_oracle(q: F, digits: int = 50) -> tuple[F, F]:
    """Exact-rational enclosure of log q via multiplicative reduction into
    (1, 4/3] and the Mercator series; remainder bounds are explicit."""
    assert q > 0
    lo32, hi32 = _mercator_enclosure(F(1, 2), digits)   # log(3/2)
    lo2a, hi2a = _mercator_enclosure(F(1, 3), digits)   # log(4/3)
    lo2, hi2 = lo2a + lo32, hi2a + hi32                  # log 2
    m2 = m32 = 0
    while q > F(4, 3):
        if q / 2 > 1:
            q, m2 = q / 2, m2 + 1
        else:
            q, m32 = q / F(3, 2), m32 + 1
    while q <= 1:
        q, m2 = q * 2, m2 - 1
        if q > F(4, 3):
            q, m32 = q / F(3, 2), m32 + 1
    core_lo, core_hi = _mercator_enclosure(q - 1, digits)
    lo = core_lo + min(m2 * lo2, m2 * hi2) + min(m32 * lo32, m32 * hi32)
    hi = core_hi + max(m2 * lo2, m2 * hi2) + max(m32 * lo32, m32 * hi32)
    return lo, hi


class TestBallArithmetic:
    def test_exact_add(self):
        b = Ball.exact(2, 96) + Ball.exact(3, 96)
        assert b.contains(5) and b.radius() == 0

    def test_sub_mul_containment_random(self):
        rng = random.Random(5)
        for _ in range(60):
            x = F(rng.randint(-99, 99), rng.randint(1, 40))
            y = F(rng.randint(-99, 99), rng.randint(1, 40))
            bx, by = Ball.exact(x, 80), Ball.exact(y, 80)
            assert (bx + by).contains(x + y)
            assert (bx - by).contains(x - y)
            assert (bx * by).contains(x * y)
            if y != 0 and not by.contains_zero():
                assert (bx / by).contains(x / y)

    def test_sqrt_contains(self):
        s = Ball.exact(2, 80).sqrt()
        lo, hi = _isqrt_oracle(2, 30)
        assert s.lo_fraction() <= hi and lo <= s.hi_fraction()
        assert (s * s).contains(2)

    def test_log_additivity(self):
        d = Ball.exact(4, 128).log() - 2 * Ball.exact(2, 128).log()
        assert d.contains_zero()

    def test_division_by_zero_enclosure(self):
        with pytest.raises(BallDomainError):
            Ball.exact(1, 64) / (Ball.exact(1, 64) - Ball.exact(1, 64))

    def test_log_domain(self):
        with pytest.raises(BallDomainError):
            (Ball.exact(0, 64) - Ball.exact(1, 64)).log()

    def test_pow(self):
        b = Ball.exact(F(3, 7), 96)
        assert (b ** 5).contains(F(3, 7) ** 5)
        assert (b ** -2).contains(F(49, 9))

    def test_sqrt_containment_random(self):
        rng = random.Random(9)
        for _ in range(50):
            q = F(rng.randint(1, 10**9), rng.randint(1, 10**6))
            s = Ball.exact(q, 72).sqrt()
            assert s.lo_fraction() ** 2 <= q <= s.hi_fraction() ** 2


def _isqrt_oracle(n: int, digits: int) -> tuple[F, F]:
    scale = 10 ** digits
    r = math.isqrt(n * scale * scale)
    return F(r, scale), F(r + 1, scale)


class TestConstants:
    def test_pi_against_digits(self):
        # the literal is pi truncated at 36 digits, so compare at that scale
        p = const_pi(128)
        assert abs(p.midpoint() - PI_DIGITS) < F(1, 10**34)
        assert p.radius() < F(1, 10**34)

    def test_pi_second_formula(self):
        # independent arctan decomposition: pi = 20 atan(1/7) + 8 atan(3/79)
        from binom4k.balls import _atan_inv_enclosure
        a7 = _atan_inv_enclosure(7, 140)
        # atan(3/79) via the odd alternating series with x = 3/79
        x = F(3, 79)
        s, power, k = F(0), x, 0
        while True:
            s += power / (2 * k + 1) if k % 2 == 0 else -power / (2 * k + 1)
            power *= x * x
            k += 1
            if power / (2 * k + 1) < F(1, 10**45):
                break
        lo = 20 * a7[0] + 8 * (s - power)
        hi = 20 * a7[1] + 8 * (s + power)
        p = const_pi(128)
        assert lo <= p.hi_fraction() and p.lo_fraction() <= hi

    def test_log_one_is_zero(self):
        b = const_log(1, 77)
        assert b.width() == 0 and b.contains(0)

    def test_log2_against_digits(self):
        b = const_log(2, 128)
        assert abs(b.midpoint() - LOG2_DIGITS) < F(1, 10**34)

    def test_sqrt_examples(self):
        s = const_sqrt(2, 128)
        lo, hi = _isqrt_oracle(2, 35)
        assert lo <= s.hi_fraction() and s.lo_fraction() <= hi

    def test_radius_contract(self):
        for prec in (64, 128, 256):
            assert const_pi(prec).radius() <= F(1, 2 ** (prec - 8))
            assert const_log(F(7, 3), prec).radius() <= F(1, 2 ** (prec - 8))
            assert const_sqrt(5, prec).radius() <= F(1, 2 ** (prec - 8))

    def test_monotone_radius(self):
        for mk in (lambda p: const_pi(p), lambda p: const_log(2, p),
                   lambda p: const_sqrt(3, p)):
            assert mk(192).radius() < mk(128).radius()

    def test_refinement_containment(self):
        for mk in (lambda p: const_pi(p), lambda p: const_log(F(9, 7), p)):
            a, b = mk(96), mk(192)
            assert a.intersects(b)

    def test_log_oracle_containment_random(self):
        """const_log(r) intersects a 50-digit exact-rational series oracle
        with explicit remainder, for random rationals in (0, 10)."""
        rng = random.Random(41)
        for _ in range(100):
            r = F(rng.randint(1, 1000), rng.randint(1, 1000))
            if not 0 < r < 10:
                continue
            lo, hi = _log_oracle(r, 50)
            b = const_log(r, 200)
            assert b.lo_fraction() <= hi and lo <= b.hi_fraction()
            assert hi - lo < F(1, 10**48)

    def test_domain_errors(self):
        with pytest.raises(BallDomainError):
            const_log(0, 64)
        with pytest.raises(BallDomainError):
            const_log(F(-1, 2), 64)
        with pytest.raises(BallDomainError):
            const_sqrt(0, 64)


class TestQuadrature:
    def test_linear(self):
        q = quad_integrate(lambda t: t, F(0), F(1), tol=1e-20)
        assert abs(q.value - 0.5) < 1e-20
        assert q.error_estimate <= 1e-20
        assert q.evaluations > 0

    def test_log2_crosscheck(self):
        import mpmath
        q = quad_integrate(lambda t: 1 / (1 + t), F(0), F(1), tol=1e-22)
        mid = const_log(2, 160).midpoint()
        with mpmath.workdps(40):
            assert abs(q.value - mpmath.mpf(mid.numerator) / mid.denominator) < 1e-22

    def test_pi_crosscheck(self):
        import mpmath
        q = quad_integrate(lambda t: 4 / (1 + t * t), F(0), F(1), tol=1e-22)
        mid = const_pi(160).midpoint()
        with mpmath.workdps(40):
            assert abs(q.value - mpmath.mpf(mid.numerator) / mid.denominator) < 1e-22

    def test_budget_error_carries_best(self):
        import mpmath
        # |x|^(1/9) has an interior kink; a tiny budget cannot meet 1e-30
        with pytest.raises(QuadratureError) as exc:
            quad_integrate(lambda t: abs(t - mpmath.mpf(1) / 3) ** (mpmath.mpf(1) / 9),
                           F(0), F(1), tol=1e-30, dps=15)
        assert exc.value.best is not None
        assert exc.value.best.evaluations > 0
