"""Truncated formal power series over Q and the exact algebraic facts about

    f(x)   = sum_k C(4k,k) x^k            (|x| < 27/256)
    G_m(x) = sum_k C(mk,k)/((m-1)k+1) x^k (the generalized binomial series)

verified coefficient-by-coefficient: the quartic functional equation of f,
the G_m equation G = 1 + x G^m, the log formulas, the closed forms of f' and
f'', Lagrange inversion for powers of G_m, and the construction of the
algebraic constants attached to x = 1/16 and x = -1/256.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .balls import Ball
from .exact import AlgebraicReal, NFElem, NumberField, Poly, sqrt_in_field
from .series import RADIUS, SeriesSpec, sum_series


class TruncSeries:
    """Formal power series truncated at a fixed order, exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least order 0")

    def __setattr__(self, *a):
        raise AttributeError("TruncSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, K: int) -> "TruncSeries":
        if K >= self.order:
            return self
        return TruncSeries(self.coeffs[: K + 1])

    @staticmethod
    def constant(c, K: int) -> "TruncSeries":
        return TruncSeries((Fraction(c),) + (Fraction(0),) * K)

    # -- ring operations (exact through the common order) --------------------

    def _common(self, other) -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(other, self.order)
        K = self._common(other)
        return TruncSeries([self[i] + other[i] for i in range(K + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncSeries([c * other for c in self.coeffs])
        K = self._common(other)
        out = [Fraction(0)] * (K + 1)
        for i in range(K + 1):
            a = self[i]
            if a == 0:
                continue
            for j in range(K + 1 - i):
                b = other[j]
                if b:
                    out[i + j] += a * b
        return TruncSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if other[0] == 0:
            raise ZeroDivisionError("division by a series with zero constant term")
        K = self._common(other)
        out = [Fraction(0)] * (K + 1)
        for n in range(K + 1):
            acc = self[n]
            for i in range(n):
                acc -= out[i] * other[n - i]
            out[n] = acc / other[0]
        return TruncSeries(out)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative series power")
        K = self.order
        result = TruncSeries.constant(1, K)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift_x(self) -> "TruncSeries":
        """Multiply by x, keeping the order."""
        return TruncSeries((Fraction(0),) + self.coeffs[:-1])

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries([Fraction(0)])
        return TruncSeries([i * self.coeffs[i] for i in range(1, self.order + 1)])

    def integrate(self) -> "TruncSeries":
        return TruncSeries([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def log(self) -> "TruncSeries":
        """log of a series with constant term 1, via integrating f'/f."""
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.order == 0:
            return TruncSeries([Fraction(0)])
        q = self.derivative() / self.truncate(self.order - 1)
        return q.integrate()

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(x)) for inner with zero constant term."""
        if inner[0] != 0:
            raise ValueError("composition needs zero constant term")
        K = min(self.order, inner.order)
        acc = TruncSeries.constant(0, K)
        for c in reversed(self.coeffs[: K + 1]):
            acc = acc * inner.truncate(K) + c
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncSeries([{head}{tail}], order={self.order})"


# ---------------------------------------------------------------------------
# the concrete series


def coeffs_f(K: int) -> TruncSeries:
    """Truncation of sum_k C(4k,k) x^k."""
    if K < 0:
        raise ValueError("order must be >= 0")
    return TruncSeries([math.comb(4 * k, k) for k in range(K + 1)])


def gm_series(m: int, K: int) -> TruncSeries:
    """Truncation of G_m(x) = sum_k C(mk,k)/((m-1)k+1) x^k."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return TruncSeries([Fraction(math.comb(m * k, k), (m - 1) * k + 1) for k in range(K + 1)])


@dataclass(frozen=True)
class SeriesCheck:
    name: str
    ok: bool
    first_bad_order: Optional[int] = None
    detail: str = ""

    @staticmethod
    def from_residual(name: str, residual: TruncSeries, detail: str = "") -> "SeriesCheck":
        bad = residual.first_nonzero()
        return SeriesCheck(name, bad is None, bad, detail)


def check_quartic_f(K: int, f: Optional[TruncSeries] = None) -> SeriesCheck:
    """Residual of 27 f^4 - 18 f^2 - 8 f - 1 - 256 x f^4 through order K."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if f is None:
        f = coeffs_f(K)
    f2 = f * f
    f4 = f2 * f2
    residual = 27 * f4 - 18 * f2 - 8 * f - 1 - 256 * f4.shift_x()
    return SeriesCheck.from_residual(f"quartic-f K={K}", residual)


def check_gm(m: int, K: int) -> SeriesCheck:
    """Residual of G_m - 1 - x G_m^m through order K."""
    if m < 1 or K < 1:
        raise ValueError("need m >= 1 and K >= 1")
    G = gm_series(m, K)
    residual = G - 1 - (G**m).shift_x()
    return SeriesCheck.from_residual(f"gm-equation m={m} K={K}", residual)


def check_log_gm(m: int, K: int) -> SeriesCheck:
    """Coefficient k of m log G_m must equal C(mk,k)/k."""
    if m < 1 or K < 1:
        raise ValueError("need m >= 1 and K >= 1")
    L = m * gm_series(m, K).log()
    for k in range(1, K + 1):
        if L[k] != Fraction(math.comb(m * k, k), k):
            return SeriesCheck(f"gm-log m={m} K={K}", False, k)
    return SeriesCheck(f"gm-log m={m} K={K}", True)


def check_f_log(K: int) -> SeriesCheck:
    """Coefficient k of 4 log(4f/(3f+1)) must equal C(4k,k)/k."""
    if K < 1:
        raise ValueError("K must be >= 1")
    f = coeffs_f(K)
    L = 4 * ((4 * f) / (3 * f + 1)).log()
    for k in range(1, K + 1):
        if L[k] != Fraction(math.comb(4 * k, k), k):
            return SeriesCheck(f"f-log K={K}", False, k)
    return SeriesCheck(f"f-log K={K}", True)


def check_derivatives_f(K: int) -> SeriesCheck:
    """Termwise f' vs 64 f^5/(3f+1)^2 (order K-1) and f'' vs
    4096 f^9 (9f+5)/(3f+1)^5 (order K-2)."""
    if K < 2:
        raise ValueError("K must be >= 2")
    f = coeffs_f(K)
    d1 = f.derivative()
    closed1 = (64 * f**5) / ((3 * f + 1) ** 2)
    r1 = d1 - closed1.truncate(K - 1)
    if not r1.is_zero():
        return SeriesCheck(f"f-derivatives K={K}", False, r1.first_nonzero(), "first derivative")
    d2 = d1.derivative()
    closed2 = (4096 * f**9 * (9 * f + 5)) / ((3 * f + 1) ** 5)
    r2 = d2 - closed2.truncate(K - 2)
    if not r2.is_zero():
        return SeriesCheck(f"f-derivatives K={K}", False, r2.first_nonzero(), "second derivative")
    return SeriesCheck(f"f-derivatives K={K}", True)


def check_lagrange(m: int, n: int, K: int) -> SeriesCheck:
    """Coefficient k of G_m^n must equal (n/k) C(mk+n-1, k-1) for 1 <= k <= K."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    P = gm_series(m, K) ** n
    if P[0] != 1:
        return SeriesCheck(f"lagrange m={m} n={n} K={K}", False, 0)
    for k in range(1, K + 1):
        if P[k] != Fraction(n, k) * math.comb(m * k + n - 1, k - 1):
            return SeriesCheck(f"lagrange m={m} n={n} K={K}", False, k)
    return SeriesCheck(f"lagrange m={m} n={n} K={K}", True)


# ---------------------------------------------------------------------------
# algebraic contexts at the special points


class ContextError(ArithmeticError):
    """An exact invariant of an algebraic context failed to reduce to zero."""


# minimal polynomial of f(1/16): 11 t^3 - 11 t^2 - 7 t - 1
ALPHA_CUBIC = Poly([-1, -7, -11, 11])
# minimal polynomial of f(-1/256): 28 t^4 - 18 t^2 - 8 t - 1
BETA_QUARTIC = Poly([-1, -8, -18, 0, 28])


@dataclass(frozen=True)
class AlphaContext:
    """The value a = f(1/16) with the exact closed forms of f'(1/16), f''(1/16).

    Invariant (checked at construction): (11/128) a'' - (35/8) a' + 11 a + 5 = 0.
    """

    field: NumberField
    alpha: AlgebraicReal
    elem: NFElem       # a as a field element
    alpha_p: NFElem    # 64 a^5 / (3a+1)^2
    alpha_pp: NFElem   # 4096 a^9 (9a+5) / (3a+1)^5


@dataclass(frozen=True)
class BetaContext:
    """The value b = f(-1/256) inside the quartic field that also contains
    sqrt(2).

    Invariant (checked at construction): 14 b^2 - 7 sqrt2 b - 1 - 2 sqrt2 = 0
    with sqrt2 the positive square root of 2 expressed in the field, and the
    real embedding of b lies in (0.9, 1).
    """

    field: NumberField
    beta: NFElem
    sqrt2: NFElem


def make_alpha() -> AlphaContext:
    field = NumberField(ALPHA_CUBIC, (Fraction(1), Fraction(2)))
    a = field.gen()
    ap = 64 * a**5 / (3 * a + 1) ** 2
    app = 4096 * a**9 * (9 * a + 5) / (3 * a + 1) ** 5
    relation = Fraction(11, 128) * app - Fraction(35, 8) * ap + 11 * a + 5
    if not relation.is_zero():
        raise ContextError(f"closed-form relation residual is nonzero: {relation!r}")
    return AlphaContext(field=field, alpha=field.embedding, elem=a, alpha_p=ap, alpha_pp=app)


def make_beta() -> BetaContext:
    field = NumberField(BETA_QUARTIC, (Fraction(1, 2), Fraction(1)))
    b = field.gen()
    s2 = sqrt_in_field(field, 2)
    if not (s2 * s2 == 2 and s2.sign() > 0):
        raise ContextError("sqrt(2) construction failed")
    quad = 14 * b * b - 7 * s2 * b - 1 - 2 * s2
    if not quad.is_zero():
        raise ContextError(f"quadratic residual is nonzero: {quad!r}")
    lo, hi = field.embedding.refine(Fraction(1, 100))
    if not (Fraction(9, 10) < lo and hi < 1):
        raise ContextError("embedding escaped (0.9, 1)")
    return BetaContext(field=field, beta=b, sqrt2=s2)


def eval_f(x, digits: int = 30) -> Ball:
    """Rigorous enclosure of f(x) for rational |x| < 27/256."""
    x = Fraction(x)
    if abs(x) >= RADIUS:
        raise ValueError(f"|x| = {abs(x)} is outside the open radius 27/256")
    return sum_series(SeriesSpec(x=x, channels={0: (Fraction(1),)}), digits)
