"""Exact arithmetic kernel.

Univariate polynomials over the rationals and over real number fields,
Sturm-sequence real-root isolation, algebraic reals given by a defining
polynomial plus an isolating interval, and single-generator number fields
Q[t]/(p(t)) with a distinguished real embedding.

Everything in this module is exact: no floating point, no tolerances.
All values are immutable after construction and all operations are pure,
so the module is safe to use from concurrent workers without coordination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Q = Fraction

Scalar = Union[Fraction, "NFElem", "RatFunc"]


class ZeroDivisorError(ZeroDivisionError):
    """Division by a zero polynomial / zero field element."""


def _sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    sn = math.isqrt(q.numerator)
    sd = math.isqrt(q.denominator)
    if sn * sn == q.numerator and sd * sd == q.denominator:
        return Fraction(sn, sd)
    return None


# ---------------------------------------------------------------------------
# rational interval helpers (exact endpoint arithmetic)

Ival = tuple[Fraction, Fraction]


def ival_add(a: Ival, b: Ival) -> Ival:
    return (a[0] + b[0], a[1] + b[1])


def ival_neg(a: Ival) -> Ival:
    return (-a[1], -a[0])


def ival_mul(a: Ival, b: Ival) -> Ival:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def ival_scale(a: Ival, c: Fraction) -> Ival:
    return (a[0] * c, a[1] * c) if c >= 0 else (a[1] * c, a[0] * c)


# ---------------------------------------------------------------------------
# polynomials


def _coerce_coeffs(coeffs: Iterable) -> tuple:
    """Normalize a coefficient sequence: ints/Fractions stay rational, and if
    any coefficient is an NFElem (or RatFunc) the rational ones are lifted."""
    cs = list(coeffs)
    lift = None
    for c in cs:
        if isinstance(c, (NFElem, RatFunc)):
            lift = c
            break
    out = []
    for c in cs:
        if isinstance(c, int):
            c = Fraction(c)
        if lift is not None and isinstance(c, Fraction):
            c = lift._const(c)
        out.append(c)
    return tuple(out)


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree order.

    Coefficients are Fractions, NFElems of one common field, or RatFuncs.
    The zero polynomial is the empty coefficient tuple; its degree is -1,
    standing in for "minus infinity" in divrem logic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(_coerce_coeffs(coeffs))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Poly is immutable")

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Scalar:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _pair(a: "Poly", b: "Poly") -> tuple["Poly", "Poly"]:
        """Lift one operand when rational and field polynomials are mixed."""
        sa = a.coeffs[0] if a.coeffs else None
        sb = b.coeffs[0] if b.coeffs else None
        if isinstance(sa, (NFElem, RatFunc)) and isinstance(sb, Fraction):
            return a, Poly([sa._const(c) for c in b.coeffs])
        if isinstance(sb, (NFElem, RatFunc)) and isinstance(sa, Fraction):
            return Poly([sb._const(c) for c in a.coeffs]), b
        return a, b

    def __add__(self, other: "Poly") -> "Poly":
        a, b = Poly._pair(self, other)
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly([a[i] + b[i] for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, NFElem, RatFunc)):
            return self.scale(other)
        a, b = Poly._pair(self, other)
        if a.is_zero() or b.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            for j, cb in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if isinstance(c, int):
            c = Fraction(c)
        return Poly([x * c for x in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        zero = self.coeffs[0] * 0
        return Poly([zero] * k + list(self.coeffs))

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q*other + r with deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisorError("zero divisor")
        a, b = Poly._pair(self, other)
        r = list(a.coeffs)
        db = b.degree
        lead = b.leading()
        if len(r) - 1 < db:
            return Poly(), a
        qcoeffs = [a.coeffs[0] * 0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            f = c / lead
            qcoeffs[i - db] = f
            for j, cb in enumerate(b.coeffs):
                r[i - db + j] = r[i - db + j] - f * cb
        return Poly(qcoeffs), Poly(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def divides_exactly(self, other: "Poly") -> bool:
        """True if self divides other with zero remainder."""
        return other.divrem(self)[1].is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = Poly._pair(self, other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        """self(other(x)) by Horner."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly([c])
        return acc

    def __call__(self, x):
        """Evaluate by Horner at a scalar (Fraction, NFElem, ...)."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        return acc

    def eval_interval(self, iv: Ival) -> Ival:
        """Enclosure of the image of a rational interval (rational coeffs)."""
        acc = (Fraction(0), Fraction(0))
        for c in reversed(self.coeffs):
            acc = ival_add(ival_mul(acc, iv), (c, c))
        return acc

    def squarefree_part(self) -> "Poly":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return (self // g).monic()

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def pretty(self, var: str = "y") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                term = f"{c}"
            elif i == 1:
                term = f"{c}*{var}" if c != 1 else var
            else:
                term = f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Sturm sequences and real-root isolation


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(chain: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(p(x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading())
    return Fraction(1) + max(abs(c) for c in p.coeffs) / lead


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of squarefree p in the open (lo, hi)."""
    chain = _sturm_chain(p)
    n = _variations(chain, lo) - _variations(chain, hi)
    if p(hi) == 0:
        n -= 1
    return n


def sturm_isolate(
    p: Poly,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    max_width: Optional[Fraction] = None,
) -> list[Ival]:
    """Isolate the real roots of a squarefree rational polynomial.

    Returns disjoint open intervals, each containing exactly one root, whose
    union covers every root in the requested (open) range.  Endpoints of the
    returned intervals are never roots.  With `max_width` each interval is
    additionally bisected down to at most that width (a bisection point that
    hits a rational root exactly collapses that interval to a point).
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.gcd(p.derivative()).degree > 0:
        raise ValueError("polynomial is not squarefree; divide by gcd(p, p') first")
    if p.degree == 0:
        return []
    bound = root_bound(p)
    a = Fraction(lo) if lo is not None else -bound
    b = Fraction(hi) if hi is not None else bound
    if a >= b:
        return []
    # nudge endpoints off roots, staying inside the requested open range
    step = (b - a) / (4 * p.degree + 4)
    while p(a) == 0:
        a += step
        step /= 2
    step = (b - a) / (4 * p.degree + 4)
    while p(b) == 0:
        b -= step
        step /= 2
    chain = _sturm_chain(p)

    def var(x: Fraction) -> int:
        return _variations(chain, x)

    out: list[Ival] = []
    work = [(a, b, var(a), var(b))]
    while work:
        x0, x1, v0, v1 = work.pop()
        n = v0 - v1
        if n == 0:
            continue
        if n == 1:
            out.append((x0, x1))
            continue
        mid = (x0 + x1) / 2
        if p(mid) == 0:
            # shift the split point; a squarefree poly has finitely many roots
            delta = (x1 - x0) / (8 * p.degree + 9)
            while p(mid) == 0:
                mid += delta
                delta /= 2
        vm = var(mid)
        work.append((x0, mid, v0, vm))
        work.append((mid, x1, vm, v1))
    if max_width is not None:
        # one root of odd multiplicity per interval => endpoint signs differ
        out = [AlgebraicReal(p, iv).refine(Fraction(max_width)) for iv in out]
    out.sort()
    return out


# ---------------------------------------------------------------------------
# algebraic real numbers


class AlgebraicReal:
    """A real algebraic number: defining polynomial + isolating interval."""

    __slots__ = ("defining", "lo", "hi")

    def __init__(self, defining: Poly, interval: Ival):
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if lo > hi:
            raise ValueError("empty isolating interval")
        plo, phi = defining(lo), defining(hi)
        if not (plo * phi < 0 or plo == 0 or phi == 0):
            raise ValueError("interval endpoints do not bracket a root")
        sf = defining.squarefree_part()
        n = count_roots(sf, lo, hi) + (1 if sf(lo) == 0 else 0) + (1 if sf(hi) == 0 else 0)
        if lo == hi:
            n = 1 if defining(lo) == 0 else 0
        if n != 1:
            raise ValueError(f"interval contains {n} roots, expected exactly 1")
        object.__setattr__(self, "defining", defining)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *a):
        raise AttributeError("AlgebraicReal is immutable")

    @property
    def interval(self) -> Ival:
        return (self.lo, self.hi)

    def refine(self, width: Fraction) -> Ival:
        """Shrink the isolating interval to the requested width by bisection.

        Returns a sub-interval of the stored one; an exact rational root
        collapses to a point interval.
        """
        if width <= 0:
            raise ValueError("width must be positive")
        p = self.defining
        lo, hi = self.lo, self.hi
        if p(lo) == 0:
            return (lo, lo)
        if p(hi) == 0:
            return (hi, hi)
        slo = _sign(p(lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = p(mid)
            if v == 0:
                return (mid, mid)
            if _sign(v) == slo:
                lo = mid
            else:
                hi = mid
        return (lo, hi)

    def refined(self, width: Fraction) -> "AlgebraicReal":
        return AlgebraicReal(self.defining, self.refine(width))

    def __repr__(self):
        return f"AlgebraicReal({self.defining.pretty()}, ({self.lo}, {self.hi}))"


# ---------------------------------------------------------------------------
# number fields


def _rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots, by the rational root theorem on a scaled copy."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out x; zero is a root of the original iff constant term was 0
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = set()
    if p.coeffs[0] == 0:
        roots.add(Fraction(0))

    def divisors(n: int) -> list[int]:
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                out.append(n // i)
            i += 1
        return out

    for r in divisors(a0):
        for s in divisors(an):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def is_irreducible(p: Poly) -> bool:
    """Irreducibility over Q for degree <= 4 (rational roots + quadratic-factor
    search via the resolvent cubic).  Degrees above 4 are out of scope."""
    d = p.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if _rational_roots(p):
        return False
    if d in (2, 3):
        return True
    if d > 4:
        raise NotImplementedError("irreducibility test implemented for degree <= 4")
    # depress: x -> x - a3/(4 a4), which preserves reducibility
    a4, a3 = p[4], p[3]
    shift = Poly([-a3 / (4 * a4), 1])
    q_ = p.compose(shift).monic()
    P, Qc, R = q_[2], q_[1], q_[0]
    # resolvent cubic for t^4 + P t^2 + Q t + R = (t^2+ut+v)(t^2-ut+w): U = u^2
    res = Poly([-(Qc * Qc), P * P - 4 * R, 2 * P, 1])
    for U in _rational_roots(res):
        if U == 0:
            # biquadratic-style splits: t^4 + P t^2 + R
            if Qc == 0:
                if _sqrt_fraction(P * P - 4 * R) is not None:
                    return False
                s = _sqrt_fraction(R)
                if s is not None and (
                    _sqrt_fraction(2 * s - P) is not None
                    or _sqrt_fraction(-2 * s - P) is not None
                ):
                    return False
            continue
        if U > 0 and _sqrt_fraction(U) is not None:
            return False  # u rational => v, w rational automatically
    return True


class NumberField:
    """Q[t]/(modulus) with a distinguished real root of the modulus."""

    def __init__(self, modulus: Poly, interval: Ival, check_irreducible: bool = True):
        if modulus.degree < 1:
            raise ValueError("modulus must be nonconstant")
        if check_irreducible and not is_irreducible(modulus):
            raise ValueError("modulus is reducible over Q")
        self.modulus = modulus.monic()
        self.raw_modulus = modulus
        self.degree = modulus.degree
        self.embedding = AlgebraicReal(modulus, interval)

    def const(self, c: Fraction) -> "NFElem":
        return NFElem(self, Poly([c]))

    def zero(self) -> "NFElem":
        return NFElem(self, Poly())

    def one(self) -> "NFElem":
        return self.const(Fraction(1))

    def gen(self) -> "NFElem":
        return NFElem(self, Poly([0, 1]))

    def element(self, coeffs: Iterable) -> "NFElem":
        return NFElem(self, Poly(coeffs))

    def reduce(self, p: Poly) -> "NFElem":
        """Canonical reduction of a rational polynomial in the generator."""
        return NFElem(self, p % self.modulus)

    def __repr__(self):
        return f"NumberField({self.raw_modulus.pretty('t')})"


class NFElem:
    """Element of a NumberField, represented by its reduced polynomial."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Poly):
        if rep.degree >= field.degree:
            rep = rep % field.modulus
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *a):
        raise AttributeError("NFElem is immutable")

    def _const(self, c: Fraction) -> "NFElem":
        return self.field.const(c)

    @staticmethod
    def _coerce(field: NumberField, x) -> "NFElem":
        if isinstance(x, NFElem):
            if x.field is not field:
                raise ValueError("elements of different number fields")
            return x
        if isinstance(x, (int, Fraction)):
            return field.const(Fraction(x))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.rep[0] if not self.rep.is_zero() else Fraction(0)

    def __eq__(self, other) -> bool:
        o = NFElem._coerce(self.field, other)
        if o is NotImplemented:
            return NotImplemented
        return (self.rep - o.rep).is_zero()

    def __hash__(self):
        return hash((id(self.field), self.rep.coeffs))

    def __add__(self, other):
        o = NFElem._coerce(self.field, other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, -self.rep)

    def __sub__(self, other):
        return self + (-NFElem._coerce(self.field, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = NFElem._coerce(self.field, other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, (self.rep * o.rep) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        """Inverse via the extended Euclidean algorithm mod the modulus."""
        if self.is_zero():
            raise ZeroDivisorError("zero divisor")
        r0, r1 = self.field.modulus, self.rep
        s0, s1 = Poly(), Poly([1])
        while not r1.is_zero():
            q, r = r0.divrem(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ZeroDivisorError("zero divisor (non-invertible element)")
        return NFElem(self.field, s0.scale(1 / r0[0]))

    def __truediv__(self, other):
        o = NFElem._coerce(self.field, other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return NFElem._coerce(self.field, other) * self.inverse()

    def __pow__(self, n: int) -> "NFElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def embedding_interval(self, width: Fraction = Fraction(1, 10**12)) -> Ival:
        """Rational enclosure of the element under the field's real embedding."""
        root = self.field.embedding
        w = (root.hi - root.lo) or Fraction(1, 2)
        for _ in range(20000):
            iv = self.rep.eval_interval(root.refine(w))
            if iv[1] - iv[0] <= width:
                return iv
            w /= 16
        raise RuntimeError("embedding refinement did not converge")

    def sign(self) -> int:
        """Sign of the real embedding (exact)."""
        if self.is_zero():
            return 0
        width = Fraction(1, 16)
        while True:
            lo, hi = self.embedding_interval(width)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 256

    def __repr__(self):
        return f"NFElem({self.rep.pretty('t')})"


def nf_reduce(expr: Poly, field: NumberField) -> NFElem:
    """Reduce a polynomial in the field generator to its canonical element."""
    return field.reduce(expr)


def sqrt_in_field(field: NumberField, d: int) -> NFElem:
    """Express sqrt(d) inside a quartic field Q(g), g a root of a depressed
    quartic A t^4 + p2 t^2 + p1 t + p0.

    Works through the resolvent cubic: a rational root U = v^2 d of
    U^3 + 2p U^2 + (p^2 - 4r) U - q^2 recovers the conjugate quadratic
    factorization over Q(sqrt(d)), from which sqrt(d) = -(g^2 + w)/(v g + s).
    The returned element squares to d and has positive real embedding.
    """
    mod = field.raw_modulus
    if mod.degree != 4 or mod[3] != 0:
        raise ValueError("sqrt_in_field requires a depressed quartic modulus")
    lead = mod[4]
    p, q, r = mod[2] / lead, mod[1] / lead, mod[0] / lead
    res = Poly([-(q * q), p * p - 4 * r, 2 * p, 1])
    g = field.gen()
    for U in _rational_roots(res):
        if U <= 0:
            continue
        v = _sqrt_fraction(U / d)
        if v is None:
            continue
        w = (p + U) / 2
        s = -q / (2 * v * d)
        denom = v * g + s
        if denom.is_zero():
            continue
        e = -(g * g + w) / denom
        if e * e == d:
            return e if e.sign() > 0 else -e
    raise ValueError(f"sqrt({d}) is not expressible in {field!r}")


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Rational function num/den over one variable.

    num and den are Polys over a common coefficient scalar type; den is kept
    monic and the pair gcd-reduced, giving a canonical representative.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None, reduce: bool = True):
        if den is None:
            den = Poly([1])
        if not isinstance(num, Poly):
            num = Poly([num]) if num != 0 else Poly()
        if not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisorError("zero divisor")
        num, den = Poly._pair(num, den)
        if reduce and not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading()
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        if num.is_zero():
            den = Poly([1])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    def _const(self, c: Fraction) -> "RatFunc":
        return RatFunc(Poly([c]))

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly([c]))

    @staticmethod
    def var() -> "RatFunc":
        return RatFunc(Poly([0, 1]))

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        if isinstance(x, (int, Fraction, NFElem)):
            return RatFunc(Poly([x]))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisorError("zero divisor")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return (RatFunc(Poly([1])) / self) ** (-n)
        result = RatFunc(Poly([1]))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        den = self.den(x)
        return self.num(x) / den

    def __repr__(self):
        if self.den == Poly([1]):
            return f"RatFunc({self.num.pretty()})"
        return f"RatFunc(({self.num.pretty()}) / ({self.den.pretty()}))"
