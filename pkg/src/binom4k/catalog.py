"""Declarative catalog of the series identities under verification.

Every displayed "series = closed form" identity of the source collection is
encoded exactly as printed (start index, channel polynomials, denominator
factors, weights), one entry per identity; multi-component entries encode
the equivalence combinations of lemma 5.1.  Each entry carries a provenance
anchor naming where it came from.

Two encodings deviate from the printed text, both confirmed numerically to
50+ digits before being frozen here (the printed variants fail):

* lem5.1-m256: the printed statement carries "+36/5" on the G_4 component;
  the proof (and the truth) uses -36/5.
* sec4-abel-Hk-32's non-harmonic channel is 48(3k+1)(3k+2) as printed; note
  its middle coefficient 432 (the companion of entry sec4-abel-Hk-31).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .balls import Ball, const_log, const_pi, const_sqrt
from .series import DENOM_FACTORS, SeriesSpec, SpecError


class CatalogError(ValueError):
    """Malformed catalog text or an entry violating a spec invariant."""


# ---------------------------------------------------------------------------
# closed-form right-hand sides


@dataclass(frozen=True)
class ClosedForm:
    """Expression tree over {rationals, pi, log q, sqrt n} and + - * /."""

    node: str
    value: object = None
    args: tuple = ()

    def __post_init__(self):
        if self.node not in ("rat", "pi", "log", "sqrt", "add", "sub", "mul", "div"):
            raise CatalogError(f"unknown node tag {self.node!r}")
        if self.node == "div" and _is_zero_tree(self.args[1]):
            raise CatalogError("division by an identically-zero subtree")

    # operator sugar; ints/Fractions lift to rat leaves
    def __add__(self, other):
        return ClosedForm("add", args=(self, _lift(other)))

    def __radd__(self, other):
        return ClosedForm("add", args=(_lift(other), self))

    def __sub__(self, other):
        return ClosedForm("sub", args=(self, _lift(other)))

    def __rsub__(self, other):
        return ClosedForm("sub", args=(_lift(other), self))

    def __mul__(self, other):
        return ClosedForm("mul", args=(self, _lift(other)))

    def __rmul__(self, other):
        return ClosedForm("mul", args=(_lift(other), self))

    def __truediv__(self, other):
        return ClosedForm("div", args=(self, _lift(other)))

    def __rtruediv__(self, other):
        return ClosedForm("div", args=(_lift(other), self))

    def __neg__(self):
        return ClosedForm("sub", args=(_lift(0), self))

    def eval(self, prec: int) -> Ball:
        """Rigorous enclosure at the given working precision (bits)."""
        if self.node == "rat":
            return Ball.exact(self.value, prec)
        if self.node == "pi":
            return const_pi(prec)
        if self.node == "log":
            return const_log(self.value, prec)
        if self.node == "sqrt":
            return const_sqrt(self.value, prec)
        a = self.args[0].eval(prec)
        b = self.args[1].eval(prec)
        if self.node == "add":
            return a + b
        if self.node == "sub":
            return a - b
        if self.node == "mul":
            return a * b
        return a / b  # div; Ball raises if 0 is inside the divisor

    def render(self) -> str:
        if self.node == "rat":
            return str(self.value)
        if self.node == "pi":
            return "pi"
        if self.node == "log":
            return f"log({self.value})"
        if self.node == "sqrt":
            return f"sqrt({self.value})"
        a, b = (x.render() for x in self.args)
        op = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[self.node]
        return f"({a} {op} {b})"

    def to_json(self) -> dict:
        if self.node == "rat":
            return {"node": "rat", "value": _frac_str(self.value)}
        if self.node == "pi":
            return {"node": "pi"}
        if self.node == "log":
            return {"node": "log", "q": _frac_str(self.value)}
        if self.node == "sqrt":
            return {"node": "sqrt", "n": self.value}
        return {"node": self.node,
                "lhs": self.args[0].to_json(), "rhs": self.args[1].to_json()}

    @staticmethod
    def from_json(obj: dict, where: str = "rhs") -> "ClosedForm":
        if not isinstance(obj, dict) or "node" not in obj:
            raise CatalogError(f"{where}: expected an expression object")
        node = obj["node"]
        if node == "rat":
            return rat(_parse_frac(obj.get("value"), where))
        if node == "pi":
            return pi()
        if node == "log":
            return log(_parse_frac(obj.get("q"), where))
        if node == "sqrt":
            n = obj.get("n")
            if not isinstance(n, int):
                raise CatalogError(f"{where}: sqrt needs an integer n")
            return sqrt(n)
        if node in ("add", "sub", "mul", "div"):
            return ClosedForm(node, args=(
                ClosedForm.from_json(obj.get("lhs"), where + ".lhs"),
                ClosedForm.from_json(obj.get("rhs"), where + ".rhs"),
            ))
        raise CatalogError(f"{where}: unknown node tag {node!r}")


def _is_zero_tree(cf: "ClosedForm") -> bool:
    if cf.node == "rat":
        return cf.value == 0
    if cf.node == "mul":
        return any(_is_zero_tree(a) for a in cf.args)
    if cf.node in ("add", "sub"):
        return all(_is_zero_tree(a) for a in cf.args)
    if cf.node == "div":
        return _is_zero_tree(cf.args[0])
    return False


def _lift(x) -> ClosedForm:
    if isinstance(x, ClosedForm):
        return x
    return rat(x)


def rat(q) -> ClosedForm:
    return ClosedForm("rat", value=Fraction(q))


def pi() -> ClosedForm:
    return ClosedForm("pi")


def log(q) -> ClosedForm:
    q = Fraction(q)
    if q <= 0:
        raise CatalogError("log leaf needs a positive rational")
    return ClosedForm("log", value=q)


def sqrt(n: int) -> ClosedForm:
    if n <= 0:
        raise CatalogError("sqrt leaf needs a positive integer")
    return ClosedForm("sqrt", value=n)


def eval_closed_form(cf: ClosedForm, digits: int = 50) -> Ball:
    """Enclosure with radius <= 10^-digits (precision escalates as needed)."""
    target = Fraction(1, 10**digits)
    prec = int(digits * 3.33) + 32
    for _ in range(8):
        b = cf.eval(prec)
        if b.radius() <= target:
            return b
        prec *= 2
    raise ArithmeticError("closed-form radius target unreachable")


# ---------------------------------------------------------------------------
# identity entries


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    provenance: str
    components: tuple  # of (Fraction weight, SeriesSpec)
    rhs: ClosedForm

    def __post_init__(self):
        if not self.components:
            raise CatalogError(f"{self.id}: empty component list")


def _spec(x, channels, den=(), start=0, bp=1) -> SeriesSpec:
    return SeriesSpec(
        x=Fraction(x),
        binomial_power=bp,
        start=start,
        channels={j: tuple(Fraction(c) for c in cs) for j, cs in channels.items()},
        denominator_factors=tuple(den),
    )


def _hk(q: list, r0: list) -> dict:
    """Channels for Q(k)*H(k) + R0(k), where H(k) = 2H_{4k} - 3H_{2k} + H_k."""
    return {
        4: [2 * Fraction(c) for c in q],
        2: [-3 * Fraction(c) for c in q],
        1: [Fraction(c) for c in q],
        0: r0,
    }


_F = Fraction
_KP = [0, 11, -92, 22]      # k * (22k^2 - 92k + 11)
_KQ = [0, 1, 8, 11]         # k * (11k^2 + 8k + 1)
_Q2 = [1, 8, 11]            # 11k^2 + 8k + 1


def builtin_catalog() -> list[IdentityEntry]:
    """Every displayed series identity, in source order."""
    E = IdentityEntry
    entries = [
        E("eq-1.1", "intro (1.1)",
          ((_F(1), _spec(_F(1, 16), {0: [11, -92, 22]})),), rat(-5)),
        E("eq-1.2", "intro (1.2)",
          ((_F(1), _spec(_F(1, 16), {0: [-2, 17, 22]}, den=("k+1",))),), rat(17)),
        E("eq-1.3", "intro (1.3)",
          ((_F(1), _spec(_F(1, 16), {0: _Q2}, den=("3k+1", "3k+2"))),), rat(1)),
        E("eq-1.4", "intro (1.4)",
          ((_F(1), _spec(_F(1, 16), {0: [3, -18, 22]}, den=("2k-1", "4k-1", "4k-3"))),),
          rat(_F(-1, 3))),
        E("intro-recip-pi", "intro, first reciprocal series",
          ((_F(1), _spec(8, {0: [1, -4, 5]}, den=("k", "3k-1", "3k-2"), start=1, bp=-1)),),
          rat(_F(3, 2)) * pi()),
        E("intro-recip-log2", "intro, second reciprocal series",
          ((_F(1), _spec(_F(-1, 8), {0: [62, -343, 415]}, den=("k", "3k-1", "3k-2"),
                         start=1, bp=-1)),),
          rat(-3) * log(2)),
        E("thm1.1-Hk", "thm 1.1 (H_k)",
          ((_F(1), _spec(_F(1, 16), {1: _KP, 0: [_F(-10, 3), 108, -54]}, den=("k",), start=1)),),
          rat(_F(-20, 3)) * log(2)),
        E("thm1.1-H2k", "thm 1.1 (H_2k)",
          ((_F(1), _spec(_F(1, 16), {2: _KP, 0: [_F(-25, 6), -115, 287]}, den=("k",), start=1)),),
          rat(214) - rat(_F(40, 3)) * log(2)),
        E("thm1.1-H3k", "thm 1.1 (H_3k)",
          ((_F(1), _spec(_F(1, 16), {3: _KP, 0: [_F(-25, 3), 178, -296]}, den=("k",), start=1)),),
          rat(-196) - rat(_F(80, 3)) * log(2)),
        E("thm1.1-H4k", "thm 1.1 (H_4k)",
          ((_F(1), _spec(_F(1, 16), {4: _KP, 0: [_F(-85, 12), _F(275, 2), _F(-449, 2)]},
                         den=("k",), start=1)),),
          rat(-151) - rat(_F(80, 3)) * log(2)),
        E("thm1.2-Hk", "thm 1.2, first",
          ((_F(1), _spec(_F(1, 16), {1: _KQ, 0: [_F(4, 3), 6, 6]},
                         den=("k", "3k+1", "3k+2"), start=1)),),
          rat(_F(4, 3)) * log(2)),
        E("thm1.2-H2k-Hk", "thm 1.2, second",
          ((_F(1), _spec(_F(1, 16),
                         {2: _Q2, 1: [_F(-5, 4) * c for c in _Q2], 0: [1, 4]},
                         den=("3k+1", "3k+2"))),),
          log(2)),
        E("thm1.2-H4k-H2k", "thm 1.2, third",
          ((_F(1), _spec(_F(1, 16),
                         {4: [10 * c for c in _Q2], 2: [-17 * c for c in _Q2], 0: [18, 2]},
                         den=("3k+1", "3k+2"))),),
          rat(8) * log(2)),
        E("thm1.3-m256", "thm 1.3 (x=-1/256)",
          ((_F(1), _spec(_F(-1, 256), _hk([1, -86, 224], [5, 182]))),),
          (rat(9) - rat(5) * log(2)) / (rat(4) * sqrt(2))),
        E("thm1.3-m256-32", "thm 1.3 (x=-1/256, 3k+1 3k+2)",
          ((_F(1), _spec(_F(-1, 256), _hk([23, 110, 112], [16, 28]),
                         den=("3k+1", "3k+2"))),),
          rat(8) * sqrt(2) * log(2)),
        E("thm1.3-128", "thm 1.3 (x=1/128)",
          ((_F(1), _spec(_F(1, 128), _hk([-17, 76, 200], [392, -5800]))),),
          sqrt(2) * (rat(144) + rat(5) * log(2))),
        E("thm1.3-128-32", "thm 1.3 (x=1/128, 3k+1 3k+2)",
          ((_F(1), _spec(_F(1, 128), _hk([11, 44, 40], [-8, -8]),
                         den=("3k+1", "3k+2"))),),
          rat(-4) * sqrt(2) * log(2)),
        E("thm1.3-m72", "thm 1.3 (x=-1/72)",
          ((_F(1), _spec(_F(-1, 72), _hk([67, -1026, 3575],
                                         [_F(2904, 13), _F(42350, 13)]))),),
          sqrt(3) * (rat(_F(216, 13)) - rat(15) * log(3))),
        E("thm1.3-m72-32", "thm 1.3 (x=-1/72, 3k+1 3k+2)",
          ((_F(1), _spec(_F(-1, 72), _hk([11, 54, 55], [12, 22]),
                         den=("3k+1", "3k+2"))),),
          rat(3) * sqrt(3) * log(3)),
        E("thm1.3-m25", "thm 1.3 (x=-1/25)",
          ((_F(1), _spec(_F(-1, 25), _hk([1036, -1409, 21413],
                                         [_F(69280, 23), _F(472948, 23)]))),),
          sqrt(5) * (rat(_F(1440, 23)) - rat(100) * log(5))),
        E("thm1.3-m25-32", "thm 1.3 (x=-1/25, 3k+1 3k+2)",
          ((_F(1), _spec(_F(-1, 25), _hk([26, 131, 133], [40, 76]),
                         den=("3k+1", "3k+2"))),),
          rat(5) * sqrt(5) * log(5)),
        E("thm1.3-24", "thm 1.3 (x=1/24)",
          ((_F(1), _spec(_F(1, 24), _hk([21, -146, 49], [1160, -3038]))),),
          sqrt(3) * (rat(216) - rat(5) * log(3))),
        E("thm1.3-24-32", "thm 1.3 (x=1/24, 3k+1 3k+2)",
          ((_F(1), _spec(_F(1, 24), _hk([3, 10, 7], [-4, -2]),
                         den=("3k+1", "3k+2"))),),
          -(sqrt(3) * log(3))),
        E("lem4.3-103", "lemma 4.3, first",
          ((_F(1), _spec(_F(1, 16), {0: [-59, -199, 194, 966, 638]},
                         den=("k+1", "3k+1", "3k+2"), start=1)),),
          rat(_F(103, 2))),
        E("lem4.3-117", "lemma 4.3, second",
          ((_F(1), _spec(_F(1, 16), {0: [-105, -381, 82, 1134, 770]},
                         den=("k+1", "3k+1", "3k+2"), start=1)),),
          rat(_F(117, 2))),
        E("lem4.4", "lemma 4.4",
          ((_F(1), _spec(_F(1, 16), {2: _KQ, 0: [_F(5, 3), _F(17, 2), _F(23, 2)]},
                         den=("k", "3k+1", "3k+2"), start=1)),),
          rat(_F(8, 3)) * log(2) - rat(_F(1, 2))),
        E("lem4.5", "lemma 4.5",
          ((_F(1), _spec(_F(1, 16), {4: _KQ, 0: [_F(17, 6), _F(65, 4), _F(79, 4)]},
                         den=("k", "3k+1", "3k+2"), start=1)),),
          rat(_F(16, 3)) * log(2) - rat(_F(7, 4))),
        E("sec4-abel-Hk-31", "sec 4 Abel instance (H_k, 3k+1)",
          ((_F(1), _spec(_F(1, 16), {1: [24, 224, 384, -176], 0: [-48, 0, 432]},
                         den=("3k+1",), start=1)),),
          rat(0)),
        E("sec4-abel-Hk-32", "sec 4 Abel instance (H_k, 3k+1 3k+2)",
          ((_F(1), _spec(_F(1, 16), {1: [24, 80, -48, -176], 0: [96, 432, 432]},
                         den=("3k+1", "3k+2"), start=1)),),
          rat(0)),
        E("sec5-abel-H-31", "sec 5 Abel instance (H, 3k+1)",
          ((_F(1), _spec(_F(-1, 256), _hk([3, -74, 48, 896], [2]), den=("3k+1",))),),
          rat(0)),
        E("sec5-abel-H-32", "sec 5 Abel instance (H, 3k+1 3k+2)",
          ((_F(1), _spec(_F(-1, 256), _hk([3, 214, 912, 896], [2]),
                         den=("3k+1", "3k+2"))),),
          rat(0)),
    ]
    # lemma 5.1 equivalence combinations; component order: linear-weight
    # series, the G_4 series (3k+1), the (8k+2) series (3k+1)(3k+2)
    for (suffix, x, r0, ws, rhs) in (
        ("m256", _F(-1, 256), [5, 182], (_F(64, 5), _F(-36, 5), _F(-1)),
         rat(_F(72, 5)) * sqrt(2)),
        ("128", _F(1, 128), [-49, 725], (_F(32, 5), _F(-12, 5), _F(1)),
         rat(_F(-576, 5)) * sqrt(2)),
        ("m72", _F(-1, 72), [12, 175], (_F(242, 65), _F(-28, 5), _F(-1)),
         rat(_F(216, 65)) * sqrt(3)),
        ("m25", _F(-1, 25), [17320, 118237], (_F(1, 115), _F(-96, 5), _F(-4)),
         rat(_F(72, 23)) * sqrt(5)),
        ("24", _F(1, 24), [1160, -3038], (_F(1, 5), _F(-4, 5), _F(1)),
         rat(_F(216, 5)) * sqrt(3)),
    ):
        entries.append(E(
            f"lem5.1-{suffix}", f"lemma 5.1 (x={x})",
            (
                (ws[0], _spec(x, {0: r0})),
                (ws[1], _spec(x, {0: [1]}, den=("3k+1",))),
                (ws[2], _spec(x, {0: [2, 8]}, den=("3k+1", "3k+2"))),
            ),
            rhs))
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids)) == CATALOG_SIZE
    return entries


CATALOG_SIZE = 36


def catalog_by_id() -> dict[str, IdentityEntry]:
    return {e.id: e for e in builtin_catalog()}


# ---------------------------------------------------------------------------
# file format


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_frac(s, where: str) -> Fraction:
    if not isinstance(s, str):
        raise CatalogError(f"{where}: rational must be a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"{where}: bad rational {s!r}: {exc}") from None


def serialize_catalog(entries: Iterable[IdentityEntry]) -> str:
    out = {"version": 1, "entries": []}
    for e in entries:
        comps = []
        for (w, spec) in e.components:
            comps.append({
                "weight": _frac_str(w),
                "x": _frac_str(spec.x),
                "binomial_power": spec.binomial_power,
                "start": spec.start,
                "channels": {str(j): [_frac_str(c) for c in cs]
                             for j, cs in sorted(spec.channels.items())},
                "denominator_factors": list(spec.denominator_factors),
            })
        out["entries"].append({
            "id": e.id,
            "provenance": e.provenance,
            "rhs": e.rhs.to_json(),
            "components": comps,
        })
    return json.dumps(out, indent=1)


def parse_component(obj: dict, where: str) -> tuple[Fraction, SeriesSpec]:
    if not isinstance(obj, dict):
        raise CatalogError(f"{where}: component must be an object")
    for key in ("weight", "x", "binomial_power", "start", "channels", "denominator_factors"):
        if key not in obj:
            raise CatalogError(f"{where}: missing field {key!r}")
    weight = _parse_frac(obj["weight"], where + ".weight")
    chans = {}
    if not isinstance(obj["channels"], dict):
        raise CatalogError(f"{where}.channels: must be an object")
    for js, coeffs in obj["channels"].items():
        try:
            j = int(js)
        except ValueError:
            raise CatalogError(f"{where}.channels: bad channel key {js!r}") from None
        if not isinstance(coeffs, list):
            raise CatalogError(f"{where}.channels.{js}: must be a list")
        chans[j] = tuple(_parse_frac(c, f"{where}.channels.{js}") for c in coeffs)
    dens = obj["denominator_factors"]
    if not isinstance(dens, list) or not all(isinstance(d, str) for d in dens):
        raise CatalogError(f"{where}.denominator_factors: must be a list of strings")
    for d in dens:
        if d not in DENOM_FACTORS:
            raise CatalogError(f"{where}.denominator_factors: unknown factor {d!r}")
    try:
        spec = SeriesSpec(
            x=_parse_frac(obj["x"], where + ".x"),
            binomial_power=obj["binomial_power"],
            start=obj["start"],
            channels=chans,
            denominator_factors=tuple(dens),
        )
    except SpecError as exc:
        raise CatalogError(f"{where}: {exc}") from None
    return weight, spec


def parse_catalog(text: str) -> list[IdentityEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or data.get("version") != 1:
        raise CatalogError("top level must be an object with version 1")
    raw = data.get("entries")
    if not isinstance(raw, list):
        raise CatalogError("missing entries list")
    seen: set[str] = set()
    entries = []
    for i, obj in enumerate(raw):
        where = f"entries[{i}]"
        if not isinstance(obj, dict):
            raise CatalogError(f"{where}: must be an object")
        eid = obj.get("id")
        if not isinstance(eid, str) or not eid:
            raise CatalogError(f"{where}: missing id")
        if eid in seen:
            raise CatalogError(f"{where}: duplicate id {eid!r}")
        seen.add(eid)
        prov = obj.get("provenance")
        if not isinstance(prov, str) or not prov:
            raise CatalogError(f"{where} ({eid}): provenance is mandatory")
        comps_raw = obj.get("components")
        if not isinstance(comps_raw, list) or not comps_raw:
            raise CatalogError(f"{where} ({eid}): nonempty components required")
        comps = tuple(parse_component(c, f"{where}.components[{j}]")
                      for j, c in enumerate(comps_raw))
        rhs = ClosedForm.from_json(obj.get("rhs"), f"{where}.rhs")
        entries.append(IdentityEntry(id=eid, provenance=prov, components=comps, rhs=rhs))
    return entries
