"""Truncated bigraded formal series in q and y with exact coefficients.

A QYSeries stores finitely many terms coeff * q^a y^b with rational
exponents a, b.  The truncation bound qmax is a hard contract: terms
with a > qmax are never represented, and every operation documents the
bound of its output.  All q-exponents share a denominator dividing the
declared modulus qden.  Coefficients are Cyclotomic scalars or, for
equivariant localization data, RationalFunctionT values; the two kinds
may be mixed and are promoted on demand.

Series with negative q support must declare a floor; multiplication of
floored series truncates at min(a.qmax + b.floor, b.qmax + a.floor),
which is the largest bound at which every retained coefficient is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from .ratfunc import RationalFunctionT
from .scalars import Cyclotomic, Rat, lcm, rat


def _is_zero(c) -> bool:
    return c.is_zero()


def _coerce_pair(a, b):
    if isinstance(a, RationalFunctionT) or isinstance(b, RationalFunctionT):
        return RationalFunctionT._coerce(a), RationalFunctionT._coerce(b)
    return a, b


def _cadd(a, b):
    a, b = _coerce_pair(a, b)
    return a + b


def _cmul(a, b):
    a, b = _coerce_pair(a, b)
    return a * b


class QYSeries:
    """Immutable truncated series; see module docstring."""

    __slots__ = ("qmax", "qden", "floor", "terms")

    def __init__(self, qmax, terms: Iterable | dict = (), qden: int = 1,
                 floor=0):
        qmax = rat(qmax)
        floor = rat(floor)
        clean: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (qe, ye), c in items:
            qe, ye = rat(qe), rat(ye)
            if qe > qmax:
                raise ValueError(f"term q^{qe} exceeds the bound q^{qmax}")
            if qe < floor:
                raise ValueError(
                    f"term q^{qe} below the declared floor {floor}; "
                    "negative q support requires an explicit floor")
            if (qe * qden).denominator != 1:
                raise ValueError(f"q-exponent {qe} not on the 1/{qden} lattice")
            if _is_zero(c):
                continue
            key = (qe, ye)
            prev = clean.get(key)
            c = c if prev is None else _cadd(prev, c)
            if _is_zero(c):
                clean.pop(key, None)
            else:
                clean[key] = c
        object.__setattr__(self, "qmax", qmax)
        object.__setattr__(self, "qden", int(qden))
        object.__setattr__(self, "floor", floor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("QYSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, qmax, qden: int = 1) -> "QYSeries":
        return cls(qmax, (), qden)

    @classmethod
    def one(cls, qmax, qden: int = 1) -> "QYSeries":
        return cls(qmax, [((rat(0), rat(0)), Cyclotomic.one())], qden)

    @classmethod
    def monomial(cls, coeff, qexp, yexp, qmax, qden: int = 1) -> "QYSeries":
        return cls(qmax, [((rat(qexp), rat(yexp)), coeff)], qden)

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "QYSeries") -> "QYSeries":
        qmax = min(self.qmax, other.qmax)
        qden = lcm(self.qden, other.qden)
        floor = min(self.floor, other.floor)
        out = {k: c for k, c in self.terms.items() if k[0] <= qmax}
        for k, c in other.terms.items():
            if k[0] > qmax:
                continue
            prev = out.get(k)
            c = c if prev is None else _cadd(prev, c)
            if _is_zero(c):
                out.pop(k, None)
            else:
                out[k] = c
        return QYSeries(qmax, out, qden, floor)

    def __neg__(self):
        return QYSeries(self.qmax, {k: -c for k, c in self.terms.items()},
                        self.qden, self.floor)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QYSeries") -> "QYSeries":
        qmax = min(self.qmax + other.floor, other.qmax + self.floor)
        qden = lcm(self.qden, other.qden)
        floor = self.floor + other.floor
        out: dict = {}
        for (qa, ya), ca in self.terms.items():
            for (qb, yb), cb in other.terms.items():
                qe = qa + qb
                if qe > qmax:
                    continue
                key = (qe, ya + yb)
                p = _cmul(ca, cb)
                prev = out.get(key)
                p = p if prev is None else _cadd(prev, p)
                if _is_zero(p):
                    out.pop(key, None)
                else:
                    out[key] = p
        return QYSeries(qmax, out, qden, floor)

    def scale(self, c) -> "QYSeries":
        return QYSeries(self.qmax,
                        {k: _cmul(v, c) for k, v in self.terms.items()},
                        self.qden, self.floor)

    def shift_y(self, dy) -> "QYSeries":
        dy = rat(dy)
        return QYSeries(self.qmax,
                        {(q, y + dy): c for (q, y), c in self.terms.items()},
                        self.qden, self.floor)

    def truncate(self, qmax) -> "QYSeries":
        qmax = rat(qmax)
        if qmax > self.qmax:
            raise ValueError("cannot extend a truncated series")
        return QYSeries(qmax,
                        {k: c for k, c in self.terms.items() if k[0] <= qmax},
                        self.qden, self.floor)

    def with_qden(self, qden: int) -> "QYSeries":
        return QYSeries(self.qmax, self.terms, lcm(self.qden, qden), self.floor)

    def map_coefficients(self, fn: Callable) -> "QYSeries":
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not _is_zero(v):
                out[k] = v
        return QYSeries(self.qmax, out, self.qden, self.floor)

    # -- queries ----------------------------------------------------------

    def coefficient(self, qexp, yexp):
        c = self.terms.get((rat(qexp), rat(yexp)))
        if c is None:
            return Cyclotomic.zero()
        return c

    def q_slice(self, qexp) -> dict:
        """{y_exponent: coeff} at a fixed power of q."""
        qexp = rat(qexp)
        return {y: c for (q, y), c in self.terms.items() if q == qexp}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def __eq__(self, other):
        if not isinstance(other, QYSeries):
            return NotImplemented
        if self.qmax != other.qmax:
            return False
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a, b = _coerce_pair(self.terms.get(k, Cyclotomic.zero()),
                                other.terms.get(k, Cyclotomic.zero()))
            if not (a - b).is_zero():
                return False
        return True

    __hash__ = None

    def __repr__(self):
        return f"QYSeries(qmax={self.qmax}, {series_report(self)})"


# ---------------------------------------------------------------------------
# infinite-product expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductFactor:
    """One factor (1 +- scale * q^qexp y^yexp)^(+-rank) of a graded product.

    kind "exterior" expands (1 + s q^a y^b)^rank, kind "symmetric"
    expands (1 - s q^a y^b)^(-rank); the symmetric kind requires a > 0.
    """

    kind: str
    qexp: object
    yexp: object
    scale: object = 1
    rank: int = 1


def product_expand(factors: Iterable[ProductFactor], qmax, qden: int | None = None) -> "QYSeries":
    """Expand a finite list of exterior/symmetric factors, truncated at qmax."""
    qmax = rat(qmax)
    factors = list(factors)
    if qden is None:
        qden = 1
        for f in factors:
            qden = lcm(qden, int(rat(f.qexp).denominator))
    out = QYSeries.one(qmax, qden)
    for f in factors:
        if f.kind not in ("exterior", "symmetric"):
            raise ValueError(f"unknown factor kind {f.kind!r}")
        if f.rank < 1:
            raise ValueError("factor rank must be >= 1")
        a, b = rat(f.qexp), rat(f.yexp)
        s = f.scale
        if not isinstance(s, (Cyclotomic, RationalFunctionT)):
            s = Cyclotomic.from_rat(rat(s))
        terms = {}
        if f.kind == "exterior":
            jmax = f.rank
        else:
            if a <= 0:
                raise ValueError(
                    f"symmetric factor with q-exponent {a} <= 0 diverges")
            jmax = None
        j = 0
        while True:
            if jmax is not None and j > jmax:
                break
            if a > 0 and j * a > qmax:
                break
            if a == 0 and jmax is None:
                raise AssertionError("unreachable: symmetric requires a > 0")
            if f.kind == "exterior":
                coeff = comb(f.rank, j)
            else:
                coeff = comb(j + f.rank - 1, f.rank - 1)
            c = s ** j * coeff if j else (Cyclotomic.one() * coeff)
            terms[(j * a, j * b)] = c
            j += 1
            if a == 0 and jmax is not None and j > jmax:
                break
        out = out * QYSeries(qmax, terms, qden)
    return out


# ---------------------------------------------------------------------------
# canonical rendering
# ---------------------------------------------------------------------------


def _coeff_json(c):
    if isinstance(c, RationalFunctionT):
        const = c.is_constant()
        if const is None:
            raise ValueError("cannot render a t-dependent coefficient")
        c = const
    return c.to_json()


def series_to_json(s: QYSeries) -> dict:
    return {
        "qden": s.qden,
        "terms": [{"q": str(q), "y": str(y), "coeff": _coeff_json(c)}
                  for (q, y), c in s.sorted_terms()],
    }


def series_report(s: QYSeries) -> str:
    """Deterministic one-line text rendering, terms sorted by (q, y)."""
    if not s.terms:
        return "0"
    parts = []
    for (q, y), c in s.sorted_terms():
        if isinstance(c, RationalFunctionT):
            const = c.is_constant()
            cs = str(const) if const is not None else repr(c)
        else:
            cs = str(c)
        mono = []
        if q != 0:
            mono.append(f"q^{q}" if q != 1 else "q")
        if y != 0:
            mono.append(f"y^{y}" if y != 1 else "y")
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append("*".join(mono))
        elif cs == "-1":
            parts.append("-" + "*".join(mono))
        else:
            parts.append(f"({cs})*" + "*".join(mono))
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


def series_from_json(data: dict) -> QYSeries:
    qden = int(data.get("qden", 1))
    terms = []
    qmax = rat(0)
    for t in data["terms"]:
        q = rat(t["q"])
        qmax = max(qmax, q)
        coeff = t["coeff"]
        if isinstance(coeff, dict):
            c = Cyclotomic(int(coeff["order"]),
                           [rat(x) for x in coeff["coeffs"]])
        else:
            c = Cyclotomic.from_rat(rat(coeff))
        terms.append(((q, rat(t["y"])), c))
    return QYSeries(data.get("qmax", qmax), terms, qden)
