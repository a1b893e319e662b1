"""Rational functions in the auxiliary torus variable t.

Numerator and denominator are finite Laurent polynomials in t with
cyclotomic coefficients, stored as {int exponent: Cyclotomic} maps.
No gcd reduction is attempted; equality goes by cross-multiplication.
Fixed-point sums are reduced with ``as_laurent`` (exact division), which
decides whether the rational function is in fact a Laurent polynomial -
the built-in consistency check on localization data.
"""

from __future__ import annotations

from .scalars import Cyclotomic, Rat, rat

LaurentT = dict  # {int: Cyclotomic}, zero coefficients never stored


def _lp_clean(p: LaurentT) -> LaurentT:
    return {e: c for e, c in p.items() if not c.is_zero()}


def lp_scalar(c) -> LaurentT:
    c = c if isinstance(c, Cyclotomic) else Cyclotomic.from_rat(rat(c))
    return {} if c.is_zero() else {0: c}


def lp_monomial(c: Cyclotomic, w: int) -> LaurentT:
    return {} if c.is_zero() else {w: c}


def lp_add(a: LaurentT, b: LaurentT) -> LaurentT:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        out[e] = c if s is None else s + c
    return _lp_clean(out)


def lp_neg(a: LaurentT) -> LaurentT:
    return {e: -c for e, c in a.items()}


def lp_mul(a: LaurentT, b: LaurentT) -> LaurentT:
    out: LaurentT = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e)
            p = ca * cb
            out[e] = p if s is None else s + p
    return _lp_clean(out)


def lp_divmod(num: LaurentT, den: LaurentT) -> tuple[LaurentT, LaurentT]:
    """Long division after shifting both to ordinary polynomials."""
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return {}, {}
    shift = min(min(num), min(den))
    n = {e - shift + 0: c for e, c in num.items()}
    d = {e - shift: c for e, c in den.items()}
    dshift = min(d)
    d = {e - dshift: c for e, c in d.items()}
    n = {e: c for e, c in n.items()}
    # now d has min exponent 0; divide n by d as polynomials in t
    dd = max(d)
    lead_inv = d[dd].inverse()
    rem = dict(n)
    quot: LaurentT = {}
    while rem and max(rem) >= dd:
        e = max(rem)
        q = rem[e] * lead_inv
        quot[e - dd] = q
        for ed, cd in d.items():
            k = e - dd + ed
            s = rem.get(k)
            v = (s if s is not None else Cyclotomic.zero()) - q * cd
            if v.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = v
    # num = t^shift * n, den = t^{shift+dshift} * d, so num/den = (n/d) * t^{-dshift}
    quot = {e - dshift: c for e, c in quot.items()}
    rem = {e + shift: c for e, c in rem.items()}
    return _lp_clean(quot), _lp_clean(rem)


def lp_eval_one(a: LaurentT) -> Cyclotomic:
    """Evaluate at t = 1."""
    out = Cyclotomic.zero()
    for c in a.values():
        out = out + c
    return out


def lp_str(a: LaurentT) -> str:
    if not a:
        return "0"
    return " + ".join(f"({a[e]})*t^{e}" if e else f"({a[e]})"
                      for e in sorted(a))


class RationalFunctionT:
    """Exact fraction of Laurent polynomials in t."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentT, den: LaurentT | None = None):
        den = {0: Cyclotomic.one()} if den is None else den
        if not den:
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "num", _lp_clean(num))
        object.__setattr__(self, "den", _lp_clean(den))

    def __setattr__(self, *a):
        raise AttributeError("RationalFunctionT is immutable")

    @classmethod
    def from_scalar(cls, c) -> "RationalFunctionT":
        return cls(lp_scalar(c))

    @classmethod
    def monomial(cls, c, w: int) -> "RationalFunctionT":
        c = c if isinstance(c, Cyclotomic) else Cyclotomic.from_rat(rat(c))
        return cls(lp_monomial(c, w))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunctionT(lp_add(self.num, other.num), self.den)
        return RationalFunctionT(
            lp_add(lp_mul(self.num, other.den), lp_mul(other.num, self.den)),
            lp_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionT(lp_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunctionT(lp_mul(self.num, other.num),
                                 lp_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunctionT":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunctionT(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunctionT.from_scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        return lp_add(lp_mul(self.num, other.den),
                      lp_neg(lp_mul(other.num, self.den))) == {}

    __hash__ = None

    @staticmethod
    def _coerce(x) -> "RationalFunctionT":
        if isinstance(x, RationalFunctionT):
            return x
        return RationalFunctionT.from_scalar(x)

    def is_constant(self) -> Cyclotomic | None:
        """The t-independent value if the reduced function is constant."""
        if not self.num:
            return Cyclotomic.zero()
        e0 = min(self.den)
        c0 = self.num.get(e0)
        if c0 is None:
            return None
        cand = c0 * self.den[e0].inverse()
        scaled = {e: c * cand for e, c in self.den.items()}
        return cand if scaled == self.num else None

    def as_laurent(self) -> LaurentT | None:
        """The function as a Laurent polynomial if the division is exact."""
        q, r = lp_divmod(self.num, self.den)
        return q if not r else None

    def __repr__(self):
        return f"RationalFunctionT(({lp_str(self.num)}) / ({lp_str(self.den)}))"
