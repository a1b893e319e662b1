"""Exact scalar arithmetic: rationals and cyclotomic numbers.

Everything in this package is computed exactly.  ``Rat`` is gmpy2's mpq
when available (noticeably faster in the mode-arithmetic inner loops)
and ``fractions.Fraction`` otherwise; both print as ``p/q`` and expose
``numerator``/``denominator``.

A cyclotomic number of order R is a rational linear combination of the
R-th roots of unity z^k, z = exp(2*pi*i/R).  It is stored as a length-R
coefficient vector on 1, z, ..., z^{R-1}, reduced to the canonical
representative of degree < phi(R) modulo the R-th cyclotomic polynomial
Phi_R (zeros are padded above phi(R)).  Phi_R is obtained from the
elementary recursion Phi_R = (x^R - 1) / prod_{d|R, d<R} Phi_d, so no
factorisation machinery is involved.  With this canonical form, two
representations of the same field element reduce to the same vector,
equality is literal, and every nonzero element has an inverse (by the
extended Euclidean algorithm against Phi_R).
"""

from __future__ import annotations

from typing import Iterable, Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 present in normal installs
    from fractions import Fraction as Rat

RatLike = Union[int, str, "Rat"]

ZERO = Rat(0)
ONE = Rat(1)


def rat(x: RatLike, y: int | None = None) -> Rat:
    """Coerce ints, 'p/q' strings or rationals to Rat."""
    if y is not None:
        return Rat(x) / Rat(y)
    if isinstance(x, Rat):
        return x
    if isinstance(x, str):
        return Rat(x.strip())
    return Rat(x)


def lcm(a: int, b: int) -> int:
    import math

    return a * b // math.gcd(a, b)


def rat_str(x: Rat) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# dense rational polynomials (internal helpers for the cyclotomic field)
# ---------------------------------------------------------------------------


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb != 0:
                out[i + j] += ca * cb
    return _poly_trim(out)


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [ZERO] * max(0, len(num) - dden)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q = c / lead
        quot[i - dden] = q
        for j, cd in enumerate(den):
            num[i - dden + j] -= q * cd
    return _poly_trim(quot), _poly_trim(num)


_CYCLO_CACHE: dict[int, tuple] = {}


def cyclotomic_polynomial(R: int) -> tuple:
    """Coefficients of Phi_R, low degree first."""
    if R in _CYCLO_CACHE:
        return _CYCLO_CACHE[R]
    p = [-ONE] + [ZERO] * (R - 1) + [ONE]  # x^R - 1
    for d in range(1, R):
        if R % d == 0:
            q, r = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            assert not r, "cyclotomic recursion must divide exactly"
            p = q
    _CYCLO_CACHE[R] = tuple(p)
    return _CYCLO_CACHE[R]


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO)
           for i in range(n)]
    return _poly_trim(out)


def _xgcd_poly(a: list, b: list) -> tuple[list, list]:
    """s, g with s*a = g mod b; g is a nonzero constant for coprime input."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ONE], []
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    return s0, r0


class Cyclotomic:
    """An element of the cyclotomic field Q(zeta_R).

    Instances are immutable.  Arithmetic between different orders
    promotes both operands to the lcm order.  Rationals embed as the
    coefficient of z^0; ``as_rational()`` recovers them.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable, _reduced: bool = False):
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        vec = [ZERO] * order
        for k, c in enumerate(coeffs):
            if c != 0:
                vec[k % order] += rat(c)
        if not _reduced and order > 1:
            q, r = _poly_divmod(vec, list(cyclotomic_polynomial(order)))
            vec = list(r) + [ZERO] * (order - len(r))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(vec))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rat(cls, x: RatLike, order: int = 1) -> "Cyclotomic":
        v = [ZERO] * order
        v[0] = rat(x)
        return cls(order, v, _reduced=True)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rat(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rat(1, order)

    @classmethod
    def root(cls, order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order^k."""
        v = [ZERO] * order
        v[k % order] = ONE
        return cls(order, v)

    @classmethod
    def from_exponent(cls, e: Rat, order: int | None = None) -> "Cyclotomic":
        """exp(2*pi*i*e) for rational e, embedded at `order` (default: den(e))."""
        e = rat(e)
        den = int(e.denominator)
        if order is None:
            order = den
        if order % den != 0:
            raise ValueError(f"exponent {e} does not live at order {order}")
        return cls.root(order, int(e.numerator) * (order // den))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational(self) -> Rat | None:
        """The value as a Rat if the element is rational, else None."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def promote(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError("can only promote to a multiple order")
        step = order // self.order
        v = [ZERO] * order
        for k, c in enumerate(self.coeffs):
            if c != 0:
                v[k * step] = c
        return Cyclotomic(order, v)

    @staticmethod
    def _common(a: "Cyclotomic", b) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(b, Cyclotomic):
            b = Cyclotomic.from_rat(rat(b))
        R = lcm(a.order, b.order)
        return a.promote(R), b.promote(R)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        a, b = self._common(self, other)
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)],
                          _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-c for c in self.coeffs], _reduced=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else Cyclotomic.from_rat(-rat(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            c = rat(other)
            return Cyclotomic(self.order, [x * c for x in self.coeffs],
                              _reduced=True)
        a, b = self._common(self, other)
        R = a.order
        out = [ZERO] * R
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                if cb != 0:
                    out[(i + j) % R] += ca * cb
        return Cyclotomic(R, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Cyclotomic":
        r = self.as_rational()
        if r is not None:
            if r == 0:
                raise ZeroDivisionError("inverse of zero cyclotomic")
            return Cyclotomic.from_rat(ONE / r, self.order)
        a = _poly_trim(list(self.coeffs))
        s, g = _xgcd_poly(a, list(cyclotomic_polynomial(self.order)))
        if len(g) != 1:
            raise ZeroDivisionError("element is not invertible")  # cannot happen in a field
        inv = [c / g[0] for c in s]
        return Cyclotomic(self.order, inv + [ZERO] * (self.order - len(inv)))

    def __truediv__(self, other):
        if isinstance(other, (int, Rat)):
            return self * (ONE / rat(other))
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Rat)):
            return self.as_rational() == rat(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # orders are not normalised, so hashing would be unsound

    def __repr__(self):
        r = self.as_rational()
        if r is not None:
            return f"Cyclotomic({r})"
        return f"Cyclotomic(order={self.order}, {list(map(str, self.coeffs))})"

    def __str__(self):
        r = self.as_rational()
        if r is not None:
            return str(r)
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.order}^{k}")
            else:
                parts.append(f"({c})*z{self.order}^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        r = self.as_rational()
        if r is not None:
            return str(r)
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}
