"""Orbifold elliptic genus by exact Atiyah-Bott localization.

Each sector component carries, per centralizer element h, a list of
fixed points of the combined (h x auxiliary torus)-action, each fixed
point listing the N eigenvalue lines of the ambient tangent space:
the twist exponent lambda of the line, the h-eigenvalue as a root of
unity exponent, the torus weight w, and whether the line is tangent to
the component.

The fiberwise character of the graded sector bundle multiplies, per
line with combined eigenvalue u = zeta * t^w and twist exponent lambda,
the factors

    (1 + y q^{k-1+lambda} u^{-1}) (1 + y^{-1} q^{k-lambda} u)
    (1 - q^{k-1+lambda} u^{-1})^{-1} (1 - q^{k-lambda} u)^{-1},

k >= 1 (dual lines carry u^{-1}; for lambda = 0 the first exterior
factor starts at q^0).  The holomorphic Lefschetz number of h is the
fixed-point sum of this character divided by prod_tangent
(1 - zeta^{-1} t^{-w}).  Each (q, y)-coefficient of the sum is an exact
rational function of t; for consistent input it reduces to a Laurent
polynomial (this is enforced), whose value at t = 1 is the alternating
trace of h on the bundle cohomology.  Coefficients that are constant in
t stay constant; a torus-dependent polynomial simply records the torus
action on the cohomology and evaluates away exactly.

The genus itself is y^{-N/2} sum_{[g], alpha} y^{iota} (1/|C(g)|)
sum_h L(h, V_{g,alpha}); the second route recomputes it organized by
per-coefficient centralizer averages, which must be integers (virtual
invariant dimensions), and the two routes must agree coefficientwise.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .fock import TwistData
from .orbifold import GroupData, OrbifoldInput, OrbifoldError, SectorComponent
from .ratfunc import RationalFunctionT, lp_eval_one
from .scalars import Cyclotomic, Rat, lcm, rat
from .series import ProductFactor, QYSeries, product_expand


class GenusError(Exception):
    pass


class LocalizationError(GenusError):
    """A fixed-point sum failed to reduce; the input data is inconsistent."""


class ConsistencyError(GenusError):
    """The two evaluation routes disagree; an internal invariant failed."""


@dataclass(frozen=True)
class LineDatum:
    """One eigenvalue line of the tangent space at a fixed point."""

    lam: object          # twist exponent in [0,1), denominator | m_g
    zeta: object         # h-eigenvalue exponent, denominator | ord(h)
    w: int = 0           # auxiliary torus weight
    tangent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lam", rat(self.lam) % 1)
        object.__setattr__(self, "zeta", rat(self.zeta) % 1)
        object.__setattr__(self, "w", int(self.w))
        if self.tangent and self.lam != 0:
            raise GenusError("a tangent line must have twist exponent 0")
        if self.tangent and self.zeta == 0 and self.w == 0:
            raise GenusError(
                "tangent line fixed by h and the torus: fixed points are "
                "not isolated")


@dataclass(frozen=True)
class FixedPointDatum:
    label: str
    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))


@dataclass(frozen=True)
class LocalizationDatum:
    """Fixed-point data of (h x torus) on one sector component."""

    component: str
    h: int
    h_order: int
    twist: TwistData
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        want = sorted(rat(m, self.twist.mg) for m in self.twist.exponents)
        for p in self.points:
            got = sorted(l.lam for l in p.lines)
            if got != want:
                raise GenusError(
                    f"{self.component}/{p.label}: line exponents {got} do not "
                    f"match the twist {self.twist}")
            for l in p.lines:
                if (l.zeta * self.h_order).denominator != 1:
                    raise GenusError(
                        f"{self.component}/{p.label}: eigenvalue exponent "
                        f"{l.zeta} not an order-{self.h_order} root of unity")


def _unit(zeta, w: int, R: int) -> RationalFunctionT:
    return RationalFunctionT.monomial(Cyclotomic.from_exponent(zeta, R), w)


def sector_bundle_character(lines, qmax, R: int, mg: int) -> QYSeries:
    """Fiberwise (h x torus)-trace on the graded sector bundle at one point.

    Coefficients are RationalFunctionT (Laurent polynomials in t here;
    denominators only enter through the Lefschetz division).
    """
    qmax = rat(qmax)
    factors = []
    for l in lines:
        lam = rat(l.lam)
        u = _unit(l.zeta, l.w, R)
        uinv = _unit(-rat(l.zeta), -l.w, R)
        k = 1
        while True:
            e_cot = k - 1 + lam
            e_tan = k - lam
            added = False
            if e_cot <= qmax:
                factors.append(ProductFactor("exterior", e_cot, 1, uinv))
                added = True
            if e_tan <= qmax:
                factors.append(ProductFactor("exterior", e_tan, -1, u))
                added = True
            if 0 < e_cot <= qmax:
                factors.append(ProductFactor("symmetric", e_cot, 0, uinv))
            if 0 < e_tan <= qmax:
                factors.append(ProductFactor("symmetric", e_tan, 0, u))
            if not added and k - 1 > qmax:
                break
            k += 1
    series = product_expand(factors, qmax, qden=mg)
    one = RationalFunctionT.from_scalar(Cyclotomic.one(R))
    return series.map_coefficients(lambda c: RationalFunctionT._coerce(c) * one)


def lefschetz_localized(datum: LocalizationDatum, qmax, R: int) -> QYSeries:
    """Alternating trace of h on the sector bundle cohomology, exactly.

    Sums the fixed-point contributions, checks that every coefficient
    reduces to a Laurent polynomial in t (raising LocalizationError
    otherwise), and evaluates the torus parameter away at t = 1.
    """
    qmax = rat(qmax)
    mg = datum.twist.mg
    total = QYSeries.zero(qmax, mg)
    for p in datum.points:
        char = sector_bundle_character(p.lines, qmax, R, mg)
        den = RationalFunctionT.from_scalar(Cyclotomic.one(R))
        for l in p.lines:
            if l.tangent:
                den = den * (RationalFunctionT.from_scalar(Cyclotomic.one(R))
                             - _unit(-rat(l.zeta), -l.w, R))
        inv = den.inverse()
        total = total + char.map_coefficients(lambda c: c * inv)

    def reduce(c: RationalFunctionT) -> Cyclotomic:
        lau = c.as_laurent()
        if lau is None:
            raise LocalizationError(
                f"{datum.component}, h={datum.h}: a coefficient has residual "
                "non-polynomial t-dependence; localization data is "
                "inconsistent")
        return lp_eval_one(lau)

    return total.map_coefficients(reduce)


def component_localization(comp: SectorComponent, group: GroupData,
                           h: int) -> LocalizationDatum:
    if comp.localization is None or h not in comp.localization:
        raise GenusError(
            f"component {comp.name}: missing localization data for "
            f"centralizer element {h}")
    return LocalizationDatum(comp.name, h, group.element_order(h),
                             comp.twist, comp.localization[h])


def _per_h_lefschetz(comp: SectorComponent, group: GroupData, cent, qmax,
                     R: int, jobs: int = 1) -> dict:
    """{h: L(h, V)} for h in the centralizer, optionally on worker threads."""
    work = [(h, component_localization(comp, group, h)) for h in cent]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            series = list(pool.map(
                lambda item: lefschetz_localized(item[1], qmax, R), work))
        return {h: s for (h, _), s in zip(work, series)}
    return {h: lefschetz_localized(d, qmax, R) for h, d in work}


def _component_average(comp: SectorComponent, group: GroupData, qmax,
                       R: int, jobs: int = 1) -> QYSeries:
    """(1/|C(g)|) sum_h L(h, V): rational coefficients, pre y-shift."""
    cent = group.centralizer(comp.rep)
    qmax = rat(qmax)
    total = QYSeries.zero(qmax, comp.twist.mg)
    per_h = _per_h_lefschetz(comp, group, cent, qmax, R, jobs)
    for h in cent:
        total = total + per_h[h]

    def check(c: Cyclotomic):
        v = (c * rat(1, len(cent)))
        r = v.as_rational()
        if r is None:
            raise GenusError(
                f"component {comp.name}: centralizer average is not "
                "rational; inconsistent eigenvalue data")
        return v

    return total.map_coefficients(check)


def sector_contribution(inp: OrbifoldInput, rep: int, qmax,
                        R: int | None = None, jobs: int = 1) -> QYSeries:
    """y^iota-shifted centralizer average, summed over the components of [g]."""
    if R is None:
        R = inp.cyclotomic_order()
    qmax = rat(qmax)
    total = QYSeries.zero(qmax)
    for comp in inp.components(rep):
        avg = _component_average(comp, inp.group, qmax, R, jobs)
        total = total + avg.shift_y(comp.iota)
    return total


def ell_orb(inp: OrbifoldInput, qmax, jobs: int = 1) -> QYSeries:
    """The orbifold elliptic genus, exactly, truncated at qmax."""
    R = inp.cyclotomic_order()
    qmax = rat(qmax)
    total = QYSeries.zero(qmax)
    for rep, _ in inp.classes:
        total = total + sector_contribution(inp, rep, qmax, R, jobs)
    return total.shift_y(rat(-inp.dim, 2))


def ell_orb_via_traces(inp: OrbifoldInput, qmax,
                       compare: bool = True, jobs: int = 1) -> QYSeries:
    """Independent route: per-coefficient invariant dimensions.

    Groups the same Lefschetz data by (q, y)-coefficient, Schur-averages
    each into an alternating sum of invariant dimensions (which must be
    an integer), and reassembles the genus.  With ``compare`` the result
    is checked coefficientwise against ``ell_orb``.
    """
    R = inp.cyclotomic_order()
    qmax = rat(qmax)
    total = QYSeries.zero(qmax)
    for rep, comps in inp.classes:
        cent = inp.group.centralizer(rep)
        for comp in comps:
            per_h = _per_h_lefschetz(comp, inp.group, cent, qmax, R, jobs)
            keys = set()
            for s in per_h.values():
                keys.update(s.terms)
            terms = {}
            for key in sorted(keys):
                acc = Cyclotomic.zero()
                for h in cent:
                    acc = acc + per_h[h].terms.get(key, Cyclotomic.zero())
                avg = acc * rat(1, len(cent))
                r = avg.as_rational()
                if r is None or r.denominator != 1:
                    raise GenusError(
                        f"component {comp.name} at (q,y)={key}: averaged "
                        f"alternating dimension {avg} is not an integer")
                if r != 0:
                    terms[key] = Cyclotomic.from_rat(r)
            total = total + QYSeries(qmax, terms,
                                     comp.twist.mg).shift_y(comp.iota)
    result = total.shift_y(rat(-inp.dim, 2))
    if compare:
        direct = ell_orb(inp, qmax, jobs)
        if result != direct:
            for key in sorted(set(result.terms) | set(direct.terms)):
                a = result.terms.get(key)
                b = direct.terms.get(key)
                if (a is None) != (b is None) or (a is not None and not (a - b).is_zero()):
                    raise ConsistencyError(
                        f"route mismatch at (q,y)={key}: traces route "
                        f"{a}, sector route {b}")
    return result
