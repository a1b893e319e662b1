"""Finite-group bookkeeping and Chen-Ruan graded dimensions.

A global quotient is described by one sector component per connected
piece of each fixed locus: the twist exponents of the group element on
the ambient tangent space along the component, and the cohomology of
the component either as centralizer characters (traces per element and
degree) or directly as invariant graded dimensions.  Invariants are
extracted by Schur averaging; Chen-Ruan degrees are k + 2*iota.

Groups are handled by brute force from a multiplication table (or
generated from permutations) - adequate up to order a couple hundred,
which is the scale everything here runs at.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .fock import TwistData
from .scalars import Rat, rat


class GroupError(Exception):
    pass


class OrbifoldError(Exception):
    pass


class GroupData:
    """A finite group as a validated multiplication table on 0..n-1."""

    def __init__(self, table, labels=None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if any(len(row) != n for row in table):
            raise GroupError("multiplication table must be square")
        if any(not 0 <= x < n for row in table for x in row):
            raise GroupError("table entries out of range")
        for row in table:
            if len(set(row)) != n:
                raise GroupError("a row of the table is not a permutation")
        for c in range(n):
            if len({row[c] for row in table}) != n:
                raise GroupError("a column of the table is not a permutation")
        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupError("no identity element")
        for a in range(n):
            if not any(table[a][b] == identity and table[b][a] == identity
                       for b in range(n)):
                raise GroupError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise GroupError(
                            f"associativity fails at ({a},{b},{c})")
        self.table = table
        self.order = n
        self.identity = identity
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(n))

    @classmethod
    def from_permutations(cls, perms) -> "GroupData":
        """Close a list of permutations (as images of 0..k-1) under composition.

        Elements are numbered in BFS discovery order from the identity,
        so the numbering is deterministic in the generator list.
        """
        perms = [tuple(int(x) for x in p) for p in perms]
        if not perms:
            raise GroupError("need at least one generator")
        k = len(perms[0])
        if any(len(p) != k or sorted(p) != list(range(k)) for p in perms):
            raise GroupError("generators must be permutations of 0..k-1")
        ident = tuple(range(k))
        elements = [ident]
        seen = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for e in frontier:
                for g in perms:
                    prod = tuple(g[e[i]] for i in range(k))
                    if prod not in seen:
                        seen[prod] = len(elements)
                        elements.append(prod)
                        nxt.append(prod)
            frontier = nxt
            if len(elements) > 5000:
                raise GroupError("generated group too large")
        table = [[seen[tuple(a[b[i]] for i in range(k))] for b in elements]
                 for a in elements]
        labels = ["".join(map(str, e)) for e in elements]
        return cls(table, labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity:
                return b
        raise GroupError("unreachable: validated group")

    def conj(self, h: int, g: int) -> int:
        """h g h^{-1}."""
        return self.mul(self.mul(h, g), self.inv(h))

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def conjugacy_classes(self) -> list:
        """Sorted classes; the representative is the least element."""
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            orbit = sorted({self.conj(h, g) for h in range(self.order)})
            seen.update(orbit)
            classes.append(orbit)
        classes.sort(key=lambda c: c[0])
        return classes

    def centralizer(self, g: int) -> list:
        return [h for h in range(self.order)
                if self.mul(h, g) == self.mul(g, h)]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))


def conjugacy_classes(group: GroupData) -> list:
    return group.conjugacy_classes()


def centralizer(group: GroupData, g: int) -> list:
    return group.centralizer(g)


# ---------------------------------------------------------------------------
# sector data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectorComponent:
    """One connected component of a fixed locus with its input data.

    ``characters`` maps element id -> tuple of traces on H^0, H^1, ...;
    alternatively ``invariant_dims`` gives the invariant graded
    dimensions directly.  ``localization`` (optional, used by the genus
    machinery) maps element id -> fixed point data.
    """

    name: str
    rep: int
    twist: TwistData
    characters: dict | None = None
    invariant_dims: tuple | None = None
    localization: dict | None = None

    def __post_init__(self):
        if (self.characters is None) == (self.invariant_dims is None):
            raise OrbifoldError(
                f"component {self.name}: give exactly one of characters "
                "or invariant_dims")

    @property
    def iota(self) -> Rat:
        return self.twist.iota

    def degrees(self) -> int:
        if self.characters is not None:
            return max(len(tr) for tr in self.characters.values())
        return len(self.invariant_dims)


def fermionic_shift(component: SectorComponent) -> Rat:
    """iota = sum of eigenvalue exponents m_i/m_g of the twist."""
    return component.twist.iota


def invariant_dims(component: SectorComponent, group: GroupData) -> tuple:
    """Graded dimensions of the centralizer invariants, by Schur averaging.

    Averages (1/|C|) sum_h tr(h) per degree; a non-integral or negative
    result flags inconsistent character data.
    """
    if component.invariant_dims is not None:
        return tuple(int(d) for d in component.invariant_dims)
    cent = group.centralizer(component.rep)
    chars = component.characters
    missing = [h for h in cent if h not in chars]
    if missing:
        raise OrbifoldError(
            f"component {component.name}: missing traces for centralizer "
            f"elements {missing}")
    ndeg = component.degrees()
    dims = []
    for k in range(ndeg):
        s = rat(0)
        for h in cent:
            tr = chars[h]
            s += tr[k] if k < len(tr) else 0
        avg = s / len(cent)
        if avg.denominator != 1 or avg < 0:
            raise OrbifoldError(
                f"component {component.name}: degree {k} averages to {avg}, "
                "not a nonnegative integer - malformed character data")
        dims.append(int(avg))
    for k, tr in enumerate(chars[group.identity]):
        t = rat(tr)
        if t.denominator != 1 or t < 0:
            raise OrbifoldError(
                f"component {component.name}: identity trace {tr} at degree "
                f"{k} is not a dimension")
    return tuple(dims)


@dataclass(frozen=True)
class OrbifoldInput:
    """Full description of a global quotient for the downstream modules."""

    group: GroupData
    dim: int
    classes: tuple  # ((rep, (SectorComponent, ...)), ...)

    def __post_init__(self):
        by_class = {}
        for cls in self.group.conjugacy_classes():
            for g in cls:
                by_class[g] = cls[0]
        covered = [by_class[rep] for rep, _ in self.classes]
        if sorted(covered) != sorted({c[0] for c in self.group.conjugacy_classes()}) \
                or len(covered) != len(set(covered)):
            raise OrbifoldError(
                "class representatives must form a transversal of the "
                "conjugacy classes (one per class, any representative)")
        for rep, comps in self.classes:
            if not comps:
                warnings.warn(f"class {rep} has no components; contributes 0")
            for c in comps:
                if c.rep != rep:
                    raise OrbifoldError(
                        f"component {c.name} is attached to the wrong class")
                if c.twist.n != self.dim:
                    raise OrbifoldError(
                        f"component {c.name}: twist has {c.twist.n} directions, "
                        f"ambient dimension is {self.dim}")
                if c.twist.mg != self.group.element_order(rep) and not (
                        c.twist.is_identity() and rep == self.group.identity):
                    raise OrbifoldError(
                        f"component {c.name}: twist order {c.twist.mg} != "
                        f"order of element {rep}")
            if rep == self.group.identity:
                if len(comps) != 1 or not comps[0].twist.is_identity():
                    raise OrbifoldError(
                        "the identity class needs exactly one component with "
                        "all-zero exponents")

    def components(self, rep: int) -> tuple:
        for r, comps in self.classes:
            if r == rep:
                return comps
        raise OrbifoldError(f"no class with representative {rep}")

    def cyclotomic_order(self) -> int:
        """lcm of element orders; the root-of-unity order for a run."""
        from .scalars import lcm
        R = 1
        for g in range(self.group.order):
            R = lcm(R, self.group.element_order(g))
        return R


# ---------------------------------------------------------------------------
# Chen-Ruan Poincare polynomial
# ---------------------------------------------------------------------------


def cr_poincare(inp: OrbifoldInput) -> dict:
    """{degree: dim} of the orbifold cohomology; degrees are k + 2*iota."""
    out: dict = {}
    for rep, comps in inp.classes:
        for comp in comps:
            dims = invariant_dims(comp, inp.group)
            shift = 2 * comp.iota
            for k, d in enumerate(dims):
                if not d:
                    continue
                deg = k + shift
                if deg < 0 or deg > 2 * inp.dim:
                    raise OrbifoldError(
                        f"component {comp.name}: degree {deg} outside "
                        f"[0, {2 * inp.dim}]")
                out[deg] = out.get(deg, 0) + d
    return dict(sorted(out.items()))


def poincare_report(poly: dict) -> str:
    if not poly:
        return "0"
    parts = []
    for deg, d in poly.items():
        if deg == 0:
            parts.append(str(d))
        else:
            mono = "t" if deg == 1 else f"t^{deg}"
            parts.append(mono if d == 1 else f"{d}*{mono}")
    return " + ".join(parts)


def conjugate_sector(component: SectorComponent, h: int,
                     group: GroupData) -> SectorComponent:
    """The same component presented for the representative h g h^{-1}.

    Twist exponents are carried over unchanged (conjugation intertwines
    the eigenspaces); characters and localization data are reindexed by
    k -> h^{-1} k h.
    """
    g2 = group.conj(h, component.rep)
    chars = None
    if component.characters is not None:
        chars = {group.conj(h, k): v for k, v in component.characters.items()}
    loc = None
    if component.localization is not None:
        loc = {group.conj(h, k): v for k, v in component.localization.items()}
    return SectorComponent(component.name + f"^({h})", g2, component.twist,
                           characters=chars,
                           invariant_dims=component.invariant_dims,
                           localization=loc)


def conjugate_input(inp: OrbifoldInput, h: int) -> OrbifoldInput:
    """Replace every class representative g by h g h^{-1}."""
    classes = tuple(
        (inp.group.conj(h, rep),
         tuple(conjugate_sector(c, h, inp.group) for c in comps))
        for rep, comps in inp.classes)
    return OrbifoldInput(inp.group, inp.dim, classes)
