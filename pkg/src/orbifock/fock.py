"""Twisted and untwisted Fock modules of the free boson-fermion system.

The underlying algebra has, per coordinate direction i = 1..N, a
Heisenberg pair a^i, b^i with [a_n, b_m] = delta_{n,-m} and a Clifford
pair psi^i, phi^i with {psi_n, phi_m} = delta_{n,-m}.  A cyclic twist of
order m_g with eigenvalue exponents m_i shifts the mode lattices:
a, psi run over m_i/m_g + Z and b, phi over -m_i/m_g + Z.  Annihilators
are a_n, psi_n with n >= 0 and b_n, phi_n with n > 0, so b_0 and phi_0
(present only when m_i = 0) are creation operators.

States are normally ordered creation monomials on the vacuum.  Weight of
a creation mode at level n is -n for all four families; charge counts
phi minus psi creators plus the twist constant iota = sum m_i/m_g read
off the anomalous charge current.  Mode levels are stored internally as
integers in units of 1/m_g.

The default basis excludes b_0 factors (each b_0 direction would give
the weight-0 layer infinite multiplicity); ``include_b0`` with an
explicit per-direction cap is provided for the coordinate-change and
BRST machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .scalars import Rat, rat, Cyclotomic
from .series import ProductFactor, QYSeries, product_expand

FAM_A, FAM_B, FAM_PSI, FAM_PHI = 0, 1, 2, 3
FAMILY_NAMES = ("a", "b", "psi", "phi")
FAMILY_CODES = {n: c for c, n in enumerate(FAMILY_NAMES)}
FAMILY_WEIGHT = (1, 0, 1, 0)          # conformal weight of the generating field
FAMILY_PARITY = (0, 0, 1, 1)
PARTNER = (FAM_B, FAM_A, FAM_PHI, FAM_PSI)
# contraction coefficient when the annihilator of this family meets its partner
PAIR_SIGN = (1, -1, 1, 1)


class FockError(Exception):
    pass


@dataclass(frozen=True)
class TwistData:
    """Eigenvalue data of a finite-order diagonal twist on N directions."""

    n: int
    mg: int
    exponents: tuple

    def __post_init__(self):
        if self.n < 1 or self.mg < 1:
            raise ValueError("need n >= 1 and mg >= 1")
        object.__setattr__(self, "exponents", tuple(int(m) for m in self.exponents))
        if len(self.exponents) != self.n:
            raise ValueError("need one exponent per direction")
        if any(not 0 <= m < self.mg for m in self.exponents):
            raise ValueError(f"exponents must lie in 0..{self.mg - 1}")

    @classmethod
    def identity(cls, n: int) -> "TwistData":
        return cls(n, 1, (0,) * n)

    @property
    def iota(self) -> Rat:
        return rat(sum(self.exponents), self.mg)

    def zero_directions(self) -> tuple:
        return tuple(i + 1 for i, m in enumerate(self.exponents) if m == 0)

    def is_identity(self) -> bool:
        return all(m == 0 for m in self.exponents)

    def __str__(self):
        return ",".join(str(m) for m in self.exponents) + f"/{self.mg}"


@dataclass(frozen=True)
class Mode:
    """A single generator mode; level is rational on the twisted lattice."""

    family: str
    direction: int
    level: object

    def __post_init__(self):
        if self.family not in FAMILY_CODES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "level", rat(self.level))


class FockState:
    """Normally ordered creation monomial applied to the vacuum.

    ``bos`` is a sorted multiset tuple and ``ferm`` a strictly sorted
    tuple of entries (direction, family_code, scaled_level); the
    canonical fermion order is by that triple.
    """

    __slots__ = ("bos", "ferm", "_h")

    def __init__(self, bos=(), ferm=()):
        object.__setattr__(self, "bos", tuple(bos))
        object.__setattr__(self, "ferm", tuple(ferm))
        object.__setattr__(self, "_h", hash((self.bos, self.ferm)))

    def __setattr__(self, *a):
        raise AttributeError("FockState is immutable")

    def __hash__(self):
        return self._h

    def __eq__(self, other):
        return (self.bos == other.bos and self.ferm == other.ferm
                if isinstance(other, FockState) else NotImplemented)

    def sort_key(self):
        return (self.bos, self.ferm)

    def weight_num(self) -> int:
        return -sum(e[2] for e in self.bos) - sum(e[2] for e in self.ferm)

    def charge_raw(self) -> int:
        return sum(1 if e[1] == FAM_PHI else -1 for e in self.ferm)

    def b0_degree(self, direction: int | None = None) -> int:
        return sum(1 for e in self.bos
                   if e[1] == FAM_B and e[2] == 0
                   and (direction is None or e[0] == direction))

    def has_b0(self) -> bool:
        return self.b0_degree() > 0

    def label(self, mg: int = 1) -> str:
        if not self.bos and not self.ferm:
            return "|0>"
        parts = [f"{FAMILY_NAMES[f]}^{d}({rat(l, mg)})"
                 for d, f, l in self.bos + self.ferm]
        return " ".join(parts) + " |0>"

    def __repr__(self):
        return f"FockState({self.label()})"


VACUUM = FockState()


class FockModule:
    """Fock module attached to a twist; owns the basis caches."""

    def __init__(self, twist: TwistData):
        self.twist = twist
        self.n = twist.n
        self.mg = twist.mg
        self._basis_cache: dict = {}

    # -- lattices ------------------------------------------------------

    def offset_num(self, fam: int, direction: int) -> int:
        m = self.twist.exponents[direction - 1]
        return m if fam in (FAM_A, FAM_PSI) else -m

    def on_lattice(self, fam: int, direction: int, lev: int) -> bool:
        return (lev - self.offset_num(fam, direction)) % self.mg == 0

    @staticmethod
    def is_annihilator(fam: int, lev: int) -> bool:
        return lev >= 0 if fam in (FAM_A, FAM_PSI) else lev > 0

    def creation_levels(self, fam: int, direction: int, max_weight: int,
                        include_zero: bool = True) -> list:
        """Scaled creation levels with 0 < weight <= max_weight (plus the
        weight-0 level for b/phi on untwisted directions if requested)."""
        off = self.offset_num(fam, direction) % self.mg  # in 0..mg-1
        out = []
        if fam in (FAM_A, FAM_PSI):
            lev = off - self.mg
        else:
            lev = -(self.mg - off) if off else 0
            if lev == 0 and not include_zero:
                lev = -self.mg
        while -lev <= max_weight:
            if not (lev == 0 and fam == FAM_B):
                out.append(lev)
            elif include_zero:
                out.append(lev)
            lev -= self.mg
        return out

    def min_annihilator_level(self, fam: int, direction: int) -> int:
        off = self.offset_num(fam, direction) % self.mg
        if fam in (FAM_A, FAM_PSI):
            return off
        return off if off else self.mg

    # -- grading ---------------------------------------------------------

    def state_weight(self, state: FockState) -> Rat:
        return rat(state.weight_num(), self.mg)

    def state_charge(self, state: FockState) -> Rat:
        return state.charge_raw() + self.twist.iota

    def charge_num(self, state: FockState) -> int:
        return state.charge_raw() * self.mg + sum(self.twist.exponents)

    # -- basis enumeration -------------------------------------------------

    def basis_up_to(self, w_max, include_b0: bool = False, b0_cap: int = 0):
        """Complete duplicate-free basis bucketed by (weight, charge).

        Returns {(weight, charge): [FockState, ...]} with Rat keys and
        deterministically ordered lists.
        """
        w_num = self._scale_weight(w_max)
        buckets = {}
        for s in self._enumerate(w_num, include_b0, b0_cap):
            key = (rat(s.weight_num(), self.mg), self.state_charge(s))
            buckets.setdefault(key, []).append(s)
        for lst in buckets.values():
            lst.sort(key=FockState.sort_key)
        return dict(sorted(buckets.items()))

    def basis_table(self, w_max, include_b0: bool = False, b0_cap: int = 0):
        key = (self._scale_weight(w_max), include_b0, b0_cap)
        tab = self._basis_cache.get(key)
        if tab is None:
            tab = BasisTable(self, key[0], include_b0, b0_cap)
            self._basis_cache[key] = tab
        return tab

    def _scale_weight(self, w) -> int:
        w = rat(w) * self.mg
        num, den = int(w.numerator), int(w.denominator)
        return num // den  # floor: only multiples of 1/mg occur

    def _enumerate(self, w_num: int, include_b0: bool, b0_cap: int):
        if w_num < 0:
            return
        streams = []
        for i in range(1, self.n + 1):
            for fam in (FAM_A, FAM_B, FAM_PSI, FAM_PHI):
                levels = self.creation_levels(fam, i, w_num,
                                              include_zero=(fam != FAM_B))
                fermionic = FAMILY_PARITY[fam] == 1
                entries = [(i, fam, l) for l in levels]
                if entries:
                    streams.append((fermionic, entries))
        states = []

        def rec(si, budget, bos, ferm):
            if si == len(streams):
                states.append((tuple(bos), tuple(ferm)))
                return
            fermionic, entries = streams[si]
            if fermionic:
                def frec(j, budget):
                    if j == len(entries):
                        rec(si + 1, budget, bos, ferm)
                        return
                    frec(j + 1, budget)
                    w = -entries[j][2]
                    if w <= budget:
                        ferm.append(entries[j])
                        frec(j + 1, budget - w)
                        ferm.pop()
                frec(0, budget)
            else:
                def brec(j, budget):
                    if j == len(entries):
                        rec(si + 1, budget, bos, ferm)
                        return
                    brec(j + 1, budget)
                    w = -entries[j][2]
                    count = 0
                    while (count + 1) * w <= budget:
                        count += 1
                        bos.extend([entries[j]] * 1)
                        brec(j + 1, budget - count * w)
                    for _ in range(count):
                        bos.pop()
                brec(0, budget)

        rec(0, w_num, [], [])
        zero_dirs = self.twist.zero_directions() if include_b0 else ()
        for bos, ferm in states:
            ferm = tuple(sorted(ferm))
            bos = tuple(sorted(bos))
            if not zero_dirs:
                yield FockState(bos, ferm)
                continue
            def b0rec(di, acc):
                if di == len(zero_dirs):
                    yield FockState(tuple(sorted(bos + tuple(acc))), ferm)
                    return
                d = zero_dirs[di]
                for k in range(b0_cap + 1):
                    yield from b0rec(di + 1, acc + [(d, FAM_B, 0)] * k)
            yield from b0rec(0, [])

    # -- single-mode action -------------------------------------------------

    def apply_mode(self, mode: Mode, state: FockState) -> dict:
        """Action of one generator mode; {state: Rat} linear combination."""
        fam = FAMILY_CODES[mode.family]
        if not 1 <= mode.direction <= self.n:
            raise FockError(f"direction {mode.direction} out of range")
        lev = rat(mode.level) * self.mg
        if lev.denominator != 1:
            raise FockError(f"level {mode.level} not on the 1/{self.mg} lattice")
        lev = int(lev)
        if not self.on_lattice(fam, mode.direction, lev):
            raise FockError(
                f"{mode.family}^{mode.direction} has no mode at level {mode.level} "
                f"for twist {self.twist}")
        out = {}
        for s, c in self._apply_entry((mode.direction, fam, lev), state):
            prev = out.get(s)
            c = c if prev is None else prev + c
            if c == 0:
                out.pop(s, None)
            else:
                out[s] = c
        return out

    def _apply_entry(self, entry, state: FockState):
        """Internal mode action on a basis state; list of (state, Rat)."""
        d, fam, lev = entry
        if not self.is_annihilator(fam, lev):
            if FAMILY_PARITY[fam] == 0:
                bos = list(state.bos)
                pos = 0
                while pos < len(bos) and bos[pos] <= entry:
                    pos += 1
                bos.insert(pos, entry)
                return [(FockState(tuple(bos), state.ferm), 1)]
            ferm = state.ferm
            pos = 0
            while pos < len(ferm) and ferm[pos] < entry:
                pos += 1
            if pos < len(ferm) and ferm[pos] == entry:
                return []
            sign = -1 if pos % 2 else 1
            return [(FockState(state.bos, ferm[:pos] + (entry,) + ferm[pos:]),
                     sign)]
        target = (d, PARTNER[fam], -lev)
        if FAMILY_PARITY[fam] == 0:
            mult = state.bos.count(target)
            if not mult:
                return []
            bos = list(state.bos)
            bos.remove(target)
            return [(FockState(tuple(bos), state.ferm),
                     mult * PAIR_SIGN[fam])]
        try:
            pos = state.ferm.index(target)
        except ValueError:
            return []
        sign = -1 if pos % 2 else 1
        return [(FockState(state.bos, state.ferm[:pos] + state.ferm[pos + 1:]),
                 sign)]

    # -- characters -----------------------------------------------------------

    def character(self, qmax, include_b0: bool = False) -> QYSeries:
        """Sum of q^weight y^charge over the basis, truncated at qmax.

        Must match the graded product formula (``character_product``)
        coefficientwise; that identity is the executable content of the
        exterior-symmetric power decomposition of the module.
        """
        if include_b0:
            raise FockError("the b0-completed character diverges at weight 0; "
                            "only the b0-free sector has a q-series character")
        qmax = rat(qmax)
        terms: dict = {}
        one = Cyclotomic.one()
        for (w, c), states in self.basis_up_to(qmax).items():
            key = (w, c)
            coeff = terms.get(key)
            add = Cyclotomic.from_rat(rat(len(states)))
            terms[key] = add if coeff is None else coeff + add
        return QYSeries(qmax, terms, self.mg)


def make_module(twist: TwistData) -> FockModule:
    return FockModule(twist)


def character_product(twist: TwistData, qmax) -> QYSeries:
    """Fiber product formula for the module character, shifted by y^iota.

    Per direction with eigenvalue exponent lambda = m_i/m_g the factors
    are (1 + y q^{k-1+lambda})(1 + y^{-1} q^{k-lambda}) over the exterior
    pairs and (1 - q^{k-1+lambda})^{-1}(1 - q^{k-lambda})^{-1} over the
    symmetric pairs, k >= 1 (for lambda = 0 the symmetric pair merges to
    rank 2 at q^k).
    """
    qmax = rat(qmax)
    factors = []
    for m in twist.exponents:
        lam = rat(m, twist.mg)
        k = 1
        while True:
            e_ext_cot = k - 1 + lam   # y-weighted exterior (cotangent type)
            e_ext_tan = k - lam       # y^{-1}-weighted exterior (tangent type)
            any_added = False
            if e_ext_cot <= qmax:
                factors.append(ProductFactor("exterior", e_ext_cot, 1))
                any_added = True
            if e_ext_tan <= qmax:
                factors.append(ProductFactor("exterior", e_ext_tan, -1))
                any_added = True
            if lam == 0:
                if k <= qmax:
                    factors.append(ProductFactor("symmetric", k, 0, 1, 2))
                    any_added = True
            else:
                if 0 < e_ext_cot <= qmax:
                    factors.append(ProductFactor("symmetric", e_ext_cot, 0))
                if 0 < e_ext_tan <= qmax:
                    factors.append(ProductFactor("symmetric", e_ext_tan, 0))
            if not any_added and k - 1 > qmax:
                break
            k += 1
    series = product_expand(factors, qmax, qden=twist.mg)
    return series.shift_y(twist.iota)


class BasisTable:
    """Indexed basis with (weight, charge) block structure (scaled keys)."""

    def __init__(self, module: FockModule, w_max_num: int,
                 include_b0: bool, b0_cap: int):
        self.module = module
        self.w_max_num = w_max_num
        self.include_b0 = include_b0
        self.b0_cap = b0_cap
        states = list(module._enumerate(w_max_num, include_b0, b0_cap))
        states.sort(key=lambda s: (s.weight_num(), module.charge_num(s),
                                   s.sort_key()))
        self.states = states
        self.index = {s: k for k, s in enumerate(states)}
        self.blocks: dict = {}
        for k, s in enumerate(states):
            self.blocks.setdefault(
                (s.weight_num(), module.charge_num(s)), []).append(k)

    def __len__(self):
        return len(self.states)

    def block_keys(self):
        return sorted(self.blocks)

    def block_key_rat(self, key) -> tuple:
        w, c = key
        return (rat(w, self.module.mg), rat(c, self.module.mg))
