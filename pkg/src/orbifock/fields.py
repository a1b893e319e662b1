"""Normally ordered field expressions as exact operator matrices.

A FieldExpr is a sum of normally ordered products of up to four
generator factors (family, direction, d/dz order), plus an optional
scalar anomaly c * z^{-1}.  A field of conformal weight h is expanded as
F(z) = sum_n F_n z^{-n-h}; the mode F_n lowers weight by n.  Derivative
factors carry (d^k F)_n = F_n * prod_{j<k}(-n - h_F - j).

Normal ordering places annihilation-type modes (a_n, psi_n with n >= 0;
b_n, phi_n with n > 0) to the right, with the Koszul sign of the
permutation of the odd factors.  For the free system the creation and
annihilation subalgebras (anti)commute cleanly, so the iterated and the
fully reordered products agree and every mode acts on a fixed-weight
state through finitely many mode splittings.

On a twisted module a field whose factors have total eigenvalue
exponent k (a/psi in direction i contribute +m_i, b/phi contribute
-m_i) only has modes on k/m_g + Z; requesting any other mode returns
the zero operator, which is the executable form of the twisted-module
equivariance axiom.

The N=2 superconformal currents are

    L = sum_i (:db^i a^i: + :dphi^i psi^i:),   J = sum_i :phi^i psi^i:,
    Q = sum_i :a^i phi^i:,                     G = sum_i :psi^i db^i:,

of weight 2, 1, 1, 2 and charge 0, 0, +1, -1.  Their twisted versions
are the same expressions over the shifted lattices; the twisted charge
current additionally carries the anomaly (sum_i m_i/m_g) * z^{-1}, and
the twisted Virasoro field carries none - the convention under which
both the weight spectrum starts at zero and the bracket table below
holds verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fock import (FAM_A, FAM_B, FAM_PHI, FAM_PSI, FAMILY_CODES,
                   FAMILY_NAMES, FAMILY_PARITY, FAMILY_WEIGHT, PARTNER,
                   BasisTable, FockModule, FockState, TwistData)
from .scalars import Rat, rat


class TruncationError(Exception):
    """An operation needed matrix data outside the truncated basis."""


class EquivarianceError(Exception):
    """A vector field violates the twisted admissibility constraint."""


@dataclass(frozen=True)
class FieldTerm:
    coeff: object
    factors: tuple  # ((family_code, direction, dz_order), ...)

    def weight(self) -> int:
        return sum(FAMILY_WEIGHT[f] + d for f, _, d in self.factors)

    def charge(self) -> int:
        return sum(1 if f == FAM_PHI else (-1 if f == FAM_PSI else 0)
                   for f, _, _ in self.factors)

    def parity(self) -> int:
        return sum(FAMILY_PARITY[f] for f, _, _ in self.factors) % 2


@dataclass(frozen=True)
class FieldExpr:
    """Sum of normally ordered factor products with common bigrading."""

    name: str
    weight: int
    charge: int
    parity: int
    terms: tuple
    anomaly: object = 0

    def __post_init__(self):
        object.__setattr__(self, "anomaly", rat(self.anomaly))
        for t in self.terms:
            if len(t.factors) > 4:
                raise ValueError("factor count per term is capped at 4")
            if t.weight() != self.weight:
                raise ValueError(f"term weight {t.weight()} != declared {self.weight}")
            if t.charge() != self.charge:
                raise ValueError("term charge mismatch")
            if t.parity() != self.parity:
                raise ValueError("term parity mismatch")
        if self.anomaly != 0 and (self.charge != 0 or self.parity != 0):
            raise ValueError("scalar anomaly requires an even charge-0 field")

    def scaled(self, c) -> "FieldExpr":
        c = rat(c)
        return FieldExpr(self.name, self.weight, self.charge, self.parity,
                         tuple(FieldTerm(t.coeff * c, t.factors) for t in self.terms),
                         self.anomaly * c)


def _fac(name: str, direction: int, d: int = 0) -> tuple:
    return (FAMILY_CODES[name], direction, d)


def standard_fields(n: int) -> dict:
    """The untwisted N=2 currents L, J, Q, G on n directions."""
    if n < 1:
        raise ValueError("need n >= 1")
    L = FieldExpr("L", 2, 0, 0, tuple(
        FieldTerm(rat(1), (_fac("b", i, 1), _fac("a", i))) for i in range(1, n + 1)
    ) + tuple(
        FieldTerm(rat(1), (_fac("phi", i, 1), _fac("psi", i))) for i in range(1, n + 1)
    ))
    J = FieldExpr("J", 1, 0, 0, tuple(
        FieldTerm(rat(1), (_fac("phi", i), _fac("psi", i))) for i in range(1, n + 1)))
    Q = FieldExpr("Q", 1, 1, 1, tuple(
        FieldTerm(rat(1), (_fac("a", i), _fac("phi", i))) for i in range(1, n + 1)))
    G = FieldExpr("G", 2, -1, 1, tuple(
        FieldTerm(rat(1), (_fac("psi", i), _fac("b", i, 1))) for i in range(1, n + 1)))
    return {"L": L, "J": J, "Q": Q, "G": G}


def twisted_standard_fields(twist: TwistData) -> dict:
    """Same expressions over the twisted lattices; J carries the iota anomaly."""
    fields = standard_fields(twist.n)
    J = fields["J"]
    fields["J"] = FieldExpr(J.name, J.weight, J.charge, J.parity, J.terms,
                            anomaly=twist.iota)
    return fields


# ---------------------------------------------------------------------------
# operator matrices
# ---------------------------------------------------------------------------


class OperatorMatrix:
    """Exact sparse matrix of a mode on a truncated basis.

    Columns are stored per source index; sources whose true image sticks
    out of the basis (weight beyond the bound, or b0 degree beyond the
    cap) are recorded in ``overflow`` instead - using them downstream
    raises TruncationError rather than silently truncating.
    """

    __slots__ = ("basis", "dw_num", "dc_num", "parity", "cols", "overflow",
                 "name")

    def __init__(self, basis: BasisTable, dw_num: int, dc_num: int,
                 parity: int, cols: dict, overflow: set, name: str = "?"):
        self.basis = basis
        self.dw_num = dw_num
        self.dc_num = dc_num
        self.parity = parity
        self.cols = cols
        self.overflow = overflow
        self.name = name

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, basis, dw_num=0, dc_num=0, parity=0, name="0"):
        return cls(basis, dw_num, dc_num, parity,
                   {k: {} for k in range(len(basis))}, set(), name)

    @classmethod
    def identity(cls, basis, scale=1, name="Id"):
        scale = rat(scale)
        cols = {k: ({k: scale} if scale != 0 else {})
                for k in range(len(basis))}
        return cls(basis, 0, 0, 0, cols, set(), name)

    # -- linear structure --------------------------------------------------

    def _check_compat(self, other):
        if self.basis is not other.basis:
            raise ValueError("operators live on different bases")

    def __add__(self, other):
        self._check_compat(other)
        if (self.dw_num, self.dc_num) != (other.dw_num, other.dc_num):
            raise ValueError("cannot add operators of different block shift")
        overflow = self.overflow | other.overflow
        cols = {}
        for k in range(len(self.basis)):
            if k in overflow:
                continue
            col = dict(self.cols[k])
            for i, c in other.cols[k].items():
                v = col.get(i, 0) + c
                if v == 0:
                    col.pop(i, None)
                else:
                    col[i] = v
            cols[k] = col
        parity = self.parity if self.parity == other.parity else 0
        return OperatorMatrix(self.basis, self.dw_num, self.dc_num, parity,
                              cols, overflow,
                              f"({self.name}+{other.name})")

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "OperatorMatrix":
        c = rat(c)
        cols = {k: ({i: v * c for i, v in col.items()} if c != 0 else {})
                for k, col in self.cols.items()}
        return OperatorMatrix(self.basis, self.dw_num, self.dc_num,
                              self.parity, cols, set(self.overflow),
                              f"({c})*{self.name}")

    # -- composition ---------------------------------------------------------

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self o other; sources become invalid where data is missing."""
        self._check_compat(other)
        cols = {}
        overflow = set(other.overflow)
        for k in range(len(self.basis)):
            if k in overflow:
                continue
            acc: dict = {}
            bad = False
            for mid, c in other.cols[k].items():
                if mid in self.overflow:
                    bad = True
                    break
                for dst, c2 in self.cols[mid].items():
                    v = acc.get(dst, 0) + c * c2
                    if v == 0:
                        acc.pop(dst, None)
                    else:
                        acc[dst] = v
            if bad:
                overflow.add(k)
            else:
                cols[k] = acc
        return OperatorMatrix(self.basis, self.dw_num + other.dw_num,
                              self.dc_num + other.dc_num,
                              (self.parity + other.parity) % 2, cols, overflow,
                              f"{self.name}o{other.name}")

    def column(self, k: int) -> dict:
        if k in self.overflow:
            raise TruncationError(
                f"column {k} of {self.name} exceeds the truncated basis; "
                "raise the weight bound or the b0 cap")
        return self.cols[k]

    def valid_sources(self) -> set:
        return set(self.cols)

    def apply_state(self, state: FockState) -> dict:
        k = self.basis.index[state]
        return {self.basis.states[i]: c for i, c in self.column(k).items()}

    def is_zero_on(self, sources) -> bool:
        return all(not self.column(k) for k in sources)

    def equal_on(self, other: "OperatorMatrix", sources) -> bool:
        for k in sources:
            if self.column(k) != other.column(k):
                return False
        return True

    def first_difference(self, other, sources):
        for k in sorted(sources):
            a, b = self.column(k), other.column(k)
            if a != b:
                return k, a, b
        return None

    def __repr__(self):
        return (f"OperatorMatrix({self.name}, dw={self.dw_num}/{self.basis.module.mg},"
                f" cols={len(self.cols)}, overflow={len(self.overflow)})")


def operator_bracket(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """a b - (-1)^{p(a)p(b)} b a on the common valid sources."""
    sign = -1 if (a.parity and b.parity) else 1
    ab = a.compose(b)
    ba = b.compose(a).scale(sign)
    return ab - ba


def anticommutator(a, b):
    ab = a.compose(b)
    ba = b.compose(a)
    return ab + ba


# ---------------------------------------------------------------------------
# mode extraction
# ---------------------------------------------------------------------------


def _deriv_coeff(fam: int, d: int, lev_num: int, mg: int):
    """prod_{j<d} (-lev - h - j) as a Rat; zero kills the splitting."""
    c = rat(1)
    l = rat(lev_num, mg)
    h = FAMILY_WEIGHT[fam]
    for j in range(d):
        c *= (-l - h - j)
        if c == 0:
            return c
    return c


def term_equivariance_class(module: FockModule, term: FieldTerm) -> int:
    k = 0
    for fam, d, _ in term.factors:
        m = module.twist.exponents[d - 1]
        k += m if fam in (FAM_A, FAM_PSI) else -m
    return k % module.mg


def _term_mode_action(module: FockModule, term: FieldTerm, n_num: int,
                      state: FockState) -> dict:
    """Image of the n-th mode of one normally ordered term on a state."""
    w_state = state.weight_num()
    w_target = w_state - n_num
    if w_target < 0:
        return {}
    factors = term.factors
    k = len(factors)
    cands = []
    parities = []
    for fam, d, do in factors:
        present = {-e[2] for e in state.bos if e[0] == d and e[1] == PARTNER[fam]}
        present |= {-e[2] for e in state.ferm if e[0] == d and e[1] == PARTNER[fam]}
        ann = sorted(present)
        cre = module.creation_levels(fam, d, w_target, include_zero=True)
        levels = []
        for l in ann + cre:
            if do and _deriv_coeff(fam, do, l, module.mg) == 0:
                continue
            levels.append(l)
        cands.append(levels)
        parities.append(FAMILY_PARITY[fam])
    cand_sets = [set(c) for c in cands]
    mins = [min(c) if c else 0 for c in cands]
    maxs = [max(c) if c else 0 for c in cands]
    suffix_min = [0] * (k + 1)
    suffix_max = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + mins[i]
        suffix_max[i] = suffix_max[i + 1] + maxs[i]
    out: dict = {}
    levels = [0] * k

    def run_tuple():
        ann, cre = [], []
        sign = 1
        odd_ann_seen = 0
        for i in range(k):
            fam, d, do = factors[i]
            l = levels[i]
            if module.is_annihilator(fam, l):
                ann.append((d, fam, l))
                if parities[i]:
                    odd_ann_seen += 1
            else:
                if parities[i] and (odd_ann_seen % 2):
                    sign = -sign
                cre.append((d, fam, l))
        coeff = term.coeff * sign
        for i in range(k):
            fam, _, do = factors[i]
            if do:
                coeff *= _deriv_coeff(fam, do, levels[i], module.mg)
        if coeff == 0:
            return
        current = [(state, coeff)]
        for entry in reversed(ann):
            nxt = []
            for s, c in current:
                for s2, c2 in module._apply_entry(entry, s):
                    nxt.append((s2, c * c2))
            if not nxt:
                return
            current = nxt
        for entry in reversed(cre):
            nxt = []
            for s, c in current:
                for s2, c2 in module._apply_entry(entry, s):
                    nxt.append((s2, c * c2))
            if not nxt:
                return
            current = nxt
        for s, c in current:
            v = out.get(s, 0) + c
            if v == 0:
                out.pop(s, None)
            else:
                out[s] = v

    def rec(i, remaining):
        if i == k - 1:
            if remaining in cand_sets[i]:
                levels[i] = remaining
                run_tuple()
            return
        if remaining - suffix_max[i + 1] > maxs[i]:
            return
        if remaining - suffix_min[i + 1] < mins[i]:
            return
        for l in cands[i]:
            if l + suffix_min[i + 1] <= remaining <= l + suffix_max[i + 1]:
                levels[i] = l
                rec(i + 1, remaining - l)

    if k:
        rec(0, n_num)
    return out


def field_mode_operator(expr: FieldExpr, n, module: FockModule, w_max,
                        include_b0: bool = False, b0_cap: int = 0,
                        basis: BasisTable | None = None,
                        cache: bool = True) -> OperatorMatrix:
    """Exact matrix of the n-th mode of a field on the truncated basis.

    Modes off the field's twisted equivariance lattice come back as the
    zero operator.  Columns whose image leaves the basis are flagged;
    touching them raises TruncationError.
    """
    if basis is None:
        basis = module.basis_table(w_max, include_b0, b0_cap)
    n = rat(n)
    n_scaled = n * module.mg
    cache_store = getattr(basis, "_op_cache", None)
    if cache_store is None:
        cache_store = {}
        basis.__dict__["_op_cache"] = cache_store
    key = (expr, n)
    if cache and key in cache_store:
        return cache_store[key]
    dc_num = expr.charge * module.mg
    if n_scaled.denominator != 1:
        op = OperatorMatrix.zero(basis, 0, dc_num, expr.parity,
                                 name=f"{expr.name}_{n}")
        if cache:
            cache_store[key] = op
        return op
    n_num = int(n_scaled)
    terms = [t for t in expr.terms
             if (n_num - term_equivariance_class(module, t)) % module.mg == 0]
    anomaly_here = expr.anomaly != 0 and n == 1 - expr.weight
    cols: dict = {}
    overflow: set = set()
    index = basis.index
    for k, s in enumerate(basis.states):
        acc: dict = {}
        for t in terms:
            for s2, c in _term_mode_action(module, t, n_num, s).items():
                v = acc.get(s2, 0) + c
                if v == 0:
                    acc.pop(s2, None)
                else:
                    acc[s2] = v
        if anomaly_here:
            v = acc.get(s, 0) + expr.anomaly
            if v == 0:
                acc.pop(s, None)
            else:
                acc[s] = v
        col = {}
        bad = False
        for s2, c in acc.items():
            i = index.get(s2)
            if i is None:
                bad = True
                break
            col[i] = c
        if bad:
            overflow.add(k)
        else:
            cols[k] = col
    return_op = OperatorMatrix(basis, -n_num, dc_num, expr.parity, cols,
                               overflow, name=f"{expr.name}_{n}")
    if cache:
        cache_store[key] = return_op
    return return_op


def generator_field(family: str, direction: int) -> FieldExpr:
    """The generating field itself as a one-factor expression."""
    code = FAMILY_CODES[family]
    return FieldExpr(f"{family}^{direction}", FAMILY_WEIGHT[code],
                     1 if code == FAM_PHI else (-1 if code == FAM_PSI else 0),
                     FAMILY_PARITY[code],
                     (FieldTerm(rat(1), (_fac(family, direction),)),))


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorFieldMonomial:
    """t_1^{e_1} ... t_N^{e_N} d/dt_j."""

    exponents: tuple
    direction: int

    def __post_init__(self):
        object.__setattr__(self, "exponents",
                           tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("vector field exponents must be >= 0")
        if not 1 <= self.direction <= len(self.exponents):
            raise ValueError("vector field direction out of range")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __str__(self):
        mono = "".join(f"t{i+1}^{e}" for i, e in enumerate(self.exponents) if e)
        return f"{mono or '1'} d/dt{self.direction}"


def vf_bracket(v: VectorFieldMonomial, w: VectorFieldMonomial) -> list:
    """[v, w] in the Lie algebra of vector fields; [(int coeff, monomial)]."""
    out = []
    ev, ew = v.exponents, w.exponents
    j, l = v.direction, w.direction
    if ew[j - 1] > 0:  # f * d_j(g) d_l
        exps = tuple(a + b - (1 if i == j - 1 else 0)
                     for i, (a, b) in enumerate(zip(ev, ew)))
        out.append((ew[j - 1], VectorFieldMonomial(exps, l)))
    if ev[l - 1] > 0:  # - g * d_l(f) d_j
        exps = tuple(a + b - (1 if i == l - 1 else 0)
                     for i, (a, b) in enumerate(zip(ev, ew)))
        out.append((-ev[l - 1], VectorFieldMonomial(exps, j)))
    return out


def vector_field_admissible(v: VectorFieldMonomial, twist: TwistData) -> bool:
    m = twist.exponents
    tot = sum(e * m[i] for i, e in enumerate(v.exponents))
    return (tot - m[v.direction - 1]) % twist.mg == 0


def vector_field_expr(v: VectorFieldMonomial) -> FieldExpr:
    """:f(b) a^j: + sum_k :(d_k f)(b) phi^k psi^j: for f the monomial."""
    n = len(v.exponents)
    bfacs = tuple(_fac("b", i + 1) for i, e in enumerate(v.exponents)
                  for _ in range(e))
    terms = [FieldTerm(rat(1), bfacs + (_fac("a", v.direction),))]
    for kdir in range(1, n + 1):
        e = v.exponents[kdir - 1]
        if e == 0:
            continue
        dfacs = tuple(_fac("b", i + 1) for i, ee in enumerate(v.exponents)
                      for _ in range(ee - (1 if i == kdir - 1 else 0)))
        terms.append(FieldTerm(rat(e), dfacs + (_fac("phi", kdir),
                                                _fac("psi", v.direction))))
    return FieldExpr(f"A[{v}]", 1, 0, 0, tuple(terms))


def vector_field_operator(v: VectorFieldMonomial, module: FockModule, w_max,
                          b0_cap: int | None = None,
                          basis: BasisTable | None = None) -> OperatorMatrix:
    """Zero mode of the coordinate-change current attached to v.

    Twisted modules only admit vector fields satisfying the eigenvalue
    congruence sum_l m_l e_l = m_j (mod m_g); other monomials are
    rejected.  The matrix acts on the b0-capped basis since f(b)
    involves b_0 in the untwisted directions.
    """
    if v.degree > 3:
        raise ValueError("monomial degree is capped at 3")
    if len(v.exponents) != module.n or module.n > 3:
        raise ValueError("vector field shape does not match the module (N <= 3)")
    if not vector_field_admissible(v, module.twist):
        raise EquivarianceError(
            f"{v} violates the twist congruence for {module.twist}")
    if basis is None:
        if b0_cap is None:
            b0_cap = v.degree + int(rat(w_max))
        basis = module.basis_table(w_max, include_b0=True, b0_cap=b0_cap)
    return field_mode_operator(vector_field_expr(v), 0, module, w_max,
                               basis=basis)
