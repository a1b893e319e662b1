"""Executable verification suites.

Each function checks one family of structural identities exactly and
returns a report object with per-item results; the CLI prints them and
the test suite asserts them.  Everything here is a consequence of the
normal-ordering conventions, so these are the machine proofs that the
conventions are mutually consistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import (FieldExpr, OperatorMatrix, TruncationError,
                     VectorFieldMonomial, field_mode_operator, generator_field,
                     operator_bracket, twisted_standard_fields,
                     vector_field_admissible, vector_field_operator, vf_bracket)
from .fock import (FAMILY_CODES, FAMILY_NAMES, FAMILY_PARITY, FockModule,
                   Mode, TwistData, character_product, make_module)
from .scalars import Rat, rat


@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str = ""
    checked: int = 0


@dataclass
class Report:
    title: str
    items: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def add(self, name, ok, detail="", checked=0):
        self.items.append(CheckItem(name, ok, detail, checked))

    def failures(self):
        return [i for i in self.items if not i.ok]

    def lines(self):
        out = [f"== {self.title}: {'ok' if self.ok else 'FAILED'}"]
        for i in self.items:
            mark = "ok " if i.ok else "FAIL"
            extra = f" [{i.checked}]" if i.checked else ""
            det = f"  {i.detail}" if (i.detail and not i.ok) else ""
            out.append(f"  [{mark}] {i.name}{extra}{det}")
        return out


# ---------------------------------------------------------------------------
# generator mode relations
# ---------------------------------------------------------------------------


def _combo_sub(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for s, c in b.items():
        v = out.get(s, 0) - sign * c
        if v == 0:
            out.pop(s, None)
        else:
            out[s] = v
    return out


def generator_relations(module: FockModule, w_max, mode_bound: int = 2) -> Report:
    """All (anti)commutators of generator modes on every basis state.

    [a_n, b_m] = delta_{n,-m}, {psi_n, phi_m} = delta_{n,-m}, all other
    pairs (anti)commute to zero; exact on each state, no truncation
    involved since mode action is computed statewise.
    """
    rep = Report(f"generator relations, twist {module.twist}, w <= {w_max}")
    basis = [s for states in module.basis_up_to(w_max).values() for s in states]
    mg = module.mg
    mode_lists = {}
    for fam in range(4):
        for d in range(1, module.n + 1):
            off = module.offset_num(fam, d) % mg
            levels = []
            lev = off - ((mode_bound * mg - off) // mg + 1) * mg
            while lev <= mode_bound * mg:
                if -mode_bound * mg <= lev:
                    levels.append(lev)
                lev += mg
            mode_lists[(fam, d)] = levels

    def apply(fam, d, lev, combo):
        out = {}
        for s, c in combo.items():
            for s2, c2 in module._apply_entry((d, fam, lev), s):
                v = out.get(s2, 0) + c * c2
                if v == 0:
                    out.pop(s2, None)
                else:
                    out[s2] = v
        return out

    pairs = [(f1, f2) for f1 in range(4) for f2 in range(f1, 4)]
    for f1, f2 in pairs:
        anti = FAMILY_PARITY[f1] and FAMILY_PARITY[f2]
        sign = -1 if anti else 1
        bad = None
        count = 0
        for d1 in range(1, module.n + 1):
            for d2 in range(1, module.n + 1):
                for n1 in mode_lists[(f1, d1)]:
                    for n2 in mode_lists[(f2, d2)]:
                        delta = rat(0)
                        if d1 == d2 and n1 + n2 == 0:
                            if (f1, f2) == (0, 1):
                                delta = rat(1)
                            elif (f1, f2) == (2, 3):
                                delta = rat(1)
                        for s in basis:
                            x = apply(f1, d1, n1, apply(f2, d2, n2, {s: rat(1)}))
                            y = apply(f2, d2, n2, apply(f1, d1, n1, {s: rat(1)}))
                            lhs = _combo_sub(x, y, sign)
                            want = {s: delta} if delta else {}
                            count += 1
                            if lhs != want:
                                bad = (d1, n1, d2, n2, s)
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        name = (f"[{FAMILY_NAMES[f1]}, {FAMILY_NAMES[f2]}]"
                + ("+" if anti else ""))
        rep.add(name, bad is None,
                detail=str(bad) if bad else "", checked=count)
    return rep


# ---------------------------------------------------------------------------
# N=2 superconformal bracket table
# ---------------------------------------------------------------------------

RELATIONS = ("LL", "LJ", "JJ", "JQ", "JG", "QQ", "GG", "QG", "LQ", "LG")


class BracketTable:
    """Cached mode operators of L, J, Q, G on one truncated basis."""

    def __init__(self, module: FockModule, w_max):
        self.module = module
        self.w_max = w_max
        self.basis = module.basis_table(w_max)
        self.fields = twisted_standard_fields(module.twist)
        self.n = module.n

    def op(self, name: str, n: int) -> OperatorMatrix:
        return field_mode_operator(self.fields[name], n, self.module,
                                   self.w_max, basis=self.basis)

    def expected(self, rel: str, m: int, n: int) -> OperatorMatrix:
        """Mode form of the operator product expansions, central terms
        pinned by direct machine computation:

        [L_m, L_n] = (m-n) L_{m+n}
        [L_m, J_n] = -n J_{m+n} - (N/2) m (m+1) delta_{m+n,0}
        [J_m, J_n] = N m delta_{m+n,0}
        [J_m, Q_n] = Q_{m+n},   [J_m, G_n] = -G_{m+n}
        {Q_m, Q_n} = {G_m, G_n} = 0
        {Q_m, G_n} = L_{m+n} + m J_{m+n} + (N/2) m (m-1) delta_{m+n,0}
        [L_m, Q_n] = -n Q_{m+n},  [L_m, G_n] = (m-n) G_{m+n}

        with J the full twisted current (anomaly included), under which
        the same table holds verbatim on twisted modules.
        """
        mm = m + n
        N = self.n
        ident = lambda c: OperatorMatrix.identity(self.basis, c)
        zero = OperatorMatrix.zero(self.basis)
        if rel == "LL":
            return self.op("L", mm).scale(m - n)
        if rel == "LJ":
            out = self.op("J", mm).scale(-n)
            return out + ident(rat(-N * m * (m + 1), 2)) if mm == 0 else out
        if rel == "JJ":
            return ident(rat(N * m)) if mm == 0 else zero
        if rel == "JQ":
            return self.op("Q", mm)
        if rel == "JG":
            return self.op("G", mm).scale(-1)
        if rel in ("QQ", "GG"):
            return zero
        if rel == "QG":
            out = self.op("L", mm) + self.op("J", mm).scale(m)
            return out + ident(rat(N * m * (m - 1), 2)) if mm == 0 else out
        if rel == "LQ":
            return self.op("Q", mm).scale(-n)
        if rel == "LG":
            return self.op("G", mm).scale(m - n)
        raise ValueError(f"unknown relation {rel!r}")


def bracket_suite(module: FockModule, w_max, mode_bound: int = 2) -> Report:
    """Verify the full bracket table blockwise on all valid sources."""
    table = BracketTable(module, w_max)
    rep = Report(f"N=2 bracket table, twist {module.twist}, w <= {w_max}, "
                 f"|modes| <= {mode_bound}")
    for rel in RELATIONS:
        a_name, b_name = rel[0], rel[1]
        bad = None
        total_sources = 0
        for m in range(-mode_bound, mode_bound + 1):
            for n in range(-mode_bound, mode_bound + 1):
                br = operator_bracket(table.op(a_name, m), table.op(b_name, n))
                rhs = table.expected(rel, m, n)
                sources = sorted(set(br.cols) - rhs.overflow)
                total_sources += len(sources)
                if not br.equal_on(rhs, sources):
                    bad = (m, n, br.first_difference(rhs, sources))
                    break
            if bad:
                break
        kind = "{,}" if rel in ("QQ", "GG", "QG") else "[,]"
        rep.add(f"{kind} {a_name}_m {b_name}_n", bad is None,
                detail=f"m,n={bad[:2]}" if bad else "", checked=total_sources)
    return rep


def equivariance_zero_modes(module: FockModule, w_max) -> Report:
    """Generator fields have modes only on their eigenvalue lattice."""
    rep = Report(f"twisted equivariance, twist {module.twist}")
    if module.mg == 1:
        rep.add("identity twist: nothing to check", True)
        return rep
    basis = module.basis_table(w_max)
    for fam_name in FAMILY_NAMES:
        for d in range(1, module.n + 1):
            F = generator_field(fam_name, d)
            fam = FAMILY_CODES[fam_name]
            off = module.offset_num(fam, d) % module.mg
            ok = True
            count = 0
            for k in range(module.mg):
                n = rat(k, module.mg)
                if k == off:
                    continue  # on-lattice modes are the generators themselves
                op = field_mode_operator(F, n, module, w_max, basis=basis)
                count += 1
                if any(op.cols[c] for c in op.cols):
                    ok = False
            rep.add(f"{fam_name}^{d} off-lattice modes vanish", ok,
                    checked=count)
    return rep


# ---------------------------------------------------------------------------
# spectrum constraints
# ---------------------------------------------------------------------------


def spectrum_suite(module: FockModule, w_max) -> Report:
    """Weight and charge lattices, and L_0/J_0 as diagonal operators."""
    rep = Report(f"spectrum, twist {module.twist}, w <= {w_max}")
    iota = module.twist.iota
    basis = module.basis_table(w_max)
    ok_w = ok_c = True
    for s in basis.states:
        w = module.state_weight(s)
        c = module.state_charge(s)
        if w < 0 or (w * module.mg).denominator != 1:
            ok_w = False
        if (c - iota).denominator != 1:
            ok_c = False
    rep.add("weights in (1/mg) Z>=0", ok_w, checked=len(basis))
    rep.add("charges in iota + Z", ok_c, checked=len(basis))
    rep.add("vacuum charge equals iota",
            module.state_charge(basis.states[0]) == iota
            and basis.states[0].weight_num() == 0)
    fields = twisted_standard_fields(module.twist)
    l0 = field_mode_operator(fields["L"], 0, module, w_max, basis=basis)
    j0 = field_mode_operator(fields["J"], 0, module, w_max, basis=basis)
    ok_l = ok_j = True
    for k, s in enumerate(basis.states):
        w, c = module.state_weight(s), module.state_charge(s)
        if l0.column(k) != ({k: w} if w else {}):
            ok_l = False
        if j0.column(k) != ({k: c} if c else {}):
            ok_j = False
    rep.add("L_0 diagonal = weights", ok_l, checked=len(basis))
    rep.add("J_0 diagonal = charges (iota shift included)", ok_j,
            checked=len(basis))
    return rep


def character_suite(twist: TwistData, qmax) -> Report:
    """Basis enumeration equals the graded product formula."""
    rep = Report(f"character factorization, twist {twist}, q <= {qmax}")
    module = make_module(twist)
    enum = module.character(qmax)
    prod = character_product(twist, qmax)
    ok = enum == prod
    detail = ""
    if not ok:
        for key in sorted(set(enum.terms) | set(prod.terms)):
            if enum.terms.get(key) != prod.terms.get(key):
                detail = f"first mismatch at (q,y)={key}"
                break
    rep.add("enumeration == product", ok, detail, checked=len(enum.terms))
    nonneg = all(c.as_rational() is not None and c.as_rational() >= 0
                 for c in enum.terms.values())
    rep.add("coefficients nonnegative integers", nonneg)
    return rep


# ---------------------------------------------------------------------------
# vector field representation
# ---------------------------------------------------------------------------


def admissible_monomials(module: FockModule, max_degree: int) -> list:
    out = []
    n = module.n

    def exps(deg, prefix):
        if len(prefix) == n:
            if sum(prefix) <= max_degree:
                yield tuple(prefix)
            return
        for e in range(deg + 1):
            yield from exps(deg, prefix + [e])

    for e in exps(max_degree, []):
        for j in range(1, n + 1):
            v = VectorFieldMonomial(e, j)
            if vector_field_admissible(v, module.twist):
                out.append(v)
    return out


def scalar_axioms(seed: int = 0, rounds: int = 40) -> Report:
    """Cyclotomic field identities on random small elements."""
    import random

    from .ratfunc import RationalFunctionT
    from .scalars import Cyclotomic

    rng = random.Random(seed)
    rep = Report(f"exact scalars, seed {seed}")
    ok_root = ok_sum = True
    for R in (2, 3, 4, 5, 6, 8, 12):
        z = Cyclotomic.root(R)
        if not (z ** R == 1):
            ok_root = False
        if R > 1 and not sum((z ** k for k in range(1, R)),
                             Cyclotomic.one()).is_zero():
            ok_sum = False
    rep.add("zeta_R^R = 1", ok_root)
    rep.add("sum of all R-th roots = 0", ok_sum)

    def rand_cyc(R):
        return Cyclotomic(R, [rat(rng.randint(-3, 3)) for _ in range(R)])

    ok_inv = ok_ring = True
    for _ in range(rounds):
        R = rng.choice((3, 4, 6))
        a, b, c = rand_cyc(R), rand_cyc(R), rand_cyc(R)
        if not ((a + b) * c == a * c + b * c and (a * b) * c == a * (b * c)):
            ok_ring = False
        if not a.is_zero() and not (a * a.inverse() == 1):
            ok_inv = False
    rep.add("ring axioms (random)", ok_ring, checked=rounds)
    rep.add("field inverses (random)", ok_inv, checked=rounds)

    ok_rf = True
    for _ in range(rounds):
        R = rng.choice((2, 3, 4))
        num = {e: rand_cyc(R) for e in range(-2, 3) if rng.random() < 0.5}
        den = {e: rand_cyc(R) for e in range(-1, 2) if rng.random() < 0.6}
        f = RationalFunctionT(num or {0: Cyclotomic.one(R)})
        if not any(not c.is_zero() for c in den.values()):
            den = {0: Cyclotomic.one(R)}
        g = RationalFunctionT(den)
        if not ((f * g) / g == f):
            ok_rf = False
    rep.add("(f*g)/g = f (random rational functions)", ok_rf, checked=rounds)
    return rep


def series_ring_axioms(seed: int = 0, rounds: int = 25) -> Report:
    """Associativity/distributivity of truncated series on random inputs."""
    import random

    from .scalars import Cyclotomic
    from .series import ProductFactor, QYSeries, product_expand

    rng = random.Random(seed)
    rep = Report(f"series ring axioms, seed {seed}")
    qmax, qden = rat(2), 2

    def rand_series():
        terms = {}
        for _ in range(rng.randint(0, 6)):
            qe = rat(rng.randint(0, 4), 2)
            ye = rat(rng.randint(-2, 2))
            terms[(qe, ye)] = Cyclotomic.from_rat(rat(rng.randint(-3, 3)))
        return QYSeries(qmax, terms, qden)

    ok_assoc = ok_dist = True
    for _ in range(rounds):
        a, b, c = rand_series(), rand_series(), rand_series()
        if not ((a * b) * c == a * (b * c)):
            ok_assoc = False
        if not (a * (b + c) == a * b + a * c):
            ok_dist = False
    rep.add("associativity (random)", ok_assoc, checked=rounds)
    rep.add("distributivity (random)", ok_dist, checked=rounds)

    ok_rank = True
    for _ in range(8):
        r = rng.randint(1, 4)
        a, bexp = rat(rng.randint(0, 2)), rat(rng.randint(-1, 1))
        one_shot = product_expand([ProductFactor("exterior", a, bexp, 1, r)],
                                  qmax)
        repeated = product_expand([ProductFactor("exterior", a, bexp)] * r,
                                  qmax)
        if not (one_shot == repeated):
            ok_rank = False
    rep.add("exterior rank r = r-fold rank 1", ok_rank, checked=8)
    return rep


def vector_field_suite(module: FockModule, w_max, max_degree: int = 2,
                       b0_cap: int | None = None) -> Report:
    """[nu(v), nu(w)] = nu([v, w]) over all admissible monomial pairs."""
    if b0_cap is None:
        b0_cap = 2 * max_degree
    basis = module.basis_table(w_max, include_b0=True, b0_cap=b0_cap)
    rep = Report(f"vector fields, twist {module.twist}, deg <= {max_degree}, "
                 f"w <= {w_max}, b0 cap {b0_cap} ({len(basis)} states)")
    vs = admissible_monomials(module, max_degree)
    ops = {v: vector_field_operator(v, module, w_max, basis=basis) for v in vs}
    bad = None
    checked = 0
    for i, v in enumerate(vs):
        for w in vs[i:]:
            br = operator_bracket(ops[v], ops[w])
            rhs = OperatorMatrix.zero(basis)
            ok_rhs = True
            for coeff, u in vf_bracket(v, w):
                if u.degree > 3 or not vector_field_admissible(u, module.twist):
                    ok_rhs = False  # bracket leaves the checkable range
                    break
                op_u = ops.get(u)
                if op_u is None:
                    op_u = vector_field_operator(u, module, w_max, basis=basis)
                    ops[u] = op_u
                rhs = rhs + op_u.scale(coeff)
            if not ok_rhs:
                continue
            sources = sorted(set(br.cols) - rhs.overflow)
            checked += 1
            if not br.equal_on(rhs, sources):
                bad = (str(v), str(w))
                break
        if bad:
            break
    rep.add("Lie algebra homomorphism", bad is None,
            detail=str(bad) if bad else "", checked=checked)
    return rep
