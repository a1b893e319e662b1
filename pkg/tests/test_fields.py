import pytest

from orbifock.fields import (EquivarianceError, FieldExpr, FieldTerm,
                             OperatorMatrix, TruncationError,
                             VectorFieldMonomial, anticommutator,
                             field_mode_operator, generator_field,
                             operator_bracket, standard_fields,
                             twisted_standard_fields, vector_field_expr,
                             vector_field_operator, vf_bracket)
from orbifock.fock import (FAM_A, FAM_B, FAM_PHI, FAM_PSI, VACUUM, FockState,
                           TwistData, make_module)
from orbifock.scalars import rat
from orbifock.verify import (BracketTable, bracket_suite,
                             equivariance_zero_modes, generator_relations,
                             spectrum_suite, vector_field_suite)


def state(bos=(), ferm=()):
    return FockState(tuple(sorted(bos)), tuple(sorted(ferm)))


class TestFieldExpressions:
    def test_standard_fields_shape(self):
        F1 = standard_fields(1)
        assert len(F1["Q"].terms) == 1
        assert [f[0] for f in F1["Q"].terms[0].factors] == [FAM_A, FAM_PHI]
        F2 = standard_fields(2)
        assert len(F2["J"].terms) == 2
        assert (F2["Q"].charge, F2["G"].charge) == (1, -1)
        assert (F2["L"].weight, F2["J"].weight) == (2, 1)

    def test_twisted_fields(self):
        tw = TwistData(2, 2, (0, 1))
        F = twisted_standard_fields(tw)
        assert F["J"].anomaly == rat(1, 2)
        assert F["L"].anomaly == 0
        ident = twisted_standard_fields(TwistData.identity(2))
        assert ident["J"].anomaly == 0
        assert ident["J"].terms == standard_fields(2)["J"].terms

    def test_term_validation(self):
        with pytest.raises(ValueError):
            FieldExpr("bad", 2, 0, 0,
                      (FieldTerm(rat(1), ((FAM_A, 1, 0),)),))  # weight 1 != 2


class TestModeOperators:
    def test_j0_counts_phi(self):
        mod = make_module(TwistData.identity(1))
        J0 = field_mode_operator(standard_fields(1)["J"], 0, mod, 2)
        phi0 = state(ferm=[(1, FAM_PHI, 0)])
        assert J0.apply_state(phi0) == {phi0: 1}

    def test_q0_on_b(self):
        mod = make_module(TwistData.identity(1))
        Q0 = field_mode_operator(standard_fields(1)["Q"], 0, mod, 2)
        out = Q0.apply_state(state(bos=[(1, FAM_B, -1)]))
        assert out == {state(ferm=[(1, FAM_PHI, -1)]): 1}

    def test_l0_vacuum(self):
        mod = make_module(TwistData.identity(1))
        L0 = field_mode_operator(standard_fields(1)["L"], 0, mod, 2)
        assert L0.apply_state(VACUUM) == {}

    def test_off_lattice_mode_is_zero_operator(self):
        mod = make_module(TwistData(1, 2, (1,)))
        a = generator_field("a", 1)
        op = field_mode_operator(a, 0, mod, 1)  # a-modes live in 1/2 + Z
        assert all(not op.cols[k] for k in op.cols)
        op2 = field_mode_operator(a, rat(1, 2), mod, 1)
        assert any(op2.cols[k] for k in op2.cols)

    def test_truncation_is_loud(self):
        mod = make_module(TwistData.identity(1))
        basis = mod.basis_table(1)
        L = standard_fields(1)["L"]
        lm1 = field_mode_operator(L, -1, mod, 1, basis=basis)
        top = state(bos=[(1, FAM_A, -1)])
        k = basis.index[top]
        assert k in lm1.overflow
        with pytest.raises(TruncationError):
            lm1.column(k)


class TestBrackets:
    def test_virasoro_example(self):
        mod = make_module(TwistData.identity(1))
        t = BracketTable(mod, 2)
        br = operator_bracket(t.op("L", 1), t.op("L", -1))
        rhs = t.op("L", 0).scale(2)
        src = sorted(set(br.cols) - rhs.overflow)
        assert src and br.equal_on(rhs, src)

    def test_charge_central_term(self):
        for n in (1, 2):
            mod = make_module(TwistData.identity(n))
            t = BracketTable(mod, 2)
            br = operator_bracket(t.op("J", 1), t.op("J", -1))
            rhs = OperatorMatrix.identity(t.basis, rat(n))
            assert br.equal_on(rhs, sorted(br.cols))

    def test_supercharge_squares_to_zero(self):
        mod = make_module(TwistData(1, 2, (1,)))
        t = BracketTable(mod, 2)
        sq = anticommutator(t.op("Q", 0), t.op("Q", 0))
        assert sq.is_zero_on(sorted(sq.cols))

    @pytest.mark.parametrize("twist,wmax", [
        (TwistData.identity(1), 3),
        (TwistData(1, 2, (1,)), 2),
        (TwistData(1, 3, (1,)), 2),
        (TwistData(1, 3, (2,)), 2),
        (TwistData(2, 2, (0, 1)), 2),
    ])
    def test_full_table(self, twist, wmax):
        rep = bracket_suite(make_module(twist), wmax, 2)
        assert rep.ok, "\n".join(rep.lines())

    def test_generator_relations(self):
        rep = generator_relations(make_module(TwistData(1, 2, (1,))), 2, 2)
        assert rep.ok, "\n".join(rep.lines())

    def test_spectrum(self):
        for twist in (TwistData.identity(2), TwistData(2, 3, (1, 2))):
            rep = spectrum_suite(make_module(twist), 2)
            assert rep.ok, "\n".join(rep.lines())

    def test_equivariance_report(self):
        rep = equivariance_zero_modes(make_module(TwistData(1, 3, (1,))), 2)
        assert rep.ok, "\n".join(rep.lines())


class TestVectorFields:
    def test_expr_shape(self):
        v = VectorFieldMonomial((2,), 1)  # t^2 d/dt
        expr = vector_field_expr(v)
        assert len(expr.terms) == 2
        assert [f[0] for f in expr.terms[0].factors] == [FAM_B, FAM_B, FAM_A]
        assert expr.terms[1].coeff == 2  # d/dt(t^2) = 2t

    def test_translation_annihilates_b0_free_sector(self):
        mod = make_module(TwistData.identity(1))
        basis = mod.basis_table(2, include_b0=True, b0_cap=2)
        op = vector_field_operator(VectorFieldMonomial((0,), 1), mod, 2,
                                   basis=basis)
        for k, s in enumerate(basis.states):
            if not s.has_b0() and k in op.cols:
                assert not op.cols[k], s

    def test_euler_field_commutator_with_b_mode(self):
        # [nu(t d/dt), b_{-1}] = b_{-1}: the infinitesimal coordinate
        # change acts on the generator field by multiplication by f(b)
        mod = make_module(TwistData.identity(1))
        basis = mod.basis_table(2, include_b0=True, b0_cap=3)
        euler = vector_field_operator(VectorFieldMonomial((1,), 1), mod, 2,
                                      basis=basis)
        bm1 = field_mode_operator(generator_field("b", 1), -1, mod, 2,
                                  basis=basis)
        br = operator_bracket(euler, bm1)
        src = sorted(set(br.cols) & set(bm1.cols))
        assert src and br.equal_on(bm1, src)

    def test_witt_bracket_example(self):
        # [t d/dt, t^2 d/dt] = t^2 d/dt
        mod = make_module(TwistData.identity(1))
        basis = mod.basis_table(2, include_b0=True, b0_cap=4)
        v = VectorFieldMonomial((1,), 1)
        w = VectorFieldMonomial((2,), 1)
        assert vf_bracket(v, w) == [(2, w), (-1, w)]
        nu_v = vector_field_operator(v, mod, 2, basis=basis)
        nu_w = vector_field_operator(w, mod, 2, basis=basis)
        br = operator_bracket(nu_v, nu_w)
        src = sorted(set(br.cols) & set(nu_w.cols))
        assert src and br.equal_on(nu_w, src)

    def test_twisted_admissibility(self):
        mod = make_module(TwistData(1, 2, (1,)))
        with pytest.raises(EquivarianceError):
            vector_field_operator(VectorFieldMonomial((2,), 1), mod, 1)
        op = vector_field_operator(VectorFieldMonomial((1,), 1), mod, 1)
        assert op is not None
        with pytest.raises(ValueError):
            vector_field_operator(VectorFieldMonomial((4,), 1),
                                  make_module(TwistData.identity(1)), 1)

    @pytest.mark.parametrize("twist", [
        TwistData.identity(1),
        TwistData.identity(2),
        TwistData(1, 2, (1,)),
        TwistData(2, 2, (0, 1)),
        TwistData(2, 3, (1, 2)),
    ])
    def test_lie_homomorphism(self, twist):
        rep = vector_field_suite(make_module(twist), 2, 2)
        assert rep.ok, "\n".join(rep.lines())

    def test_twisted_cubic_pair(self):
        # [t d/dt, t^3 d/dt] = 2 t^3 d/dt on the half-integer lattice
        mod = make_module(TwistData(1, 2, (1,)))
        basis = mod.basis_table(2, include_b0=True, b0_cap=0)
        v = VectorFieldMonomial((1,), 1)
        w = VectorFieldMonomial((3,), 1)
        nu_v = vector_field_operator(v, mod, 2, basis=basis)
        nu_w = vector_field_operator(w, mod, 2, basis=basis)
        br = operator_bracket(nu_v, nu_w)
        rhs = nu_w.scale(2)
        src = sorted(set(br.cols) - rhs.overflow)
        assert src and br.equal_on(rhs, src)
