from math import comb

import pytest

from orbifock.brst import (brst_operator, cohomology_table, exact_rank,
                           homotopy_identity_check)
from orbifock.fock import (FAM_B, FAM_PHI, VACUUM, FockState, TwistData,
                           make_module)
from orbifock.scalars import rat


def state(bos=(), ferm=()):
    return FockState(tuple(sorted(bos)), tuple(sorted(ferm)))


ALL_TWISTS_MG3 = [
    TwistData(n, mg, exps)
    for n in (1, 2)
    for mg in (1, 2, 3)
    for exps in __import__("itertools").product(range(mg), repeat=n)
]


class TestDifferential:
    def test_kills_vacuum(self):
        mod = make_module(TwistData.identity(1))
        d = brst_operator(mod, 1)
        assert d.apply_state(VACUUM) == {}

    def test_sign_on_b(self):
        mod = make_module(TwistData.identity(1))
        d = brst_operator(mod, 1)
        out = d.apply_state(state(bos=[(1, FAM_B, -1)]))
        assert out == {state(ferm=[(1, FAM_PHI, -1)]): -1}

    def test_twisted_fractional_level(self):
        mod = make_module(TwistData(1, 2, (1,)))
        d = brst_operator(mod, rat(3, 2))
        out = d.apply_state(state(bos=[(1, FAM_B, -1)]))  # level -1/2
        assert out == {state(ferm=[(1, FAM_PHI, -1)]): -1}

    def test_squares_to_zero(self):
        for twist in (TwistData.identity(2), TwistData(2, 3, (1, 2))):
            mod = make_module(twist)
            d = brst_operator(mod, 2)
            dd = d.compose(d)
            assert dd.is_zero_on(sorted(dd.cols))

    def test_raises_charge_preserves_weight(self):
        mod = make_module(TwistData(1, 2, (1,)))
        d = brst_operator(mod, 2)
        assert d.dw_num == 0 and d.dc_num == mod.mg


class TestHomotopy:
    @pytest.mark.parametrize("twist,wmax", [
        (TwistData.identity(1), 2),
        (TwistData(1, 2, (1,)), rat(3, 2)),
        (TwistData(2, 2, (0, 1)), rat(3, 2)),
        (TwistData(2, 3, (1, 2)), 1),
    ])
    def test_single_global_sign(self, twist, wmax):
        rep = homotopy_identity_check(make_module(twist), wmax)
        assert rep.ok and rep.sign == -1, rep

    def test_weight0_block_trivial(self):
        mod = make_module(TwistData.identity(1))
        from orbifock.fields import anticommutator, field_mode_operator, \
            twisted_standard_fields
        basis = mod.basis_table(1)
        F = twisted_standard_fields(mod.twist)
        d = brst_operator(mod, 1, basis=basis)
        g0 = field_mode_operator(F["G"], 0, mod, 1, basis=basis)
        h = anticommutator(g0, d)
        zero_block = [k for k, s in enumerate(basis.states)
                      if s.weight_num() == 0]
        assert h.is_zero_on(zero_block)


class TestCohomology:
    def test_untwisted_fiber(self):
        tab = cohomology_table(make_module(TwistData.identity(1)), 2)
        assert tab.cohomology() == {(0, 0): 1, (0, 1): 1}

    def test_half_twist(self):
        tab = cohomology_table(make_module(TwistData(1, 2, (1,))),
                               rat(3, 2))
        assert tab.cohomology() == {(0, rat(1, 2)): 1}

    def test_mixed_twist(self):
        tab = cohomology_table(make_module(TwistData(2, 2, (0, 1))),
                               rat(3, 2))
        assert tab.cohomology() == {(0, rat(1, 2)): 1, (0, rat(3, 2)): 1}

    @pytest.mark.parametrize("twist", ALL_TWISTS_MG3)
    def test_weight0_concentration_all_small_twists(self, twist):
        mod = make_module(twist)
        tab = cohomology_table(mod, rat(3, 2))
        k = len(twist.zero_directions())
        assert tab.total_cohomology_dim() == 2 ** k
        assert tab.max_nonzero_weight() in (None, 0)
        iota = twist.iota
        expected = {(rat(0), iota + j): comb(k, j) for j in range(k + 1)}
        assert tab.cohomology() == expected

    def test_acyclicity_crosscheck(self):
        # nonzero-weight blocks must be exactly acyclic when the
        # homotopy identity holds; assert both ways
        mod = make_module(TwistData(2, 2, (0, 1)))
        rep = homotopy_identity_check(mod, rat(3, 2))
        tab = cohomology_table(mod, rat(3, 2))
        assert rep.ok
        for (w, c), (dim, ker, im_in, coh) in tab.blocks.items():
            if w > 0:
                assert coh == 0, (w, c)

    def test_direction_permutation_invariance(self):
        t1 = cohomology_table(make_module(TwistData(2, 2, (0, 1))), 1)
        t2 = cohomology_table(make_module(TwistData(2, 2, (1, 0))), 1)
        assert t1.cohomology() == t2.cohomology()


class TestExactRank:
    def test_small_matrices(self):
        assert exact_rank([[rat(1), rat(2)], [rat(2), rat(4)]]) == 1
        assert exact_rank([[rat(0), rat(0)]]) == 0
        assert exact_rank([[rat(1), rat(0)], [rat(0), rat(1)]]) == 2
        assert exact_rank([]) == 0

    def test_exactness_no_float_noise(self):
        rows = [[rat(1, 3), rat(1, 7)], [rat(2, 6), rat(2, 14)]]
        assert exact_rank(rows) == 1
