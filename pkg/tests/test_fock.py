import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbifock.fock import (FAM_A, FAM_B, FAM_PHI, FAM_PSI, VACUUM, FockError,
                           FockState, FockModule, Mode, TwistData,
                           character_product, make_module)
from orbifock.scalars import rat


def state(bos=(), ferm=()):
    return FockState(tuple(sorted(bos)), tuple(sorted(ferm)))


class TestTwistData:
    def test_validation(self):
        with pytest.raises(ValueError):
            TwistData(1, 2, (2,))
        with pytest.raises(ValueError):
            TwistData(2, 2, (1,))

    def test_iota(self):
        assert TwistData.identity(3).iota == 0
        assert TwistData(1, 2, (1,)).iota == rat(1, 2)
        assert TwistData(2, 2, (1, 1)).iota == 1
        assert TwistData(2, 3, (1, 2)).iota == 1


class TestModuleStructure:
    def test_untwisted_creation_levels(self):
        mod = make_module(TwistData.identity(1))
        assert mod.creation_levels(FAM_B, 1, 2)[0] == 0   # b_0 exists
        assert mod.creation_levels(FAM_A, 1, 2)[0] == -1  # a starts at -1
        assert mod.creation_levels(FAM_PHI, 1, 2)[0] == 0  # phi_0 exists

    def test_half_twist_levels(self):
        mod = make_module(TwistData(1, 2, (1,)))
        # scaled by mg = 2: a-levels in 1/2 + Z, b-levels in -1/2 + Z
        assert mod.creation_levels(FAM_A, 1, 4) == [-1, -3]
        assert mod.creation_levels(FAM_B, 1, 4) == [-1, -3]
        assert 0 not in mod.creation_levels(FAM_PHI, 1, 4)

    def test_mixed_directions(self):
        mod = make_module(TwistData(2, 2, (0, 1)))
        assert mod.creation_levels(FAM_B, 1, 2)[0] == 0
        assert mod.creation_levels(FAM_B, 2, 2)[0] == -1
        assert mod.creation_levels(FAM_PHI, 1, 2)[0] == 0
        assert mod.creation_levels(FAM_PHI, 2, 2)[0] == -1


class TestBasis:
    def test_weight0_untwisted(self):
        mod = make_module(TwistData.identity(1))
        buckets = mod.basis_up_to(0)
        assert {k[1] for k in buckets} == {0, 1}
        states = [s for v in buckets.values() for s in v]
        assert state() in states and state(ferm=[(1, FAM_PHI, 0)]) in states
        assert len(states) == 2

    def test_weight1_census_against_hand_enumeration(self):
        # oracle: the eight weight-1 states listed by hand
        mod = make_module(TwistData.identity(1))
        phi0 = (1, FAM_PHI, 0)
        expected = {
            state(bos=[(1, FAM_A, -1)]): 0,
            state(bos=[(1, FAM_B, -1)]): 0,
            state(ferm=[(1, FAM_PSI, -1)]): -1,
            state(ferm=[(1, FAM_PHI, -1)]): 1,
            state(bos=[(1, FAM_A, -1)], ferm=[phi0]): 1,
            state(bos=[(1, FAM_B, -1)], ferm=[phi0]): 1,
            state(ferm=sorted([(1, FAM_PSI, -1), phi0])): 0,
            state(ferm=sorted([(1, FAM_PHI, -1), phi0])): 2,
        }
        buckets = mod.basis_up_to(1)
        got = {s: k[1] for k, v in buckets.items() if k[0] == 1 for s in v}
        assert got == {s: rat(c) for s, c in expected.items()}
        tally = {}
        for c in got.values():
            tally[c] = tally.get(c, 0) + 1
        assert tally == {rat(-1): 1, rat(0): 3, rat(1): 3, rat(2): 1}

    def test_twisted_weight0_is_vacuum_only(self):
        mod = make_module(TwistData(1, 2, (1,)))
        buckets = mod.basis_up_to(0)
        assert list(buckets) == [(rat(0), rat(1, 2))]
        assert buckets[(rat(0), rat(1, 2))] == [VACUUM]

    def test_b0_cap_enumeration(self):
        mod = make_module(TwistData.identity(1))
        plain = sum(len(v) for v in mod.basis_up_to(1).values())
        capped = sum(len(v) for v in mod.basis_up_to(
            1, include_b0=True, b0_cap=2).values())
        assert capped == 3 * plain  # b_0^0, b_0^1, b_0^2 layers

    def test_deterministic_order(self):
        mod = make_module(TwistData(2, 2, (0, 1)))
        t1 = mod.basis_table(rat(3, 2), include_b0=True, b0_cap=1)
        mod2 = make_module(TwistData(2, 2, (0, 1)))
        t2 = mod2.basis_table(rat(3, 2), include_b0=True, b0_cap=1)
        assert [s.sort_key() for s in t1.states] == \
               [s.sort_key() for s in t2.states]


class TestApplyMode:
    def test_contraction(self):
        mod = make_module(TwistData.identity(1))
        out = mod.apply_mode(Mode("a", 1, 1), state(bos=[(1, FAM_B, -1)]))
        assert out == {VACUUM: 1}

    def test_annihilator_on_vacuum(self):
        mod = make_module(TwistData.identity(1))
        assert mod.apply_mode(Mode("psi", 1, 0), VACUUM) == {}

    def test_fermion_squares_to_zero(self):
        mod = make_module(TwistData.identity(1))
        phi0 = state(ferm=[(1, FAM_PHI, 0)])
        assert mod.apply_mode(Mode("phi", 1, 0), phi0) == {}

    def test_b_annihilating_a_has_minus_sign(self):
        mod = make_module(TwistData.identity(1))
        out = mod.apply_mode(Mode("b", 1, 1), state(bos=[(1, FAM_A, -1)]))
        assert out == {VACUUM: -1}

    def test_boson_multiplicity(self):
        mod = make_module(TwistData.identity(1))
        two = state(bos=[(1, FAM_B, -1), (1, FAM_B, -1)])
        out = mod.apply_mode(Mode("a", 1, 1), two)
        assert out == {state(bos=[(1, FAM_B, -1)]): 2}

    def test_fermionic_anticommutation_sign(self):
        mod = make_module(TwistData.identity(1))
        phi0, phim1 = (1, FAM_PHI, 0), (1, FAM_PHI, -1)
        s = state(ferm=[phim1, phi0])
        # psi_0 contracts phi_0, which sits at position 1: sign -1
        out = mod.apply_mode(Mode("psi", 1, 0), s)
        assert out == {state(ferm=[phim1]): -1}

    def test_wrong_lattice_rejected(self):
        mod = make_module(TwistData(1, 2, (1,)))
        with pytest.raises(FockError):
            mod.apply_mode(Mode("a", 1, 1), VACUUM)
        with pytest.raises(FockError):
            mod.apply_mode(Mode("a", 1, rat(1, 3)), VACUUM)

    def test_creation_insert_sign(self):
        mod = make_module(TwistData.identity(1))
        phi0 = state(ferm=[(1, FAM_PHI, 0)])
        out = mod.apply_mode(Mode("phi", 1, -1), phi0)
        # phi_{-1} sorts before phi_0, crossing zero factors: sign +1
        assert out == {state(ferm=[(1, FAM_PHI, -1), (1, FAM_PHI, 0)]): 1}
        # phi_{-1} sorts after psi_{-1} in the canonical (dir, family,
        # level) order with a < b < psi < phi: one crossing, sign -1
        out2 = mod.apply_mode(Mode("phi", 1, -1),
                              state(ferm=[(1, FAM_PSI, -1)]))
        assert out2 == {state(ferm=[(1, FAM_PSI, -1), (1, FAM_PHI, -1)]): -1}


class TestGrading:
    def test_vacuum(self):
        mod = make_module(TwistData.identity(1))
        assert mod.state_weight(VACUUM) == 0
        assert mod.state_charge(VACUUM) == 0

    def test_twisted_vacuum_charge_is_iota(self):
        mod = make_module(TwistData(1, 2, (1,)))
        assert mod.state_weight(VACUUM) == 0
        assert mod.state_charge(VACUUM) == rat(1, 2)

    def test_twisted_psi_state(self):
        mod = make_module(TwistData(1, 2, (1,)))
        s = state(ferm=[(1, FAM_PSI, -1)])  # scaled level -1 = level -1/2
        assert mod.state_weight(s) == rat(1, 2)
        assert mod.state_charge(s) == rat(-1, 2)


class TestCharacter:
    def test_untwisted_q1(self):
        mod = make_module(TwistData.identity(1))
        c = mod.character(1)
        assert c.coefficient(1, -1).as_rational() == 1
        assert c.coefficient(1, 0).as_rational() == 3
        assert c.coefficient(1, 1).as_rational() == 3
        assert c.coefficient(1, 2).as_rational() == 1
        assert c == character_product(TwistData.identity(1), 1)

    def test_q0_exterior_algebra(self):
        for n in (1, 2, 3):
            mod = make_module(TwistData.identity(n))
            c = mod.character(0)
            from math import comb
            for j in range(n + 1):
                assert c.coefficient(0, j).as_rational() == comb(n, j)

    def test_twisted_leading_term(self):
        mod = make_module(TwistData(1, 2, (1,)))
        c = mod.character(rat(1, 2))
        assert list(c.q_slice(0)) == [rat(1, 2)]
        assert c.coefficient(rat(1, 2), rat(-1, 2)).as_rational() == 1

    def test_include_b0_rejected(self):
        mod = make_module(TwistData.identity(1))
        with pytest.raises(FockError):
            mod.character(1, include_b0=True)

    @pytest.mark.parametrize("twist,qmax", [
        (TwistData.identity(1), 2),
        (TwistData(1, 2, (1,)), rat(3, 2)),
        (TwistData(1, 3, (2,)), rat(4, 3)),
        (TwistData(2, 2, (0, 1)), rat(3, 2)),
        (TwistData(2, 3, (1, 2)), 1),
    ])
    def test_enumeration_matches_product(self, twist, qmax):
        mod = make_module(twist)
        assert mod.character(qmax) == character_product(twist, qmax)


@given(n=st.integers(1, 2), mg=st.integers(1, 3), seed=st.integers(0, 100))
def test_mode_relations_on_random_states(n, mg, seed):
    """[a_n, b_m] = delta and friends on a random basis state."""
    import random
    rng = random.Random(seed)
    exps = tuple(rng.randrange(mg) for _ in range(n))
    mod = make_module(TwistData(n, mg, exps))
    all_states = [s for v in mod.basis_up_to(rat(3, 2)).values() for s in v]
    s = all_states[rng.randrange(len(all_states))]
    d = rng.randrange(1, n + 1)
    off = mod.offset_num(FAM_A, d)
    lev = rat(off + mg * rng.randint(-1, 1), mg)

    def apply(mode, combo):
        out = {}
        for st_, c in combo.items():
            for s2, c2 in mod.apply_mode(mode, st_).items():
                out[s2] = out.get(s2, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    x = apply(Mode("a", d, lev), apply(Mode("b", d, -lev), {s: rat(1)}))
    y = apply(Mode("b", d, -lev), apply(Mode("a", d, lev), {s: rat(1)}))
    comm = {k: x.get(k, 0) - y.get(k, 0) for k in set(x) | set(y)}
    comm = {k: v for k, v in comm.items() if v}
    assert comm == {s: 1}
