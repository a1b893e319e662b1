import json
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbifock.scalars import Cyclotomic, rat
from orbifock.series import (ProductFactor, QYSeries, product_expand,
                             series_from_json, series_report, series_to_json)


def S(qmax, terms, qden=1, floor=0):
    return QYSeries(qmax, {(rat(q), rat(y)): Cyclotomic.from_rat(rat(c))
                           for (q, y), c in terms.items()}, qden, floor)


def coeffs_of(s):
    return {k: c.as_rational() for k, c in s.terms.items()}


class TestCombine:
    def test_cancellation(self):
        a = S(1, {(0, 0): 1, (1, 1): 1})
        b = S(1, {(0, 0): 1, (1, 1): -1})
        assert coeffs_of(a + b) == {(0, 0): 2}

    def test_two_factor_product(self):
        a = S(1, {(0, 0): 1, (1, 1): 1})
        c = S(1, {(0, 0): 1, (1, -1): 1})
        assert coeffs_of(a * c) == {(0, 0): 1, (1, 1): 1, (1, -1): 1}

    def test_convolution_against_double_loop_oracle(self):
        # oracle: plain double loop over exponents, truncated at 3
        oracle = {}
        for i in range(4):
            for j in range(4):
                if i + j <= 3:
                    oracle[i + j] = oracle.get(i + j, 0) + 1
        g = S(3, {(k, 0): 1 for k in range(4)})
        assert coeffs_of(g * g) == {(rat(k), rat(0)): rat(v)
                                    for k, v in oracle.items()}

    def test_mixed_qden(self):
        a = S(1, {(rat(1, 2), 0): 1}, qden=2)
        b = S(1, {(rat(1, 3), 0): 1}, qden=3)
        assert (a * b).qden == 6
        assert coeffs_of(a * b) == {(rat(5, 6), rat(0)): 1}

    def test_floor_contract(self):
        with pytest.raises(ValueError):
            S(1, {(-1, 0): 1})  # negative support needs a declared floor
        a = S(1, {(-1, 0): 1, (0, 0): 1}, floor=-1)
        b = S(2, {(0, 0): 1, (1, 0): 1})
        prod = a * b
        # truncation bound shrinks by the floor: exact only up to q^1
        assert prod.qmax == 1
        assert prod.floor == -1
        assert coeffs_of(prod) == {(rat(-1), rat(0)): 1, (rat(0), rat(0)): 2,
                                   (rat(1), rat(0)): 1}


class TestProductExpand:
    def test_single_exterior(self):
        s = product_expand([ProductFactor("exterior", 0, 1)], 0)
        assert coeffs_of(s) == {(rat(0), rat(0)): 1, (rat(0), rat(1)): 1}

    def test_symmetric_rank2_against_binomial_oracle(self):
        oracle = {k: comb(k + 1, 1) for k in range(3)}  # (1-q)^-2
        s = product_expand([ProductFactor("symmetric", 1, 0, 1, 2)], 2)
        assert coeffs_of(s) == {(rat(k), rat(0)): rat(v)
                                for k, v in oracle.items()}

    def test_divergent_symmetric_rejected(self):
        with pytest.raises(ValueError):
            product_expand([ProductFactor("symmetric", 0, 1)], 1)

    def test_untwisted_fiber_product_q1(self):
        factors = []
        for k in (1, 2):
            factors.append(ProductFactor("exterior", k - 1, 1))
            factors.append(ProductFactor("exterior", k, -1))
            factors.append(ProductFactor("symmetric", k, 0, 1, 2))
        s = product_expand(factors, 1)
        assert coeffs_of(s) == {
            (rat(0), rat(0)): 1, (rat(0), rat(1)): 1,
            (rat(1), rat(-1)): 1, (rat(1), rat(0)): 3,
            (rat(1), rat(1)): 3, (rat(1), rat(2)): 1,
        }

    @given(r=st.integers(1, 4), a=st.integers(0, 2), b=st.integers(-2, 2))
    def test_exterior_rank_equals_iterated(self, r, a, b):
        one_shot = product_expand([ProductFactor("exterior", a, b, 1, r)], 2)
        repeated = product_expand([ProductFactor("exterior", a, b)] * r, 2)
        assert one_shot == repeated


@st.composite
def small_series(draw):
    n = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n):
        q = rat(draw(st.integers(0, 4)), 2)
        y = rat(draw(st.integers(-2, 2)))
        terms[(q, y)] = terms.get((q, y), 0) + draw(st.integers(-3, 3))
    return S(2, {k: v for k, v in terms.items() if v}, qden=2)


class TestRingAxioms:
    @given(a=small_series(), b=small_series(), c=small_series())
    def test_associativity_distributivity(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)

    @given(a=small_series())
    def test_one_and_zero(self, a):
        assert a * QYSeries.one(2, 2) == a
        assert a + QYSeries.zero(2, 2) == a


class TestReporting:
    def test_empty(self):
        assert series_report(QYSeries.zero(1)) == "0"

    def test_sorted_terms(self):
        s = S(0, {(0, 0): 1, (0, 1): 1})
        assert [(str(q), str(y), c.to_json())
                for (q, y), c in s.sorted_terms()] == [
            ("0", "0", "1"), ("0", "1", "1")]
        assert series_report(s) == "1 + y"

    def test_half_integer_y_report(self):
        s = S(0, {(0, rat(-1, 2)): 1, (0, 0): 2, (0, rat(1, 2)): -1})
        assert [(str(q), str(y), c.to_json())
                for (q, y), c in s.sorted_terms()] == [
            ("0", "-1/2", "1"), ("0", "0", "2"), ("0", "1/2", "-1")]
        assert series_report(s) == "y^-1/2 + 2 - y^1/2"

    def test_json_roundtrip(self):
        s = S(2, {(rat(1, 2), rat(-1)): rat(3, 4), (0, 0): 2}, qden=2)
        data = series_to_json(s)
        assert data["qden"] == 2
        assert data["terms"][0] == {"q": "0", "y": "0", "coeff": "2"}
        text = json.dumps(data)
        back = series_from_json(json.loads(text))
        assert back.terms == s.terms

    def test_deterministic_output(self):
        s1 = S(2, {(1, 2): 5, (0, 0): 1, (1, -2): 3})
        s2 = S(2, {(1, -2): 3, (0, 0): 1, (1, 2): 5})
        assert series_report(s1) == series_report(s2)
        assert series_to_json(s1) == series_to_json(s2)
