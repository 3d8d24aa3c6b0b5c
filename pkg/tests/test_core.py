import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troptensor import (INF, HypothesisViolation, Tensor, canonicalize, check_support_hypothesis,
                        tropical_apply, tropical_scale)
from troptensor.core import canonical_keys, is_fully_symmetric, parse_value
from troptensor.errors import DimensionMismatch, ParseError

from conftest import random_rational

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)


def dense_apply(raw, x):
    """Row minima over every full index tuple, no canonical storage."""
    n, m = raw.shape[0], raw.ndim
    out = []
    for i in range(n):
        best = INF
        for rest in itertools.product(range(n), repeat=m - 1):
            v = raw[(i,) + rest]
            if v != INF:
                best = min(best, v + sum(x[j] for j in rest))
        out.append(best)
    return out


def random_raw(rng, n, m, p_inf=0.0):
    raw = np.empty((n,) * m, dtype=object)
    for idx in itertools.product(range(n), repeat=m):
        raw[idx] = INF if rng.random() < p_inf else random_rational(rng)
    return raw


class TestParse:
    @pytest.mark.parametrize("text, value", [
        ("0.25", Fraction(1, 4)), ("-1", Fraction(-1)), ("2/3", Fraction(2, 3)),
        ("−1", Fraction(-1)), (" 7 ", Fraction(7)), ("inf", INF), ("1e-3", Fraction(1, 1000)),
    ])
    def test_exact(self, text, value):
        assert parse_value(text) == value

    @pytest.mark.parametrize("text", ["abc", "1/0", "", "-inf"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_value(text)

    @given(rationals)
    def test_round_trip(self, q):
        back = parse_value(str(q))
        assert back == q
        assert math.gcd(back.numerator, back.denominator) == 1 and back.denominator > 0

    @given(rationals, rationals.filter(bool))
    def test_division_is_exact(self, a, b):
        assert (a / b) * b == a


class TestCanonicalize:
    def test_orbit_min(self):
        raw = np.zeros((2, 2, 2), dtype=object)
        raw[0, 0, 1] = 5
        raw[0, 1, 0] = 3
        A = canonicalize(raw)
        assert A[(0, (0, 1))] == 3

    def test_three_cycle_entries(self, tc33):
        for k, v in tc33.items():
            expected = -1 if k in {(0, (1, 2)), (1, (0, 2)), (2, (1, 1))} else 0
            assert v == expected

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            canonicalize(np.zeros((2, 3), dtype=object))

    def test_canonical_count(self):
        for n, m in [(1, 2), (2, 3), (3, 3), (3, 4)]:
            assert len(canonical_keys(n, m)) == n * math.comb(n + m - 2, m - 1)

    def test_idempotent_and_apply_matches_dense(self):
        rng = random.Random(7)
        for _ in range(50):
            n, m = rng.randint(1, 3), rng.randint(2, 4)
            raw = random_raw(rng, n, m, p_inf=0.2)
            A = canonicalize(raw)
            assert canonicalize(A.to_dense()) == A
            x = [random_rational(rng) for _ in range(n)]
            assert tropical_apply(A, x) == dense_apply(raw, x)

    def test_m_equal_one_rejected(self):
        with pytest.raises(DimensionMismatch):
            canonicalize(np.zeros(3, dtype=object))

    def test_from_entries_duplicates_take_min(self):
        A = Tensor.from_entries(2, 3, [((0, 0, 1), 4), ((0, 1, 0), 2), ((0, 0, 1), 9)], default=INF)
        assert A[(0, 1, 0)] == 2


class TestApply:
    def test_zero(self, zero23):
        assert tropical_apply(zero23, [0, 0]) == [0, 0]

    def test_skew(self, sk23):
        assert tropical_apply(sk23, [Fraction(2, 3), 0]) == [2, Fraction(2, 3)]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3), st.integers(2, 4), st.randoms(use_true_random=False), rationals)
    def test_homogeneity(self, n, m, rnd, c):
        A = Tensor(n, m, {k: random_rational(rnd) for k in canonical_keys(n, m)})
        x = [random_rational(rnd) for _ in range(n)]
        shifted = tropical_apply(A, [v + c for v in x])
        assert shifted == [v + (m - 1) * c for v in tropical_apply(A, x)]

    def test_infinite_row(self):
        A = Tensor.from_entries(2, 2, [((1, 0), 1)], default=INF)
        assert tropical_apply(A, [0, 0]) == [INF, 1]


class TestSupport:
    def test_all_finite(self):
        S = check_support_hypothesis(Tensor.constant(3, 3, 1))
        assert S == frozenset(itertools.combinations_with_replacement(range(3), 2))

    def test_violation_names_row(self):
        A = Tensor.from_entries(2, 3, [((0, 0, 1), 0), ((1, 0, 0), 0)], default=INF)
        with pytest.raises(HypothesisViolation) as err:
            check_support_hypothesis(A)
        assert err.value.row == 1
        assert "row 2" in str(err.value)

    def test_common_support(self):
        A = Tensor.from_entries(2, 3, [((0, 0, 1), 1), ((0, 1, 1), 2), ((1, 0, 1), 3), ((1, 1, 1), 4)],
                                default=INF)
        assert check_support_hypothesis(A) == {(0, 1), (1, 1)}

    def test_empty_row(self):
        A = Tensor.from_entries(2, 2, [((0, 0), 1)], default=INF)
        with pytest.raises(HypothesisViolation):
            check_support_hypothesis(A)


class TestScale:
    def test_zero_plus_five(self, zero23):
        assert tropical_scale(zero23, 5) == Tensor.constant(2, 3, 5)

    def test_three_cycle_plus_one(self, tc33):
        B = tropical_scale(tc33, 1)
        low = {(0, (1, 2)), (1, (0, 2)), (2, (1, 1))}
        assert all(v == (0 if k in low else 1) for k, v in B.items())

    def test_identity_and_inf(self):
        A = Tensor.from_entries(2, 2, [((0, 0), 3)], default=INF)
        assert tropical_scale(A, 0) == A
        assert tropical_scale(A, 2)[(1, 1)] == INF


def test_full_symmetry_detection():
    assert is_fully_symmetric(Tensor.constant(3, 3, 2))
    assert not is_fully_symmetric(Tensor.from_entries(2, 3, [((0, 1, 1), -1)]))
