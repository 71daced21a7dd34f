import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hetseq.aggregate import aggregate_median, aggregate_naive, aggregate_sequential
from hetseq.errors import DomainError
from oracles import median_of, two_sided_p_oracle

# frozen from oracles.two_sided_p_oracle
P_SQRT5 = 0.025347318677468256
P_4 = 6.334248366623985e-05

finite_t = st.floats(-20, 20, allow_nan=False)


def test_naive_examples():
    assert aggregate_naive([0, 0, 0, 0, 0]) == 1.0
    assert aggregate_naive([1, 1, 1, 1, 1]) == pytest.approx(P_SQRT5, abs=1e-14)
    assert aggregate_naive([3, -3]) == 1.0


def test_median_examples():
    assert aggregate_median([0.2, 0.5, 0.8]) == 0.5
    assert aggregate_median([0.1, 0.2, 0.6, 0.9]) == pytest.approx(0.4, abs=1e-15)
    assert aggregate_median([0.03, 0.03, 0.03, 0.9, 0.9]) == 0.03


def test_sequential_examples():
    assert aggregate_sequential([0, 0, 0, 0]) == 1.0
    assert aggregate_sequential([2, 2, 2, 2]) == pytest.approx(P_4, rel=1e-13)
    assert aggregate_sequential([1.7]) == pytest.approx(two_sided_p_oracle(1.7), abs=1e-15)


@pytest.mark.parametrize("fn", [aggregate_naive, aggregate_median, aggregate_sequential])
def test_empty_rejected(fn):
    with pytest.raises(DomainError):
        fn([])


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        aggregate_naive([1.0, math.inf])


@given(st.lists(finite_t, min_size=1, max_size=12), st.randoms())
def test_pooled_reducers_identity_and_symmetry(ts, rnd):
    p = aggregate_naive(ts)
    assert p == aggregate_sequential(ts)
    assert 0.0 <= p <= 1.0
    shuffled = ts[:]
    rnd.shuffle(shuffled)
    assert aggregate_naive(shuffled) == p
    assert aggregate_naive([-t for t in ts]) == p


@given(st.lists(st.floats(0, 1), min_size=1, max_size=12), st.randoms())
def test_median_properties(ps, rnd):
    m = aggregate_median(ps)
    assert m == pytest.approx(median_of(ps), abs=1e-15)
    shuffled = ps[:]
    rnd.shuffle(shuffled)
    assert aggregate_median(shuffled) == m
    assert 0.0 <= m <= 1.0
