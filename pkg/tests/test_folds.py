import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hetseq.errors import DomainError
from hetseq.folds import (
    FoldPlan,
    eval_indices,
    make_plan,
    train_indices_crossfold,
    train_indices_sequential,
)
from hetseq.rng import RngStream


def test_even_split():
    plan = make_plan(10, 5, RngStream(0, 0))
    assert list(plan.sizes()) == [2] * 5


def test_remainder_goes_to_first_folds():
    plan = make_plan(11, 5, RngStream(0, 1))
    assert list(plan.sizes()) == [3, 2, 2, 2, 2]


def test_plans_from_different_streams_differ():
    # P(two uniform 5-fold splits of 1000 units coincide) is astronomically small
    a = make_plan(1000, 5, RngStream(0, 1))
    b = make_plan(1000, 5, RngStream(0, 2))
    assert not np.array_equal(a.assignments, b.assignments)
    assert np.array_equal(a.assignments, make_plan(1000, 5, RngStream(0, 1)).assignments)


@pytest.mark.parametrize("n, K", [(5, 1), (3, 4), (10, 0)])
def test_make_plan_domain(n, K):
    with pytest.raises(DomainError):
        make_plan(n, K, RngStream(0, 0))


def test_fold_membership_is_uniform():
    n, K, reps = 20, 4, 2000
    hits = np.zeros(n)
    for r in range(reps):
        hits += make_plan(n, K, RngStream(5, r)).assignments == 1
    expected = reps / K
    assert np.all(np.abs(hits - expected) < 5 * np.sqrt(expected * (1 - 1 / K)))


def test_index_sets_on_fixed_plan():
    plan = FoldPlan([1, 2, 1, 2], 2)
    assert list(eval_indices(plan, 1)) == [0, 2]
    assert list(eval_indices(plan, 2)) == [1, 3]
    assert list(train_indices_crossfold(plan, 1)) == [1, 3]
    assert list(train_indices_crossfold(plan, 2)) == [0, 2]


def test_sequential_prefixes():
    plan = FoldPlan([1, 2, 3, 1, 2, 3], 3)
    assert list(train_indices_sequential(plan, 2)) == [0, 3]
    assert list(train_indices_sequential(plan, 3)) == [0, 1, 3, 4]
    with pytest.raises(DomainError):
        train_indices_sequential(plan, 1)


@pytest.mark.parametrize("k", [0, 4])
def test_out_of_range_labels(k):
    plan = FoldPlan([1, 2, 3], 3)
    for fn in (eval_indices, train_indices_crossfold, train_indices_sequential):
        with pytest.raises(DomainError):
            fn(plan, k)


def test_plan_rejects_missing_labels():
    with pytest.raises(DomainError):
        FoldPlan([1, 1, 2], 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 200).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, min(n, 12)))),
       st.integers(0, 2**32))
def test_partition_properties(nk, seed):
    n, K = nk
    plan = make_plan(n, K, RngStream(seed, 0))
    sizes = plan.sizes()
    assert sizes.max() - sizes.min() <= 1 and sizes.sum() == n
    evals = [set(eval_indices(plan, k)) for k in range(1, K + 1)]
    assert set().union(*evals) == set(range(n))
    assert sum(len(e) for e in evals) == n
    prev = set()
    for k in range(1, K + 1):
        cross = set(train_indices_crossfold(plan, k))
        assert not cross & evals[k - 1] and len(cross) + len(evals[k - 1]) == n
        if k >= 2:
            seq = set(train_indices_sequential(plan, k))
            assert not seq & evals[k - 1]
            assert prev < seq
            prev = seq
