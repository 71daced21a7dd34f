import numpy as np
import pytest

from hetseq.data import Dataset, DgpConfig, TauSpec, generate, true_cate
from hetseq.errors import ConfigError, DomainError, FitError
from hetseq.learner import LearnerKind, LearnerSpec, fit, predict
from hetseq.rng import RngStream
from oracles import knn_mean_brute

RNG = RngStream(0, 0)
KNN1 = LearnerSpec(LearnerKind.KNN_T, 1)


def _random_data(n, p, seed):
    g = np.random.default_rng(seed)
    return Dataset(g.uniform(-1, 1, (n, p)), g.integers(0, 2, n), g.normal(size=n))


def test_zero_learner_predicts_zero():
    data = _random_data(30, 3, 0)
    model = fit(LearnerSpec(LearnerKind.ZERO), data, np.arange(30), RNG)
    assert np.array_equal(predict(model, np.ones((5, 3))), np.zeros(5))


def test_knn_two_point_hand_trace():
    data = Dataset(np.array([[0.0], [1.0]]), [1, 0], [3.0, 1.0])
    model = fit(KNN1, data, [0, 1], RNG)
    assert predict(model, [[0.0]])[0] == 2.0


def test_knn_full_arm_is_difference_in_means():
    data = _random_data(40, 2, 1)
    big = LearnerSpec(LearnerKind.KNN_T, 40)
    model = fit(big, data, np.arange(40), RNG)
    expected = data.y[data.d == 1].mean() - data.y[data.d == 0].mean()
    assert np.allclose(model.predict(np.random.default_rng(2).uniform(-1, 1, (7, 2))), expected,
                       rtol=0, atol=1e-12)


def test_auto_k_rule():
    data = _random_data(50, 2, 3)
    train = np.arange(50)
    n1 = int(data.d.sum())
    model = fit(LearnerSpec(), data, train, RNG)
    k = int(np.ceil(np.sqrt(min(n1, 50 - n1))))
    assert model.k1 == model.k0 == k


@pytest.mark.parametrize("k", [1, 3, 8])
def test_knn_against_brute_force(k):
    data = _random_data(60, 3, 4)
    train = np.arange(0, 60, 1)
    model = fit(LearnerSpec(LearnerKind.KNN_T, k), data, train, RNG)
    q = np.random.default_rng(5).uniform(-1, 1, (15, 3))
    t, c = data.d == 1, data.d == 0
    ref = (np.array(knn_mean_brute(q.tolist(), data.z[t].tolist(), data.y[t].tolist(), k))
           - np.array(knn_mean_brute(q.tolist(), data.z[c].tolist(), data.y[c].tolist(), k)))
    assert np.allclose(model.predict(q), ref, rtol=0, atol=1e-12)


def test_ties_go_to_lowest_index():
    # treated points 0, 1, 2 are all at distance 1 from the query; k=2 keeps the first two
    z = np.array([[1.0], [-1.0], [1.0], [0.0]])
    data = Dataset(z, [1, 1, 1, 0], [10.0, 20.0, 30.0, 0.0])
    model = fit(LearnerSpec(LearnerKind.KNN_T, 2), data, [0, 1, 2, 3], RNG)
    assert model.predict([[0.0]])[0] == 15.0


def test_permuting_training_rows_leaves_predictions_unchanged():
    data = _random_data(80, 4, 6)
    perm = np.random.default_rng(7).permutation(80)
    shuffled = data.subset(perm)
    q = np.random.default_rng(8).uniform(-1, 1, (20, 4))
    a = fit(LearnerSpec(LearnerKind.KNN_T, 5), data, np.arange(80), RNG).predict(q)
    b = fit(LearnerSpec(LearnerKind.KNN_T, 5), shuffled, np.arange(80), RNG).predict(q)
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_duplicate_rows_duplicate_predictions():
    data = _random_data(40, 2, 9)
    model = fit(LearnerSpec(), data, np.arange(40), RNG)
    q = np.array([[0.1, 0.2], [0.1, 0.2]])
    out = model.predict(q)
    assert out[0] == out[1]
    assert np.array_equal(out, model.predict(q))


def test_train_subset_respected():
    data = _random_data(40, 2, 10)
    train = np.arange(20)
    model = fit(LearnerSpec(LearnerKind.KNN_T, 100), data, train, RNG)
    sub = data.subset(train)
    expected = sub.y[sub.d == 1].mean() - sub.y[sub.d == 0].mean()
    assert model.predict([[0.0, 0.0]])[0] == pytest.approx(expected, abs=1e-12)


def test_errors():
    data = Dataset(np.zeros((3, 2)), [1, 1, 0], [1.0, 2.0, 3.0])
    with pytest.raises(FitError):
        fit(LearnerSpec(), data, [0, 1], RNG)
    with pytest.raises(FitError):
        fit(LearnerSpec(), data, [], RNG)
    model = fit(LearnerSpec(), data, [0, 1, 2], RNG)
    with pytest.raises(DomainError):
        model.predict(np.zeros((2, 3)))
    with pytest.raises(ConfigError):
        LearnerSpec(LearnerKind.KNN_T, 0)


def test_knn_beats_constant_predictor_at_large_n():
    data = generate(DgpConfig(100_000, 10, tau_spec=TauSpec.RELU_Z1), RngStream(21, 0))
    model = fit(LearnerSpec(), data, np.arange(data.n), RNG)
    fresh = generate(DgpConfig(1000, 10, tau_spec=TauSpec.RELU_Z1), RngStream(21, 1))
    truth = true_cate(TauSpec.RELU_Z1, fresh.z)
    mse = np.mean((model.predict(fresh.z) - truth) ** 2)
    # Var((Z1)+) for Z1 ~ U[-1, 1]: 1/6 - 1/16
    assert mse < 1 / 6 - 1 / 16
