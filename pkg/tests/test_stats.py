import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats as sps

from lbsim.engine import Scenario, run
from lbsim.stats import (BatchAccumulator, InsufficientDataError, PrecisionTarget, ci_halfwidth,
                         record_response, should_stop, t_quantile, utilization)


def test_first_batch_is_warmup():
    acc = BatchAccumulator(4)
    for x in (1, 2, 3, 4):
        record_response(acc, x)
    assert acc.discarded_warmup and acc.warmup_sum / 4 == 2.5
    assert acc.batch_means == []
    for x in (2, 2, 2, 2):
        record_response(acc, x)
    assert acc.batch_means == [2.0]


def test_negative_response_rejected():
    with pytest.raises(ValueError):
        BatchAccumulator(4).record(-0.1)


@given(st.integers(1, 20), st.lists(st.floats(0, 1e4, allow_nan=False), max_size=300))
def test_no_response_is_lost(batch_size, xs):
    acc = BatchAccumulator(batch_size)
    for x in xs:
        acc.record(x)
    stored = acc.warmup_sum + sum(m * batch_size for m in acc.batch_means) + acc.current_batch_sum
    assert stored == pytest.approx(math.fsum(xs), rel=1e-9, abs=1e-9)
    assert acc.n_recorded == len(xs)
    full = len(xs) // batch_size
    assert acc.n_batches == max(full - 1, 0)


def test_identical_batches_have_zero_halfwidth():
    acc = BatchAccumulator(3)
    for _ in range(11 * 3):
        acc.record(3.0)
    assert acc.n_batches == 10
    assert ci_halfwidth(acc.batch_means) == (3.0, 0.0)
    assert ci_halfwidth([2, 2, 2, 2]) == (2.0, 0.0)


def test_two_batches_use_t_with_one_dof():
    mean, hw = ci_halfwidth([1, 3], 0.95)
    assert mean == 2.0
    assert hw == pytest.approx(12.706, abs=5e-4)  # published t(1, 0.975)


def test_halfwidth_matches_reference_implementation():
    x = np.random.default_rng(17).normal(10, 1, 30)
    mean, hw = ci_halfwidth(x.tolist(), 0.95)
    ref = sps.t.ppf(0.975, 29) * sps.sem(x)
    assert mean == pytest.approx(x.mean(), abs=1e-12)
    assert abs(hw - ref) < 1e-9


@pytest.mark.parametrize("confidence", [0.90, 0.95, 0.98, 0.99])
@pytest.mark.parametrize("dof", [1, 2, 5, 29, 120])
def test_t_table_against_scipy(confidence, dof):
    assert t_quantile(dof, confidence) == pytest.approx(sps.t.ppf(1 - (1 - confidence) / 2, dof), rel=1e-12)


def test_t_table_normal_tail():
    assert t_quantile(121, 0.95) == pytest.approx(1.959964, abs=1e-6)


def test_unsupported_confidence():
    with pytest.raises(ValueError, match="not in table"):
        t_quantile(5, 0.97)
    with pytest.raises(ValueError):
        PrecisionTarget(confidence=0.5)


def test_insufficient_batches():
    with pytest.raises(InsufficientDataError):
        ci_halfwidth([1.0])


def _acc_with(means, batch_size=1):
    acc = BatchAccumulator(batch_size)
    acc.record(0.0)  # warm-up
    for m in means:
        acc.record(m)
    return acc


def test_should_stop_needs_min_batches():
    assert not should_stop(_acc_with([2.0] * 5), PrecisionTarget(min_batches=30))
    assert should_stop(_acc_with([2.0] * 30), PrecisionTarget(min_batches=30))


def _means_with_halfwidth(mean, hw, n=30):
    # symmetric +/- d sample whose t-interval has exactly the requested halfwidth
    t = t_quantile(n - 1, 0.95)
    s = hw * math.sqrt(n) / t
    d = s * math.sqrt((n - 1) / n)
    return [mean + d, mean - d] * (n // 2)


@pytest.mark.parametrize("hw,expected", [(0.019, True), (0.021, False)])
def test_should_stop_threshold(hw, expected):
    means = _means_with_halfwidth(2.0, hw)
    assert ci_halfwidth(means)[1] == pytest.approx(hw)
    assert should_stop(_acc_with(means), PrecisionTarget(relative_halfwidth=0.01, min_batches=30)) is expected


def test_utilization_examples():
    assert utilization(0, 100) == 0.0
    assert utilization(50, 100) == 0.5
    with pytest.raises(ValueError):
        utilization(101, 100)


def test_random_utilization_matches_offered_load():
    res = run(Scenario(0.5, master_seed=5), "random")
    assert all(0.48 <= u <= 0.52 for u in res.per_server_utilization)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_more_min_batches_never_widens_final_interval(seed):
    def final_hw(min_batches):
        p = PrecisionTarget(relative_halfwidth=0.03, batch_size=500, min_batches=min_batches)
        return run(Scenario(0.7, master_seed=seed), "random", p).ci_halfwidth_s

    assert final_hw(60) <= final_hw(30)
