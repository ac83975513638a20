import math

import numpy as np
import pytest

from ruleout import metrics
from ruleout.errors import RuleoutException
from ruleout.metrics import (ConfusionCounts, RdPoint, RocPoint,
                             UtilityContext)

BASELINE = RocPoint(0.906, 0.065)
US = UtilityContext(0.007, 162)


def _random_point(rng):
    return RocPoint(rng.uniform(), rng.uniform())


def _random_context(rng):
    return UtilityContext(rng.uniform(0.001, 0.5), rng.uniform(0.5, 500))


def test_roc_point_rejects_rates_outside_unit_interval():
    with pytest.raises(RuleoutException):
        RocPoint(1.2, 0.1)
    with pytest.raises(RuleoutException):
        RocPoint(0.5, -0.1)


def test_roc_point_from_counts():
    counts = ConfusionCounts(n_tp=173, n_fp=1713, n_tn=24636, n_fn=18)
    p = RocPoint.from_counts(counts)
    assert p.tpr == 173 / 191
    assert p.fpr == 1713 / 26349
    assert p.counts == counts


def test_roc_point_rejects_inconsistent_counts():
    counts = ConfusionCounts(n_tp=173, n_fp=1713, n_tn=24636, n_fn=18)
    with pytest.raises(RuleoutException):
        RocPoint(0.906, 0.065, counts)


def test_confusion_counts_must_be_non_negative_integers():
    with pytest.raises(RuleoutException):
        ConfusionCounts(1, -1, 3, 4)
    with pytest.raises(RuleoutException):
        ConfusionCounts(1, 2.5, 3, 4)


def test_rd_point_detection_cannot_exceed_recall():
    with pytest.raises(RuleoutException):
        RdPoint(0.01, 0.02)


def test_utility_context_validation():
    with pytest.raises(RuleoutException):
        UtilityContext(0.0, 162)
    with pytest.raises(RuleoutException):
        UtilityContext(0.007, 0)
    with pytest.raises(RuleoutException):
        UtilityContext.from_outcome_utilities(0.007, 0, 0, 1, 1)
    with pytest.raises(RuleoutException):
        UtilityContext(0.007, 100,
                       metrics.OutcomeUtilities(162, 0, 1, 0))


def test_utility_context_from_outcome_utilities():
    ctx = UtilityContext.from_outcome_utilities(0.007, 162, 0, 1, 0)
    assert ctx.relative_utility == 162
    assert ctx.prevalence_odds == pytest.approx(0.993 / 0.007, rel=1e-12)


def test_likelihood_ratios():
    plus, minus = metrics.likelihood_ratios(BASELINE)
    assert plus == pytest.approx(13.938, abs=1e-3)
    assert minus == pytest.approx(0.1005, abs=1e-4)

    assert metrics.likelihood_ratios(RocPoint(0.5, 0.5)) == (1.0, 1.0)
    assert metrics.likelihood_ratios(RocPoint(1.0, 0.0)) == (math.inf, 0.0)


def test_likelihood_ratio_corners():
    assert metrics.likelihood_ratios(RocPoint(0.0, 0.0))[0] == 1.0
    assert metrics.likelihood_ratios(RocPoint(1.0, 1.0))[1] == 1.0
    assert metrics.likelihood_ratios(RocPoint(0.3, 1.0))[1] == math.inf


def test_ppv():
    assert metrics.ppv(BASELINE, US) == pytest.approx(0.0895, abs=5e-5)
    assert metrics.ppv(RocPoint(0.5, 0.5), US) == pytest.approx(0.007)
    assert metrics.ppv(RocPoint(1.0, 0.0), US) == 1.0


def test_npv():
    assert metrics.npv(BASELINE, US) == pytest.approx(0.9993, abs=5e-4)
    assert metrics.npv(RocPoint(0.5, 0.5), US) == pytest.approx(0.993)
    assert metrics.npv(RocPoint(1.0, 0.0), US) == 1.0


def test_ppv_matches_two_by_two_recount():
    # 10**6 patients at 0.7% prevalence with the baseline rates
    counts = ConfusionCounts(n_tp=6342, n_fp=64545, n_tn=928455, n_fn=658)
    ctx = UtilityContext(metrics.counts_prevalence(counts))
    p = RocPoint.from_counts(counts)

    ppv, npv = metrics.predictive_values_from_counts(counts)
    assert metrics.ppv(p, ctx) == pytest.approx(ppv, rel=1e-12)
    assert metrics.npv(p, ctx) == pytest.approx(npv, rel=1e-12)
    assert ppv == pytest.approx(0.0895, abs=5e-5)


def test_stated_prevalence_understates_published_ppv():
    # 191 cancers among 26540 exams rather than 0.7%
    ctx = UtilityContext(191 / 26540)
    assert metrics.ppv(BASELINE, ctx) == pytest.approx(0.0918, abs=5e-5)


def test_expected_utility():
    perfect = UtilityContext.from_outcome_utilities(0.3, 1, 0, 1, 0)
    assert metrics.expected_utility(RocPoint(1.0, 0.0), perfect) == \
        pytest.approx(1.0)

    flat = UtilityContext(0.3, 1, metrics.OutcomeUtilities(2, 1, 2, 1))
    assert metrics.expected_utility(BASELINE, flat) == pytest.approx(
        2 * 0.3 * 0.906 + 0.3 * 0.094 + 2 * 0.7 * 0.935 + 0.7 * 0.065)

    us = UtilityContext.from_outcome_utilities(0.007, 162, 0, 1, 0)
    assert metrics.expected_utility(BASELINE, us) == pytest.approx(
        1.9559, abs=1e-4)


def test_expected_utility_of_shifted_utilities():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = _random_point(rng)
        k = rng.uniform(-5, 5)
        ctx = UtilityContext(
            0.2, 1, metrics.OutcomeUtilities(k + 1, k, k + 1, k))
        expected = (k + 1) * (0.2 * p.tpr + 0.8 * (1 - p.fpr)) + \
            k * (0.2 * (1 - p.tpr) + 0.8 * p.fpr)
        assert metrics.expected_utility(p, ctx) == pytest.approx(expected)


def test_expected_utility_needs_outcome_utilities():
    with pytest.raises(RuleoutException):
        metrics.expected_utility(BASELINE, US)


def test_expected_utility_from_iui():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        p = _random_point(rng)
        u_fn = rng.uniform(-1, 1)
        u_fp = rng.uniform(-1, 1)
        ctx = UtilityContext.from_outcome_utilities(
            rng.uniform(0.001, 0.5),
            u_fn + rng.uniform(0.1, 200), u_fp,
            u_fp + rng.uniform(0.1, 2), u_fn)
        assert metrics.expected_utility_from_iui(
            metrics.iui(p, ctx), ctx) == pytest.approx(
                metrics.expected_utility(p, ctx), rel=1e-9, abs=1e-9)


def test_iso_slope_roc():
    assert metrics.iso_slope_roc(US) == pytest.approx(0.87566, abs=1e-5)
    assert metrics.iso_slope_roc(UtilityContext(0.5, 1)) == 1.0
    assert metrics.iso_slope_roc(UtilityContext(0.007, 1e12)) < 1e-9


def test_iso_slope_roc_needs_relative_utility():
    with pytest.raises(RuleoutException):
        metrics.iso_slope_roc(UtilityContext(0.007))


def test_iso_slope_rd():
    assert metrics.iso_slope_rd(111) == 1 / 112


def test_iui():
    assert metrics.iui(BASELINE, US) == pytest.approx(0.849, abs=0.005)
    assert metrics.iui(RocPoint(0.539, 0.012), US) == pytest.approx(
        0.529, abs=0.005)
    assert metrics.iui(RocPoint(0.42, 0.0), US) == 0.42


@pytest.mark.parametrize('recall_rate,detection_rate,expected', [
    (0.032, 0.0061, 5.83e-3),
    (0.026, 0.0060, 5.74e-3),
    (0.021, 0.0058, 5.66e-3),
    (0.012, 0.0053, 5.21e-3),
])
def test_diui(recall_rate, detection_rate, expected):
    p = RdPoint(recall_rate, detection_rate)
    assert metrics.diui(p, 111) == pytest.approx(expected, abs=0.1e-3)


def test_diui_of_origin():
    assert metrics.diui(RdPoint(0.0, 0.0), 111) == 0.0


def test_roc_to_rd():
    rd = metrics.roc_to_rd(BASELINE, US)
    assert rd.recall_rate == pytest.approx(0.070887, abs=1e-6)
    assert rd.detection_rate == pytest.approx(0.006342, abs=1e-6)

    perfect = metrics.roc_to_rd(RocPoint(1.0, 0.0), US)
    assert perfect.recall_rate == pytest.approx(0.007, rel=1e-12)
    assert perfect.detection_rate == pytest.approx(0.007, rel=1e-12)

    assert metrics.roc_to_rd(RocPoint(0.0, 0.0), US) == RdPoint(0.0, 0.0)


def test_roc_to_rd_carries_population_size():
    counts = ConfusionCounts(n_tp=173, n_fp=1713, n_tn=24636, n_fn=18)
    rd = metrics.roc_to_rd(RocPoint.from_counts(counts), US)
    assert rd.n_patients == 26540


def test_rd_to_roc():
    p = metrics.rd_to_roc(RdPoint(0.007, 0.007), US)
    assert p.tpr == pytest.approx(1.0)
    assert p.fpr == pytest.approx(0.0, abs=1e-15)

    p = metrics.rd_to_roc(RdPoint(0.070887, 0.006342), US)
    assert p.tpr == pytest.approx(0.906, abs=1e-6)
    assert p.fpr == pytest.approx(0.065, abs=1e-6)


def test_rd_to_roc_rejects_impossible_points():
    with pytest.raises(RuleoutException):
        metrics.rd_to_roc(RdPoint(0.5, 0.02), US)
    with pytest.raises(RuleoutException):
        metrics.rd_to_roc(RdPoint(1.0, 0.0), US)


def test_roc_rd_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(10 ** 4):
        p = _random_point(rng)
        ctx = _random_context(rng)
        back = metrics.rd_to_roc(metrics.roc_to_rd(p, ctx), ctx)
        assert abs(back.tpr - p.tpr) <= 1e-12
        assert abs(back.fpr - p.fpr) <= 1e-12


def test_cross_space_identity():
    rng = np.random.default_rng(1)
    for _ in range(10 ** 4):
        p = _random_point(rng)
        ctx = _random_context(rng)
        u = ctx.relative_utility
        expected = ctx.prevalence * u / (1 + u) * metrics.iui(p, ctx)
        actual = metrics.diui(metrics.roc_to_rd(p, ctx), u)
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_iso_utility_invariance():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        ctx = _random_context(rng)
        slope = metrics.iso_slope_roc(ctx)
        c = rng.uniform(0, 1)
        fprs = rng.uniform(0, min(1.0, 0.999 * (1 - c) / slope), size=2)
        a, b = [RocPoint(c + slope * f, f) for f in fprs]
        assert metrics.iui(a, ctx) == pytest.approx(
            metrics.iui(b, ctx), abs=1e-12)


def test_dominance_implies_predictive_value_and_utility_dominance():
    rng = np.random.default_rng(4)
    for _ in range(10 ** 4):
        b = _random_point(rng)
        a = RocPoint(rng.uniform(b.tpr, 1.0), rng.uniform(0.0, b.fpr))
        if a.tpr == b.tpr and a.fpr == b.fpr:
            continue
        ctx = _random_context(rng)
        assert metrics.ppv(a, ctx) >= metrics.ppv(b, ctx) - 1e-12
        assert metrics.npv(a, ctx) >= metrics.npv(b, ctx) - 1e-12
        assert metrics.iui(a, ctx) >= metrics.iui(b, ctx)


def test_predictive_values_monotone_in_likelihood_ratios():
    rng = np.random.default_rng(5)
    for _ in range(10 ** 4):
        a = _random_point(rng)
        b = _random_point(rng)
        ctx = _random_context(rng)
        plus_a, minus_a = metrics.likelihood_ratios(a)
        plus_b, minus_b = metrics.likelihood_ratios(b)
        if plus_a > plus_b * (1 + 1e-6):
            assert metrics.ppv(a, ctx) > metrics.ppv(b, ctx)
        if minus_a < minus_b * (1 - 1e-6):
            assert metrics.npv(a, ctx) > metrics.npv(b, ctx)


def test_expected_utility_ranks_like_iui():
    rng = np.random.default_rng(6)
    for _ in range(10 ** 4):
        a = _random_point(rng)
        b = _random_point(rng)
        pi = rng.uniform(0.001, 0.5)
        u = rng.uniform(0.5, 500)
        ctx = UtilityContext.from_outcome_utilities(pi, u, 0, 1, 0)
        eu_gap = metrics.expected_utility(a, ctx) - \
            metrics.expected_utility(b, ctx)
        iui_gap = metrics.iui(a, ctx) - metrics.iui(b, ctx)
        if abs(iui_gap) > 1e-6:
            assert (eu_gap > 0) == (iui_gap > 0)


def test_relative_utility_from_roc_slope():
    assert metrics.relative_utility_from_roc_slope(
        0.87566, 0.007) == pytest.approx(162, abs=0.01)
    q = metrics.prevalence_odds(0.2)
    assert metrics.relative_utility_from_roc_slope(q, 0.2) == 1.0
    assert metrics.relative_utility_from_roc_slope(1.0, 0.5) == 1.0
    with pytest.raises(RuleoutException):
        metrics.relative_utility_from_roc_slope(0.0, 0.5)


def test_relative_utility_from_rd_slope():
    assert metrics.relative_utility_from_rd_slope(1 / 112) == \
        pytest.approx(111, rel=1e-12)
    assert metrics.relative_utility_from_rd_slope(0.5) == 1.0
    assert metrics.relative_utility_from_rd_slope(1 / 163) == \
        pytest.approx(162, rel=1e-12)


@pytest.mark.parametrize('slope', [0.0, -0.1, 1.0, 1.5])
def test_relative_utility_from_rd_slope_domain(slope):
    with pytest.raises(RuleoutException):
        metrics.relative_utility_from_rd_slope(slope)


@pytest.mark.parametrize('u', [1, 10, 111, 162, 1000])
def test_rd_slope_round_trip(u):
    assert metrics.relative_utility_from_rd_slope(
        metrics.iso_slope_rd(u)) == pytest.approx(u, rel=1e-12)
