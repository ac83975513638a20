import math

import numpy as np
import pytest

from ruleout import metrics, regions
from ruleout.errors import RuleoutException
from ruleout.metrics import RocPoint, UtilityContext

US = UtilityContext(0.007, 162)
BASELINE = RocPoint(0.906, 0.065)


def test_dominating_candidate_is_superior_everywhere():
    verdict = regions.classify(RocPoint(0.92, 0.05), BASELINE, US)
    assert verdict.sesp_superior
    assert verdict.ppv_npv_superior
    assert verdict.eu_superior


def test_ruleout_candidate():
    verdict = regions.classify(RocPoint(0.901, 0.061), BASELINE, US)
    assert not verdict.sesp_superior
    assert not verdict.ppv_npv_superior
    assert not verdict.eu_superior


def test_predictive_values_without_dominance():
    ctx = UtilityContext(0.5, 1)
    verdict = regions.classify(RocPoint(0.45, 0.4), RocPoint(0.5, 0.5), ctx)
    assert not verdict.sesp_superior
    assert verdict.ppv_npv_superior
    assert verdict.eu_superior


def test_identical_points_are_not_superior():
    verdict = regions.classify(BASELINE, BASELINE, US)
    assert verdict == (False, False, False, verdict.boundary_lines)


def test_infinite_ratio_ties():
    ref = RocPoint(0.5, 0.0)
    verdict = regions.classify(RocPoint(0.6, 0.0), ref, US)
    assert verdict.sesp_superior
    assert verdict.ppv_npv_superior

    verdict = regions.classify(RocPoint(0.5, 0.0), ref, US)
    assert not verdict.ppv_npv_superior


def test_dominance_implies_other_regions():
    rng = np.random.default_rng(0)
    for _ in range(5000):
        ref = RocPoint(rng.uniform(), rng.uniform())
        cand = RocPoint(rng.uniform(), rng.uniform())
        ctx = UtilityContext(rng.uniform(0.001, 0.5), rng.uniform(0.5, 500))
        verdict = regions.classify(cand, ref, ctx)
        if verdict.sesp_superior:
            assert verdict.ppv_npv_superior
            assert verdict.eu_superior


def test_eu_verdict_agrees_with_iui():
    rng = np.random.default_rng(1)
    for _ in range(5000):
        ref = RocPoint(rng.uniform(), rng.uniform())
        cand = RocPoint(rng.uniform(), rng.uniform())
        gap = metrics.iui(cand, US) - metrics.iui(ref, US)
        if abs(gap) > 1e-9:
            assert regions.classify(cand, ref, US).eu_superior == (gap > 0)


def test_boundary_lines():
    ppv, npv, iso = regions.boundary_lines(BASELINE, US)

    plus, minus = metrics.likelihood_ratios(BASELINE)
    assert (ppv.region, ppv.slope, ppv.intercept) == ('ppv', plus, 0.0)
    assert npv.region == 'npv'
    assert npv.slope == minus
    assert npv.intercept == pytest.approx(1 - minus)
    assert iso.region == 'iso_utility'
    assert iso.slope == metrics.iso_slope_roc(US)
    assert iso.intercept == pytest.approx(metrics.iui(BASELINE, US))


def test_vertical_boundary():
    ppv, _, _ = regions.boundary_lines(RocPoint(0.5, 0.0), US)
    assert math.isinf(ppv.slope)
    assert ppv.intercept is None

    xs, ys = regions.sample_line(ppv, 3)
    assert list(xs) == [0.0, 0.0, 0.0]
    assert list(ys) == [0.0, 0.5, 1.0]


def test_sample_line_clips_to_unit_square():
    ppv, _, _ = regions.boundary_lines(BASELINE, US)
    xs, ys = regions.sample_line(ppv, 11)

    assert xs[0] == 0.0
    assert ys[-1] == pytest.approx(1.0)
    assert np.all((xs >= 0) & (xs <= 1) & (ys >= 0) & (ys <= 1))


def test_sample_line_outside_unit_square():
    line = regions.BoundaryLine('iso_utility', 1.0, 0.0, 2.0)
    xs, ys = regions.sample_line(line, 5)
    assert len(xs) == len(ys) == 0


def test_boundary_polylines():
    rows = regions.boundary_polylines(BASELINE, US, 5)

    assert len(rows) == 15
    assert [row['region'] for row in rows[::5]] == \
        ['ppv', 'npv', 'iso_utility']
    assert [row['segment_index'] for row in rows[:5]] == [0, 1, 2, 3, 4]
    assert list(rows[0]) == ['region', 'segment_index', 'x', 'y']


@pytest.mark.parametrize('resolution', [1, 0, 2.5, True])
def test_boundary_polylines_resolution(resolution):
    with pytest.raises(RuleoutException):
        regions.boundary_polylines(BASELINE, US, resolution)
