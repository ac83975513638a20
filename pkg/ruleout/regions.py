"""Superiority regions of a candidate operating point against a reference.

Three nested notions of "better" are compared: dominance in sensitivity and
specificity, dominance in both predictive values (likelihood ratios), and a
higher expected utility (iso-utility intercept). Verdicts are decided with
exact rational arithmetic on the float inputs.
"""

import collections
import fractions
import math

import numpy as np

from ruleout import metrics
from ruleout.errors import RuleoutException

REGION_PPV = 'ppv'
REGION_NPV = 'npv'
REGION_ISO_UTILITY = 'iso_utility'


class BoundaryLine(collections.namedtuple(
        'BoundaryLine', ['region', 'slope', 'anchor_x', 'anchor_y'])):
    """Line through (anchor_x, anchor_y) in ROC space, x = fpr and y = tpr.
    An infinite slope is the vertical line x = anchor_x.
    """

    __slots__ = ()

    @property
    def intercept(self):
        if math.isinf(self.slope):
            return None
        return self.anchor_y - self.slope * self.anchor_x


RegionVerdict = collections.namedtuple(
    'RegionVerdict',
    ['sesp_superior', 'ppv_npv_superior', 'eu_superior', 'boundary_lines'])
"""Where a candidate lies relative to the regions of a reference"""


def _exact(value):
    return fractions.Fraction(value)


def _exact_likelihood_ratios(p):
    """Likelihood ratios as fractions, math.inf where infinite, with the
    same corner conventions as metrics.likelihood_ratios.

    :type p: metrics.RocPoint
    :rtype: (fractions.Fraction | float, fractions.Fraction | float)
    """

    tpr = _exact(p.tpr)
    fpr = _exact(p.fpr)

    if fpr == 0:
        rho_plus = math.inf if tpr > 0 else fractions.Fraction(1)
    else:
        rho_plus = tpr / fpr

    if fpr == 1:
        rho_minus = math.inf if tpr < 1 else fractions.Fraction(1)
    else:
        rho_minus = (1 - tpr) / (1 - fpr)

    return rho_plus, rho_minus


def _exact_iui(p, slope):
    return _exact(p.tpr) - slope * _exact(p.fpr)


def boundary_lines(ref, ctx):
    """
    :param ref: reference operating point
    :type ref: metrics.RocPoint
    :param ctx: utility context with a relative utility
    :type ctx: metrics.UtilityContext
    :returns: the constant-PPV line through (0, 0), the constant-NPV line
              through (1, 1) and the iso-utility line through `ref`
    :rtype: [BoundaryLine]
    """

    rho_plus, rho_minus = metrics.likelihood_ratios(ref)
    return [
        BoundaryLine(REGION_PPV, rho_plus, 0.0, 0.0),
        BoundaryLine(REGION_NPV, rho_minus, 1.0, 1.0),
        BoundaryLine(REGION_ISO_UTILITY, metrics.iso_slope_roc(ctx),
                     ref.fpr, ref.tpr),
    ]


def classify(cand, ref, ctx):
    """
    :param cand: candidate operating point
    :type cand: metrics.RocPoint
    :param ref: reference operating point
    :type ref: metrics.RocPoint
    :param ctx: utility context with a relative utility
    :type ctx: metrics.UtilityContext
    :rtype: RegionVerdict
    """

    tpr_c, fpr_c = _exact(cand.tpr), _exact(cand.fpr)
    tpr_r, fpr_r = _exact(ref.tpr), _exact(ref.fpr)
    sesp = (tpr_c >= tpr_r and fpr_c <= fpr_r and
            (tpr_c > tpr_r or fpr_c < fpr_r))

    plus_c, minus_c = _exact_likelihood_ratios(cand)
    plus_r, minus_r = _exact_likelihood_ratios(ref)
    ppv_npv = (plus_c >= plus_r and minus_c <= minus_r and
               (plus_c > plus_r or minus_c < minus_r))

    pi = _exact(ctx.prevalence)
    slope = ((1 - pi) / pi) / _exact(ctx.require_relative_utility())
    eu = _exact_iui(cand, slope) > _exact_iui(ref, slope)

    return RegionVerdict(sesp, ppv_npv, eu, boundary_lines(ref, ctx))


def _clip_to_unit_square(line):
    """
    :param line: boundary line
    :type line: BoundaryLine
    :returns: (x_low, x_high) of the segment inside the unit square, or None
    :rtype: (float, float) | None
    """

    m = line.slope
    b = line.intercept
    if m == 0:
        return (0.0, 1.0) if 0.0 <= b <= 1.0 else None

    # 0 <= m * x + b <= 1 with m > 0
    low = max(0.0, -b / m)
    high = min(1.0, (1.0 - b) / m)
    if low > high:
        return None
    return low, high


def sample_line(line, resolution):
    """
    :param line: boundary line
    :type line: BoundaryLine
    :param resolution: number of points on the clipped segment
    :type resolution: int
    :returns: (xs, ys), empty when the line misses the unit square
    :rtype: (numpy.ndarray, numpy.ndarray)
    """

    if math.isinf(line.slope):
        if not 0.0 <= line.anchor_x <= 1.0:
            return np.array([]), np.array([])
        return (np.full(resolution, line.anchor_x),
                np.linspace(0.0, 1.0, resolution))

    segment = _clip_to_unit_square(line)
    if segment is None:
        return np.array([]), np.array([])

    xs = np.linspace(segment[0], segment[1], resolution)
    ys = line.anchor_y + line.slope * (xs - line.anchor_x)
    return xs, np.clip(ys, 0.0, 1.0)


def boundary_polylines(ref, ctx, resolution):
    """Samples the three boundary lines of `ref` for plotting.

    :param ref: reference operating point
    :type ref: metrics.RocPoint
    :param ctx: utility context with a relative utility
    :type ctx: metrics.UtilityContext
    :param resolution: points per line, at least 2
    :type resolution: int
    :returns: rows with keys region, segment_index, x, y
    :rtype: [OrderedDict]
    """

    if isinstance(resolution, bool) or not isinstance(resolution, int) or \
            resolution < 2:
        raise RuleoutException(
            'resolution must be an integer of at least 2, got {!r}'.format(
                resolution))

    rows = []
    for line in boundary_lines(ref, ctx):
        xs, ys = sample_line(line, resolution)
        for index, (x, y) in enumerate(zip(xs.tolist(), ys.tolist())):
            rows.append(collections.OrderedDict([
                ('region', line.region),
                ('segment_index', index),
                ('x', x),
                ('y', y),
            ]))
    return rows
