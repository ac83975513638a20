"""Baseline relative utility from an empirical performance curve.

At the operating point that maximizes expected utility, the curve is tangent
to an iso-utility line. Interpolating the curve with a natural cubic spline
and reading its slope at the operating point therefore recovers the relative
utility the operators implicitly work at.
"""

import collections
import csv
import importlib.resources
import math

import numpy as np
from scipy.interpolate import CubicSpline

from ruleout import constants, metrics, util
from ruleout.errors import RuleoutException
from ruleout.inference import replicate_generator

logger = util.get_logger(__name__)

VALID_SPACES = [constants.RD_SPACE, constants.ROC_SPACE]


class PerformanceCurve(object):
    """Operating points of one reader population, sorted by x.

    :param points: (x, y) rates, in any order
    :type points: [(float, float)]
    :param space: constants.RD_SPACE for (recall, detection) points or
                  constants.ROC_SPACE for (fpr, tpr) points
    :type space: str
    :param warn: log a warning when y decreases somewhere
    :type warn: bool
    """

    def __init__(self, points, space=constants.RD_SPACE, warn=True):
        if space not in VALID_SPACES:
            raise RuleoutException(
                'Curve space must be one of {!r}, got {!r}'.format(
                    VALID_SPACES, space))

        points = sorted((float(x), float(y)) for x, y in points)
        if len(points) < 3:
            raise RuleoutException(
                'A cubic spline needs at least 3 points, got {}'.format(
                    len(points)))

        for x, y in points:
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise RuleoutException(
                    'Curve point ({}, {}) is not a pair of rates in '
                    '[0, 1]'.format(x, y))

        xs = np.array([p[0] for p in points])
        ys = np.array([p[1] for p in points])
        duplicates = xs[1:][np.diff(xs) <= 0]
        if len(duplicates):
            raise RuleoutException(
                'Curve x values must be distinct, {} appears more than '
                'once'.format(duplicates[0]))

        if warn and np.any(np.diff(ys) < 0):
            logger.warning('Curve y values decrease between some points; '
                           'tangent slopes may be unreliable')

        self._space = space
        self._xs = xs
        self._ys = ys
        self._xs.setflags(write=False)
        self._ys.setflags(write=False)

    @property
    def space(self):
        return self._space

    @property
    def xs(self):
        return self._xs

    @property
    def ys(self):
        return self._ys

    def points(self):
        return list(zip(self._xs.tolist(), self._ys.tolist()))

    def __len__(self):
        return len(self._xs)


def load_curve(stream, space=constants.RD_SPACE):
    """Reads a curve from comma separated text with header `x,y`. Blank
    lines and lines starting with '#' are ignored.

    :param stream: text stream, or a binary stream of UTF-8 lines
    :type stream: file-like
    :param space: space of the points
    :type space: str
    :rtype: PerformanceCurve
    """

    header = None
    points = []
    for line_number, line in enumerate(stream, start=1):
        try:
            line = util.decode_line(line)
        except UnicodeDecodeError as e:
            raise RuleoutException('Line {}: {}'.format(
                line_number, util.decode_error_reason(e)))

        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue

        fields = [f.strip() for f in next(csv.reader([stripped]))]
        if header is None:
            header = fields
            if header != constants.CURVE_HEADER:
                raise RuleoutException(
                    'Line {}: curve header must be {!r}, got {!r}'.format(
                        line_number, ','.join(constants.CURVE_HEADER),
                        stripped))
            continue

        if len(fields) != 2:
            raise RuleoutException(
                'Line {}: expected 2 fields, got {}'.format(
                    line_number, len(fields)))
        try:
            points.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise RuleoutException(
                'Line {}: curve values must be decimal numbers, '
                'got {!r}'.format(line_number, stripped))

    return PerformanceCurve(points, space)


def load_curve_file(path, space=constants.RD_SPACE):
    """
    :param path: path to a curve file
    :type path: str
    :param space: space of the points
    :type space: str
    :rtype: PerformanceCurve
    """

    with util.open_file(path, 'rb') as f:
        return load_curve(f, space)


def fixture_names():
    """
    :returns: names of the bundled curves
    :rtype: [str]
    """

    curves = importlib.resources.files('ruleout').joinpath('data/curves')
    return sorted(entry.name[:-len('.csv')] for entry in curves.iterdir()
                  if entry.name.endswith('.csv'))


def load_fixture(name):
    """Loads a bundled recall/detection curve.

    :param name: curve name, e.g. 'euro-double-reading'
    :type name: str
    :rtype: PerformanceCurve
    """

    names = fixture_names()
    if name not in names:
        raise RuleoutException(
            'Unknown curve fixture {!r}. Available fixtures: {}'.format(
                name, ', '.join(names)))

    resource = importlib.resources.files('ruleout').joinpath(
        'data/curves/{}.csv'.format(name))
    with resource.open('r', encoding='utf-8') as f:
        return load_curve(f, constants.RD_SPACE)


class SplineModel(object):
    """Natural cubic spline through every point of a curve.

    :param curve: the interpolated curve
    :type curve: PerformanceCurve
    """

    def __init__(self, curve):
        self._curve = curve
        self._spline = CubicSpline(
            curve.xs, curve.ys, bc_type='natural', extrapolate=False)

    @property
    def curve(self):
        return self._curve

    @property
    def knot_range(self):
        return float(self._curve.xs[0]), float(self._curve.xs[-1])

    def __call__(self, x, nu=0):
        """
        :param x: query point inside the knot range
        :type x: float
        :param nu: order of the derivative
        :type nu: int
        :rtype: float
        """

        low, high = self.knot_range
        if not low <= x <= high:
            raise RuleoutException(
                'x = {} is outside the knot range [{}, {}]; the spline is '
                'not extrapolated'.format(x, low, high))
        return float(self._spline(x, nu))


def fit_spline(curve):
    """
    :param curve: curve to interpolate
    :type curve: PerformanceCurve
    :rtype: SplineModel
    """

    logger.debug('Fitting natural cubic spline through %d points', len(curve))
    return SplineModel(curve)


def slope_at(model, x):
    """
    :param model: fitted spline
    :type model: SplineModel
    :param x: query point inside the knot range
    :type x: float
    :returns: first derivative of the spline at x
    :rtype: float
    """

    return model(x, 1)


BaselineEstimate = collections.namedtuple(
    'BaselineEstimate', ['at', 'slope', 'relative_utility', 'space'])
"""Tangent slope at an operating point and the relative utility it implies"""


def estimate_baseline(curve, at, prevalence=None):
    """
    :param curve: performance curve
    :type curve: PerformanceCurve
    :param at: x of the operating point
    :type at: float
    :param prevalence: disease prevalence, required in ROC space
    :type prevalence: float | None
    :rtype: BaselineEstimate
    """

    slope = slope_at(fit_spline(curve), at)

    if curve.space == constants.ROC_SPACE:
        if prevalence is None:
            raise RuleoutException(
                'A prevalence is required to convert an ROC slope to a '
                'relative utility')
        if not slope > 0:
            raise RuleoutException(
                'ROC slope at {} is {}; a positive slope is needed to imply '
                'a relative utility'.format(at, slope))
        u_rel = metrics.relative_utility_from_roc_slope(slope, prevalence)
    else:
        if not 0.0 < slope < 1.0:
            raise RuleoutException(
                'Recall/detection slope at {} is {}; it must lie strictly '
                'between 0 and 1 to imply a positive relative '
                'utility'.format(at, slope))
        u_rel = metrics.relative_utility_from_rd_slope(slope)

    return BaselineEstimate(at, slope, u_rel, curve.space)


def baseline_relative_utility(curve, at, prevalence=None):
    """
    :param curve: performance curve
    :type curve: PerformanceCurve
    :param at: x of the operating point
    :type at: float
    :param prevalence: disease prevalence, required in ROC space
    :type prevalence: float | None
    :returns: relative utility implied by the tangent at `at`
    :rtype: float
    """

    return estimate_baseline(curve, at, prevalence).relative_utility


KnotBootstrapResult = collections.namedtuple(
    'KnotBootstrapResult',
    ['estimate', 'ci_low', 'ci_high', 'n_defined', 'n_undefined'])
"""Heuristic spread of a baseline relative utility over resampled knots"""


def knot_bootstrap(curve, at, cfg, prevalence=None):
    """Resamples curve points with replacement, refits, and recomputes the
    relative utility. Replicates with fewer than 3 distinct points, a query
    outside their knot range or an invalid slope count as undefined.

    :param curve: performance curve
    :type curve: PerformanceCurve
    :param at: x of the operating point
    :type at: float
    :param cfg: bootstrap settings; mode and pairing are ignored
    :type cfg: ruleout.inference.BootstrapConfig
    :param prevalence: disease prevalence, required in ROC space
    :type prevalence: float | None
    :rtype: KnotBootstrapResult
    """

    estimate = baseline_relative_utility(curve, at, prevalence)
    points = curve.points()

    def replicate(index):
        rng = replicate_generator(cfg.seed, index)
        picked = sorted(set(
            rng.integers(0, len(points), size=len(points)).tolist()))
        if len(picked) < 3:
            return math.nan
        try:
            resampled = PerformanceCurve(
                [points[i] for i in picked], curve.space, warn=False)
            return baseline_relative_utility(resampled, at, prevalence)
        except RuleoutException:
            return math.nan

    values = np.array(
        util.ordered_map(replicate, range(cfg.n_resamples), cfg.workers))
    defined = values[np.isfinite(values)]
    n_undefined = len(values) - len(defined)
    if not len(defined):
        raise RuleoutException(
            'Every knot resample was undefined at {}'.format(at))

    alpha = 1.0 - cfg.ci_level
    ci_low, ci_high = np.percentile(
        defined, [100.0 * alpha / 2, 100.0 * (1.0 - alpha / 2)])
    logger.info('Knot bootstrap: %d defined, %d undefined replicates',
                len(defined), n_undefined)
    return KnotBootstrapResult(
        estimate, float(ci_low), float(ci_high), len(defined), n_undefined)
