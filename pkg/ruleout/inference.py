"""Paired bootstrap inference for with-device against without-device
workflows.

Replicates resample the nested outcome tables, so both workflows are always
evaluated on the same resampled patients. Every replicate draws from its own
counter-based random stream keyed by (seed, replicate index); results do not
depend on how replicates are scheduled across threads.
"""

import collections
import math

import numpy as np

from ruleout import constants, metrics, util
from ruleout.cohort import (ClassCells, PairedOutcomeTable,
                            PairedRecallTable)
from ruleout.errors import RuleoutException, UndefinedReplicatesException

logger = util.get_logger(__name__)

VALID_PAIRINGS = ['paired', 'independent']


class BootstrapConfig(collections.namedtuple(
        'BootstrapConfig',
        ['n_resamples', 'ci_level', 'seed', 'mode', 'pairing', 'workers'])):
    """Settings of a bootstrap run.

    :param n_resamples: number of replicates
    :type n_resamples: int
    :param ci_level: coverage of the percentile interval
    :type ci_level: float
    :param seed: unsigned 64-bit seed
    :type seed: int
    :param mode: 'conditional' keeps the observed class sizes,
                 'unconditional' resamples them too
    :type mode: str
    :param pairing: 'paired' evaluates both workflows on the same replicate,
                    'independent' on separate replicates
    :type pairing: str
    :param workers: number of threads
    :type workers: int
    """

    __slots__ = ()

    def __new__(cls,
                n_resamples=constants.DEFAULT_BOOTSTRAP_SAMPLES,
                ci_level=constants.DEFAULT_CI_LEVEL,
                seed=constants.DEFAULT_BOOTSTRAP_SEED,
                mode='conditional',
                pairing='paired',
                workers=1):

        if isinstance(n_resamples, bool) or not isinstance(n_resamples, int) \
                or n_resamples < 1:
            raise RuleoutException(
                'number of resamples must be a positive integer, '
                'got {!r}'.format(n_resamples))
        ci_level = float(ci_level)
        if not 0.0 < ci_level < 1.0:
            raise RuleoutException(
                'confidence level must be strictly between 0 and 1, '
                'got {!r}'.format(ci_level))
        if isinstance(seed, bool) or not isinstance(seed, int) or \
                not 0 <= seed < 2 ** 64:
            raise RuleoutException(
                'seed must be an unsigned 64-bit integer, got {!r}'.format(
                    seed))
        if mode not in constants.VALID_BOOTSTRAP_MODES:
            raise RuleoutException(
                'bootstrap mode must be one of {!r}, got {!r}'.format(
                    constants.VALID_BOOTSTRAP_MODES, mode))
        if pairing not in VALID_PAIRINGS:
            raise RuleoutException(
                'pairing must be one of {!r}, got {!r}'.format(
                    VALID_PAIRINGS, pairing))
        check_workers(workers)

        return super(BootstrapConfig, cls).__new__(
            cls, n_resamples, ci_level, seed, mode, pairing, workers)

    def metadata(self):
        """
        :returns: the settings that determine the replicates
        :rtype: dict
        """

        return {'seed': self.seed,
                'samples': self.n_resamples,
                'ci_level': self.ci_level,
                'mode': self.mode,
                'pairing': self.pairing}


def check_workers(workers):
    """
    :param workers: number of threads
    :type workers: int
    :rtype: None
    """

    if isinstance(workers, bool) or not isinstance(workers, int) or \
            workers < 1:
        raise RuleoutException(
            'workers must be a positive integer, got {!r}'.format(workers))


BootstrapResult = collections.namedtuple(
    'BootstrapResult',
    ['point_estimate', 'ci_low', 'ci_high', 'exceedance_probability',
     'tie_probability', 'midp_exceedance', 'n_defined', 'n_undefined',
     'replicate_values'])
"""Percentile interval and exceedance of one workflow's metric.
`exceedance_probability` is the fraction of defined replicates where this
workflow's metric is strictly greater than the other workflow's."""


BootstrapSummary = collections.namedtuple(
    'BootstrapSummary', ['results', 'joint_exceedance', 'config'])
"""Bootstrap of several metrics on shared replicates. `results` maps each
metric name to a (candidate, reference) pair of BootstrapResult."""


def replicate_generator(seed, index):
    """
    :param seed: unsigned 64-bit seed
    :type seed: int
    :param index: replicate index
    :type index: int
    :returns: the random stream of one replicate
    :rtype: numpy.random.Generator
    """

    return np.random.Generator(
        np.random.Philox(key=seed, counter=[0, 0, 0, index]))


def _multinomial(rng, cells):
    """
    :param rng: random stream
    :type rng: numpy.random.Generator
    :param cells: observed counts
    :type cells: [int]
    :returns: counts redrawn with the same total and empirical proportions
    :rtype: [int]
    """

    total = sum(cells)
    if total == 0:
        return list(cells)
    pvals = np.asarray(cells, dtype=float) / total
    return [int(v) for v in rng.multinomial(total, pvals)]


def resample_paired(table, rng, mode='conditional'):
    """Redraws a paired table. Conditional mode draws each truth class from
    its own multinomial; unconditional mode draws all six cells at once, so
    class sizes vary too.

    :param table: observed table
    :type table: PairedOutcomeTable
    :param rng: random stream
    :type rng: numpy.random.Generator
    :param mode: one of constants.VALID_BOOTSTRAP_MODES
    :type mode: str
    :rtype: PairedOutcomeTable
    """

    if mode == 'unconditional':
        cells = _multinomial(rng, table.cells())
        return PairedOutcomeTable(ClassCells(*cells[:3]),
                                  ClassCells(*cells[3:]))

    return PairedOutcomeTable(ClassCells(*_multinomial(rng, table.cancer)),
                              ClassCells(*_multinomial(rng, table.noncancer)))


def resample_rd(table, rng, mode='conditional'):
    """Redraws the five cells of a recall table over all exams. The
    population is a single class, so `mode` has no effect.

    :param table: observed table
    :type table: PairedRecallTable
    :param rng: random stream
    :type rng: numpy.random.Generator
    :rtype: PairedRecallTable
    """

    return PairedRecallTable(*_multinomial(rng, table.cells()))


def _resampler(table):
    if isinstance(table, PairedRecallTable):
        return resample_rd
    if isinstance(table, PairedOutcomeTable):
        return resample_paired
    raise RuleoutException(
        'Cannot bootstrap a {}'.format(type(table).__name__))


def _evaluate(metric, table):
    """
    :returns: (candidate, reference), NaN where the metric is undefined
    :rtype: (float, float)
    """

    try:
        candidate, reference = metric(table)
    except (ZeroDivisionError, FloatingPointError, RuleoutException):
        return math.nan, math.nan
    return float(candidate), float(reference)


def _summarize(point, values, other, n_undefined, ci_level):
    """
    :param point: plug-in estimate
    :type point: float
    :param values: defined replicate values of this workflow
    :type values: numpy.ndarray
    :param other: defined replicate values of the other workflow
    :type other: numpy.ndarray
    :rtype: BootstrapResult
    """

    alpha = 1.0 - ci_level
    ci_low, ci_high = np.percentile(
        values, [100.0 * alpha / 2, 100.0 * (1.0 - alpha / 2)])
    exceedance = float(np.mean(values > other))
    ties = float(np.mean(values == other))
    return BootstrapResult(
        point_estimate=point,
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        exceedance_probability=exceedance,
        tie_probability=ties,
        midp_exceedance=exceedance + ties / 2,
        n_defined=len(values),
        n_undefined=n_undefined,
        replicate_values=values)


@util.duration
def bootstrap_metrics(table, metric_fns, cfg):
    """Bootstraps several metrics on the same replicates.

    Exceedance and tie probabilities are fractions of the replicates on
    which a metric is defined, not of `cfg.n_resamples`. The joint
    exceedance counts only replicates on which every metric is defined.
    Raises UndefinedReplicatesException when more than
    constants.UNDEFINED_REPLICATE_CEILING of the replicates are undefined.

    :param table: observed paired table
    :type table: PairedOutcomeTable | PairedRecallTable
    :param metric_fns: metric name -> function of a table returning
                       (candidate value, reference value)
    :type metric_fns: OrderedDict
    :param cfg: bootstrap settings
    :type cfg: BootstrapConfig
    :rtype: BootstrapSummary
    """

    resample = _resampler(table)
    names = list(metric_fns)

    points = {}
    for name in names:
        candidate, reference = _evaluate(metric_fns[name], table)
        if math.isnan(candidate) or math.isnan(reference):
            raise RuleoutException(
                'Metric {!r} is undefined on the observed table'.format(name))
        points[name] = (candidate, reference)

    logger.info('Bootstrapping %d resamples of %s (seed %d, %s, %s)',
                cfg.n_resamples, ', '.join(names), cfg.seed, cfg.mode,
                cfg.pairing)

    def replicate(index):
        rng = replicate_generator(cfg.seed, index)
        first = resample(table, rng, cfg.mode)
        if cfg.pairing == 'paired':
            return [_evaluate(metric_fns[name], first) for name in names]

        second = resample(table, rng, cfg.mode)
        return [(_evaluate(metric_fns[name], first)[0],
                 _evaluate(metric_fns[name], second)[1])
                for name in names]

    rows = util.ordered_map(replicate, range(cfg.n_resamples), cfg.workers)
    draws = np.array(rows, dtype=float).reshape(
        cfg.n_resamples, len(names), 2)

    results = collections.OrderedDict()
    all_defined = np.ones(cfg.n_resamples, dtype=bool)
    all_exceed = np.ones(cfg.n_resamples, dtype=bool)
    for i, name in enumerate(names):
        candidate = draws[:, i, 0]
        reference = draws[:, i, 1]
        defined = np.isfinite(candidate) & np.isfinite(reference)
        n_undefined = int(cfg.n_resamples - np.count_nonzero(defined))

        if n_undefined:
            logger.warning('%d of %d replicates undefined for %s',
                           n_undefined, cfg.n_resamples, name)
        if n_undefined > constants.UNDEFINED_REPLICATE_CEILING * \
                cfg.n_resamples:
            raise UndefinedReplicatesException(
                name, n_undefined, cfg.n_resamples)

        candidate = candidate[defined]
        reference = reference[defined]
        point_candidate, point_reference = points[name]
        results[name] = (
            _summarize(point_candidate, candidate, reference, n_undefined,
                       cfg.ci_level),
            _summarize(point_reference, reference, candidate, n_undefined,
                       cfg.ci_level))

        all_defined &= defined
        all_exceed &= draws[:, i, 0] > draws[:, i, 1]

    joint = float(np.count_nonzero(all_exceed & all_defined) /
                  np.count_nonzero(all_defined))

    logger.info('Bootstrap finished')
    return BootstrapSummary(results, joint, cfg)


def bootstrap_metric(table, metric, cfg):
    """
    :param table: observed paired table
    :type table: PairedOutcomeTable | PairedRecallTable
    :param metric: function of a table returning (candidate, reference)
    :type metric: function
    :param cfg: bootstrap settings
    :type cfg: BootstrapConfig
    :returns: (candidate, reference)
    :rtype: (BootstrapResult, BootstrapResult)
    """

    summary = bootstrap_metrics(
        table, collections.OrderedDict([('metric', metric)]), cfg)
    return summary.results['metric']


def bootstrap_rd(table, u_rel, cfg):
    """Bootstraps the detection iso-utility intercept of both workflows.

    :param table: observed recall table
    :type table: PairedRecallTable
    :param u_rel: relative utility
    :type u_rel: float
    :param cfg: bootstrap settings
    :type cfg: BootstrapConfig
    :returns: (candidate, reference)
    :rtype: (BootstrapResult, BootstrapResult)
    """

    return bootstrap_metric(table, diui_metric(u_rel), cfg)


def iui_metric(ctx):
    """
    :param ctx: utility context with a relative utility
    :type ctx: UtilityContext
    :returns: metric computing both workflows' iso-utility intercepts
    :rtype: function
    """

    ctx.require_relative_utility()

    def metric(table):
        return (metrics.iui(table.candidate(), ctx),
                metrics.iui(table.reference(), ctx))
    return metric


def ppv_npv_metrics(ctx):
    """
    :param ctx: utility context
    :type ctx: UtilityContext
    :returns: 'ppv' and 'npv' metrics
    :rtype: OrderedDict
    """

    def ppv(table):
        return (metrics.ppv(table.candidate(), ctx),
                metrics.ppv(table.reference(), ctx))

    def npv(table):
        return (metrics.npv(table.candidate(), ctx),
                metrics.npv(table.reference(), ctx))

    return collections.OrderedDict([('ppv', ppv), ('npv', npv)])


def eu_ratio_metric(ctx):
    """Ratio of the with-device to the without-device iso-utility intercept,
    paired with the neutral ratio 1.

    :param ctx: utility context with a relative utility
    :type ctx: UtilityContext
    :rtype: function
    """

    iui = iui_metric(ctx)

    def metric(table):
        candidate, reference = iui(table)
        return candidate / reference, 1.0
    return metric


def diui_metric(u_rel):
    """
    :param u_rel: relative utility
    :type u_rel: float
    :rtype: function
    """

    metrics.iso_slope_rd(u_rel)

    def metric(table):
        return (metrics.diui(table.candidate(), u_rel),
                metrics.diui(table.reference(), u_rel))
    return metric


def diui_ratio_metric(u_rel):
    """
    :param u_rel: relative utility
    :type u_rel: float
    :rtype: function
    """

    diui = diui_metric(u_rel)

    def metric(table):
        candidate, reference = diui(table)
        return candidate / reference, 1.0
    return metric
