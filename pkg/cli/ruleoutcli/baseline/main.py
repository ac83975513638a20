import collections

import docopt

import ruleoutcli
from ruleout import baseline, cmds, constants, emitting, inference, util
from ruleout.errors import RuleoutException
from ruleoutcli import tables
from ruleoutcli import util as cliutil
from ruleoutcli.subcommand import default_command_info, default_doc
from ruleoutcli.util import decorate_docopt_usage

emitter = emitting.FlatEmitter()
logger = util.get_logger(__name__)

VALID_SPACES = [constants.RD_SPACE, constants.ROC_SPACE]


def main(argv, toml_config):
    try:
        return _main(argv, toml_config)
    except RuleoutException as e:
        emitter.publish(e)
        return 2


@decorate_docopt_usage
def _main(argv, toml_config):
    args = docopt.docopt(
        default_doc("baseline-ru"),
        argv=argv,
        version='ruleout-baseline-ru version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['baseline-ru', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['baseline-ru', '--at'],
            arg_keys=['--curve', '--fixture', '--at'],
            function=lambda path, fixture, at: _baseline(
                path, fixture, at, args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("baseline-ru"))
    return 0


def _load(path, fixture, space):
    """
    :returns: the curve and a label of where it came from
    :rtype: (ruleout.baseline.PerformanceCurve, str)
    """

    if fixture is not None:
        if space != constants.RD_SPACE:
            raise RuleoutException(
                'Bundled curves are recall/detection curves; '
                '--space must be {!r}'.format(constants.RD_SPACE))
        return baseline.load_fixture(fixture), 'fixture:{}'.format(fixture)
    return baseline.load_curve_file(path, space), path


def _baseline(path, fixture, at, args, toml_config):
    """Estimates the relative utility implied by the tangent of a curve.

    :returns: process return code
    :rtype: int
    """

    space = args['--space'] or constants.RD_SPACE
    if space not in VALID_SPACES:
        raise RuleoutException(
            '--space must be one of {}, got {!r}'.format(
                ', '.join(VALID_SPACES), space))

    curve, source = _load(path, fixture, space)
    at = util.parse_float(at, '--at')
    prevalence = None
    if args['--prevalence'] is not None:
        prevalence = util.parse_float(args['--prevalence'], '--prevalence')

    estimate = baseline.estimate_baseline(curve, at, prevalence)
    knot_low, knot_high = baseline.fit_spline(curve).knot_range

    row = collections.OrderedDict([
        ('at', estimate.at),
        ('slope', estimate.slope),
        ('relative_utility', estimate.relative_utility),
        ('knot_ci_low', None),
        ('knot_ci_high', None),
        ('knot_n_defined', None),
        ('knot_n_undefined', None),
    ])
    metadata = {
        'curve': source,
        'space': space,
        'prevalence': prevalence,
        'n_points': len(curve),
        'knot_range': [knot_low, knot_high],
    }
    if fixture is not None:
        metadata['note'] = ('Bundled curves are synthetic; the implied '
                            'relative utility depends on the data.')

    if args['--resample-knots'] is not None:
        cfg = cliutil.bootstrap_config(args, toml_config)
        cfg = inference.BootstrapConfig(
            n_resamples=util.parse_int(
                args['--resample-knots'], '--resample-knots'),
            ci_level=cfg.ci_level,
            seed=cfg.seed,
            workers=cfg.workers)
        spread = baseline.knot_bootstrap(curve, at, cfg, prevalence)
        row['knot_ci_low'] = spread.ci_low
        row['knot_ci_high'] = spread.ci_high
        row['knot_n_defined'] = spread.n_defined
        row['knot_n_undefined'] = spread.n_undefined
        metadata.update({
            'seed': cfg.seed,
            'samples': cfg.n_resamples,
            'ci_level': cfg.ci_level,
            'knot_interval': ('heuristic: curve points resampled with '
                              'replacement and refitted'),
        })

    report = {'metadata': metadata, 'rows': [row]}
    emitting.publish_report(
        emitter, report, tables.report_table, lambda r: r['rows'],
        cliutil.output_format(args, toml_config))
    return 0
