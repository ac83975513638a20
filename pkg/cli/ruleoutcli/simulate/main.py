import collections

import docopt

import ruleoutcli
from ruleout import cmds, cohort, emitting, inference, metrics, util
from ruleout.errors import RuleoutException
from ruleoutcli import tables
from ruleoutcli import util as cliutil
from ruleoutcli.subcommand import default_command_info, default_doc
from ruleoutcli.util import decorate_docopt_usage

emitter = emitting.FlatEmitter()
logger = util.get_logger(__name__)


def main(argv, toml_config):
    try:
        return _main(argv, toml_config)
    except RuleoutException as e:
        emitter.publish(e)
        return 2


@decorate_docopt_usage
def _main(argv, toml_config):
    args = docopt.docopt(
        default_doc("simulate"),
        argv=argv,
        version='ruleout-simulate version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['simulate', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['simulate', '--cohort'],
            arg_keys=['--cohort', '--fractions', '--thresholds'],
            function=lambda path, fractions, thresholds: _simulate(
                path, fractions, thresholds, args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("simulate"))
    return 0


def _simulate(path, fractions, thresholds, args, toml_config):
    """Sweeps the rule-out workflow over a cohort.

    :param path: cohort file
    :type path: str
    :param fractions: comma separated rule-out fractions
    :type fractions: str | None
    :param thresholds: comma separated thresholds
    :type thresholds: str | None
    :returns: process return code
    :rtype: int
    """

    c = cohort.load_cohort(path)
    c.require_both_classes()
    workers = cliutil.workers(args, toml_config)

    if fractions is not None:
        rows = cohort.sweep(
            c, util.parse_float_list(fractions, '--fractions'), workers)
    else:
        rows = cohort.sweep_thresholds(
            c, util.parse_float_list(thresholds, '--thresholds'), workers)

    if args['--prevalence'] is not None:
        prevalence = util.parse_float(args['--prevalence'], '--prevalence')
    else:
        prevalence = c.n_cancer / len(c)
    u_rel = cliutil.relative_utility(args, toml_config)
    ctx = metrics.UtilityContext(prevalence, u_rel)

    metadata = {
        'cohort': path,
        'n_patients': len(c),
        'n_cancer': c.n_cancer,
        'prevalence': prevalence,
        'relative_utility': u_rel,
    }

    cfg = None
    if u_rel is not None:
        cfg = cliutil.bootstrap_config(args, toml_config)
        metadata.update(cfg.metadata())
    else:
        logger.info('No relative utility; skipping the bootstrap')

    report = {
        'metadata': metadata,
        'rows': [simulation_row(row, ctx, cfg) for row in rows],
    }
    emitting.publish_report(
        emitter, report, tables.report_table, lambda r: r['rows'],
        cliutil.output_format(args, toml_config))
    return 0


def simulation_row(row, ctx, cfg):
    """
    :param row: sweep point
    :type row: ruleout.cohort.SweepRow
    :param ctx: utility context
    :type ctx: ruleout.metrics.UtilityContext
    :param cfg: bootstrap settings, None to skip the bootstrap
    :type cfg: ruleout.inference.BootstrapConfig | None
    :rtype: OrderedDict
    """

    result = row.result
    p = result.with_device
    standalone = result.standalone

    out = collections.OrderedDict([
        ('requested_fraction', row.requested_fraction),
        ('achieved_fraction', row.achieved_fraction),
        ('threshold', result.threshold),
        ('n_read', result.n_read),
        ('sensitivity', p.tpr),
        ('specificity', p.specificity),
        ('ppv', metrics.ppv(p, ctx)),
        ('npv', metrics.npv(p, ctx)),
        ('iui', None),
        ('iui_ci_low', None),
        ('iui_ci_high', None),
        ('p_iui', None),
        ('p_iui_midp', None),
        ('ai_sensitivity', standalone.tpr),
        ('ai_specificity', standalone.specificity),
        ('ai_better_than_guessing', standalone.tpr - standalone.fpr > 0),
    ])

    if cfg is not None:
        candidate, _ = inference.bootstrap_metric(
            result.table, inference.iui_metric(ctx), cfg)
        out['iui'] = candidate.point_estimate
        out['iui_ci_low'] = candidate.ci_low
        out['iui_ci_high'] = candidate.ci_high
        out['p_iui'] = candidate.exceedance_probability
        out['p_iui_midp'] = candidate.midp_exceedance

    return out
