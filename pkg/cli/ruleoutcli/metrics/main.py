import collections

import docopt

import ruleoutcli
from ruleout import cmds, constants, emitting, metrics, util
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
        default_doc("metrics"),
        argv=argv,
        version='ruleout-metrics version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['metrics', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['metrics', '--se'],
            arg_keys=['--se', '--sp', '--prevalence', '--utilities'],
            function=lambda se, sp, prevalence, utilities: _roc(
                se, sp, prevalence, utilities, args, toml_config)),

        cmds.Command(
            hierarchy=['metrics', '--recall-rate'],
            arg_keys=['--recall-rate', '--detection-rate', '--prevalence'],
            function=lambda recall, detection, prevalence: _rd(
                recall, detection, prevalence, args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("metrics"))
    return 0


def _outcome_utilities(utilities):
    values = util.parse_float_list(utilities, '--utilities')
    if len(values) != 4:
        raise RuleoutException(
            '--utilities takes four values U_TP,U_FP,U_TN,U_FN, got {}'.format(
                len(values)))
    return metrics.OutcomeUtilities(*values)


def roc_metrics(p, ctx):
    """Every metric of an ROC operating point the context allows.

    :param p: operating point
    :type p: ruleout.metrics.RocPoint
    :param ctx: utility context
    :type ctx: ruleout.metrics.UtilityContext
    :rtype: OrderedDict
    """

    rho_plus, rho_minus = metrics.likelihood_ratios(p)
    rd = metrics.roc_to_rd(p, ctx)

    result = collections.OrderedDict([
        ('sensitivity', p.tpr),
        ('specificity', p.specificity),
        ('prevalence', ctx.prevalence),
        ('ppv', metrics.ppv(p, ctx)),
        ('npv', metrics.npv(p, ctx)),
        ('rho_plus', rho_plus),
        ('rho_minus', rho_minus),
        ('recall_rate', rd.recall_rate),
        ('detection_rate', rd.detection_rate),
    ])

    if ctx.relative_utility is not None:
        result['relative_utility'] = ctx.relative_utility
        result['iso_slope'] = metrics.iso_slope_roc(ctx)
        result['iui'] = metrics.iui(p, ctx)
        result['diui'] = metrics.diui(rd, ctx.relative_utility)

    if ctx.outcome_utilities is not None:
        result['expected_utility'] = metrics.expected_utility(p, ctx)

    return result


def rd_metrics(p, u_rel):
    """
    :param p: operating point
    :type p: ruleout.metrics.RdPoint
    :param u_rel: relative utility, if known
    :type u_rel: float | None
    :rtype: OrderedDict
    """

    result = collections.OrderedDict([
        ('recall_rate', p.recall_rate),
        ('detection_rate', p.detection_rate),
        ('benign_recall_rate', p.benign_recall_rate),
    ])

    if u_rel is not None:
        result['relative_utility'] = u_rel
        result['iso_slope'] = metrics.iso_slope_rd(u_rel)
        result['diui'] = metrics.diui(p, u_rel)

    return result


def _roc(se, sp, prevalence, utilities, args, toml_config):
    """
    :returns: process return code
    :rtype: int
    """

    p = metrics.RocPoint.from_se_sp(
        util.parse_float(se, '--se'), util.parse_float(sp, '--sp'))
    prevalence = util.parse_float(prevalence, '--prevalence')

    if utilities is not None:
        # the configured relative utility must not override the utilities
        u_rel = args['--relative-utility']
        ctx = metrics.UtilityContext(
            prevalence,
            None if u_rel is None else util.parse_float(
                u_rel, '--relative-utility'),
            _outcome_utilities(utilities))
    else:
        ctx = metrics.UtilityContext(
            prevalence, cliutil.relative_utility(args, toml_config))

    report = {
        'metadata': {'space': constants.ROC_SPACE},
        'metrics': roc_metrics(p, ctx),
    }
    _publish(report, args, toml_config)
    return 0


def _rd(recall, detection, prevalence, args, toml_config):
    """
    :returns: process return code
    :rtype: int
    """

    p = metrics.RdPoint(
        util.parse_float(recall, '--recall-rate'),
        util.parse_float(detection, '--detection-rate'))
    u_rel = cliutil.relative_utility(args, toml_config)

    result = rd_metrics(p, u_rel)
    if prevalence is not None:
        ctx = metrics.UtilityContext(
            util.parse_float(prevalence, '--prevalence'), u_rel)
        roc = metrics.rd_to_roc(p, ctx)
        result.update(
            (key, value) for key, value in roc_metrics(roc, ctx).items()
            if key not in result)

    report = {
        'metadata': {'space': constants.RD_SPACE},
        'metrics': result,
    }
    _publish(report, args, toml_config)
    return 0


def _publish(report, args, toml_config):
    emitting.publish_report(
        emitter, report, tables.metrics_table, _rows,
        cliutil.output_format(args, toml_config))


def _rows(report):
    return [collections.OrderedDict([('metric', key), ('value', value)])
            for key, value in report['metrics'].items()]
