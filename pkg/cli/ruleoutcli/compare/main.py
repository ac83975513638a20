import collections

import docopt

import ruleoutcli
from ruleout import (cmds, cohort, constants, emitting, inference, metrics,
                     regions, util)
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
        default_doc("compare"),
        argv=argv,
        version='ruleout-compare version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['compare', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['compare', '--ref-se'],
            arg_keys=[],
            function=lambda: _compare_roc(args, toml_config)),

        cmds.Command(
            hierarchy=['compare', '--ref-recall-rate'],
            arg_keys=[],
            function=lambda: _compare_rd(args, toml_config)),

        cmds.Command(
            hierarchy=['compare', '--cohort'],
            arg_keys=[],
            function=lambda: _compare_cohort(args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("compare"))
    return 0


def _compare_roc(args, toml_config):
    """Compares two workflows given as rates and class sizes.

    :returns: process return code
    :rtype: int
    """

    ref = metrics.RocPoint.from_se_sp(
        util.parse_float(args['--ref-se'], '--ref-se'),
        util.parse_float(args['--ref-sp'], '--ref-sp'))
    cand = metrics.RocPoint.from_se_sp(
        util.parse_float(args['--se'], '--se'),
        util.parse_float(args['--sp'], '--sp'))
    table = cohort.table_from_aggregates(
        util.parse_int(args['--cancers'], '--cancers'),
        util.parse_int(args['--non-cancers'], '--non-cancers'),
        ref, cand)

    report = compare_tables(table, args, toml_config)
    report['metadata']['residuals'] = table.residuals
    _publish(report, args, toml_config)
    return 0


def _compare_cohort(args, toml_config):
    """Compares the workflow with and without rule-out on a cohort.

    :returns: process return code
    :rtype: int
    """

    c = cohort.load_cohort(args['--cohort'])
    result = cohort.apply_ruleout(
        c, util.parse_float(args['--threshold'], '--threshold'))

    report = compare_tables(result.table, args, toml_config)
    report['metadata'].update({
        'cohort': args['--cohort'],
        'threshold': result.threshold,
        'ruled_out_fraction': result.ruled_out_fraction,
        'n_read': result.n_read,
    })
    _publish(report, args, toml_config)
    return 0


def compare_tables(table, args, toml_config):
    """Bootstraps the iso-utility intercepts and predictive values of both
    workflows of a paired table and classifies the candidate.

    :param table: paired outcome table
    :type table: ruleout.cohort.PairedOutcomeTable
    :param args: docopt result
    :type args: dict
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: report
    :rtype: dict
    """

    cfg = cliutil.bootstrap_config(args, toml_config)
    u_rel = cliutil.require_relative_utility(
        cliutil.relative_utility(args, toml_config))
    if args['--prevalence'] is not None:
        prevalence = util.parse_float(args['--prevalence'], '--prevalence')
    else:
        prevalence = table.prevalence()
    ctx = metrics.UtilityContext(prevalence, u_rel)

    iui = inference.bootstrap_metric(table, inference.iui_metric(ctx), cfg)
    pv = inference.bootstrap_metrics(
        table, inference.ppv_npv_metrics(ctx), cfg)
    verdict = regions.classify(table.candidate(), table.reference(), ctx)

    workflows = []
    for index, (name, p) in enumerate([('without_device', table.reference()),
                                        ('with_device', table.candidate())]):
        # bootstrap results are ordered (candidate, reference)
        side = 1 - index
        iui_result = iui[side]
        workflows.append(collections.OrderedDict([
            ('workflow', name),
            ('sensitivity', p.tpr),
            ('specificity', p.specificity),
            ('ppv', pv.results['ppv'][side].point_estimate),
            ('npv', pv.results['npv'][side].point_estimate),
            ('iui', iui_result.point_estimate),
            ('iui_ci_low', iui_result.ci_low),
            ('iui_ci_high', iui_result.ci_high),
            ('p_iui', iui_result.exceedance_probability),
            ('p_iui_tie', iui_result.tie_probability),
            ('p_iui_midp', iui_result.midp_exceedance),
            ('p_ppv', pv.results['ppv'][side].exceedance_probability),
            ('p_npv', pv.results['npv'][side].exceedance_probability),
        ]))

    metadata = cfg.metadata()
    metadata.update({
        'space': constants.ROC_SPACE,
        'prevalence': prevalence,
        'relative_utility': u_rel,
        'n_cancer': table.n_cancer,
        'n_noncancer': table.n_noncancer,
        'n_undefined': iui[0].n_undefined,
    })

    return {
        'metadata': metadata,
        'workflows': workflows,
        'verdict': collections.OrderedDict([
            ('sesp_superior', verdict.sesp_superior),
            ('ppv_npv_superior', verdict.ppv_npv_superior),
            ('eu_superior', verdict.eu_superior),
            ('p_ppv_npv', pv.joint_exceedance),
        ]),
    }


def _compare_rd(args, toml_config):
    """Compares two workflows given as recall and detection rates over all
    screened exams.

    :returns: process return code
    :rtype: int
    """

    n = util.parse_int(args['--exams'], '--exams')
    ref = metrics.RdPoint(
        util.parse_float(args['--ref-recall-rate'], '--ref-recall-rate'),
        util.parse_float(
            args['--ref-detection-rate'], '--ref-detection-rate'))
    cand = metrics.RdPoint(
        util.parse_float(args['--recall-rate'], '--recall-rate'),
        util.parse_float(args['--detection-rate'], '--detection-rate'))
    table = cohort.rd_table_from_aggregates(n, ref, cand)

    cfg = cliutil.bootstrap_config(args, toml_config)
    u_rel = cliutil.require_relative_utility(
        cliutil.relative_utility(args, toml_config))
    diui = inference.bootstrap_rd(table, u_rel, cfg)

    workflows = []
    for index, (name, p) in enumerate([('without_device', table.reference()),
                                        ('with_device', table.candidate())]):
        result = diui[1 - index]
        workflows.append(collections.OrderedDict([
            ('workflow', name),
            ('recall_rate', p.recall_rate),
            ('detection_rate', p.detection_rate),
            ('diui', result.point_estimate),
            ('diui_ci_low', result.ci_low),
            ('diui_ci_high', result.ci_high),
            ('p_diui', result.exceedance_probability),
            ('p_diui_tie', result.tie_probability),
            ('p_diui_midp', result.midp_exceedance),
        ]))

    metadata = cfg.metadata()
    del metadata['mode']
    metadata.update({
        'space': constants.RD_SPACE,
        'relative_utility': u_rel,
        'n_exams': table.total,
        'n_undefined': diui[0].n_undefined,
        'residuals': table.residuals,
    })

    _publish({'metadata': metadata, 'workflows': workflows},
             args, toml_config)
    return 0


def _publish(report, args, toml_config):
    emitting.publish_report(
        emitter, report, tables.comparison_table,
        lambda r: r['workflows'], cliutil.output_format(args, toml_config))
