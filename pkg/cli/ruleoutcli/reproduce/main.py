import collections

import docopt

import ruleoutcli
from ruleout import (cmds, constants, emitting, inference, metrics, regions,
                     studies, util)
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
        default_doc("reproduce"),
        argv=argv,
        version='ruleout-reproduce version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['reproduce', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['reproduce', '--study'],
            arg_keys=['--study', '--plot-data'],
            function=lambda name, plot_data: _reproduce(
                name, plot_data, args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("reproduce"))
    return 0


def _reproduce(name, plot_data, args, toml_config):
    """
    :param name: study name
    :type name: str
    :param plot_data: whether to print the utility ratio instead of the table
    :type plot_data: bool
    :returns: process return code
    :rtype: int
    """

    study = studies.load_study(name)
    cfg = cliutil.bootstrap_config(args, toml_config)

    if plot_data:
        report = ratio_report(study, cfg)
    elif study.space == constants.RD_SPACE:
        report = rd_report(study, cfg)
    else:
        report = roc_report(study, cfg)

    emitting.publish_report(
        emitter, report, tables.report_table, lambda r: r['rows'],
        cliutil.output_format(args, toml_config))
    return 0


def _metadata(study, cfg):
    metadata = cfg.metadata()
    metadata.update({
        'study': study.name,
        'description': study.description,
        'space': study.space,
        'relative_utility': study.relative_utility,
        'n_exams': study.n_exams,
        'notes': list(study.notes),
    })
    return metadata


def _pct(value):
    return None if value is None else 100.0 * value


def _band(study):
    """
    :returns: the relative utilities at the ends of the study's band
    :rtype: (float, float)
    """

    band = study.relative_utility_band or 0.0
    return (study.relative_utility * (1.0 - band),
            study.relative_utility * (1.0 + band))


def roc_report(study, cfg):
    """Recomputes the iso-utility intercept table of an ROC-space study.

    :param study: study fixture
    :type study: ruleout.studies.StudyFixture
    :param cfg: bootstrap settings
    :type cfg: ruleout.inference.BootstrapConfig
    :rtype: dict
    """

    ctx = study.context()
    u_low, u_high = _band(study)
    ctx_low = study.context(u_low)
    ctx_high = study.context(u_high)
    ref = study.roc_point(study.baseline)

    count_ctx = metrics.UtilityContext(study.n_cancer / study.n_exams)

    rows = []
    for row in study.rows:
        p = study.roc_point(row)
        table = study.paired_table(row)
        is_baseline = row is study.baseline

        candidate, _ = inference.bootstrap_metric(
            table, inference.iui_metric(ctx), cfg)
        p_iui = p_ppv_npv = None
        if not is_baseline:
            pv = inference.bootstrap_metrics(
                table, inference.ppv_npv_metrics(ctx), cfg)
            p_iui = _pct(candidate.exceedance_probability)
            p_ppv_npv = _pct(pv.joint_exceedance)

        iui = metrics.iui(p, ctx)
        verdict = regions.classify(p, ref, ctx)
        rows.append(collections.OrderedDict([
            ('ruleout_pct', row['ruleout_pct']),
            ('sensitivity', p.tpr),
            ('specificity', p.specificity),
            ('iui', iui),
            ('published_iui', row['iui']),
            ('iui_delta', iui - row['iui']),
            ('iui_ci_low', candidate.ci_low),
            ('iui_ci_high', candidate.ci_high),
            ('published_ci_low', row['iui_ci'][0]),
            ('published_ci_high', row['iui_ci'][1]),
            ('p_iui_pct', p_iui),
            ('published_p_iui_pct', row['p_iui_pct']),
            ('p_ppv_npv_pct', p_ppv_npv),
            ('published_p_ppv_npv_pct', row['p_ppv_npv_pct']),
            ('iui_low_u', metrics.iui(p, ctx_low)),
            ('iui_high_u', metrics.iui(p, ctx_high)),
            ('sesp_superior', verdict.sesp_superior),
            ('ppv_npv_superior', verdict.ppv_npv_superior),
            ('eu_superior', verdict.eu_superior),
        ]))

    metadata = _metadata(study, cfg)
    metadata.update({
        'prevalence': study.prevalence,
        'n_cancer': study.n_cancer,
        'count_prevalence': count_ctx.prevalence,
        'relative_utility_band': [u_low, u_high],
        'baseline_ppv': metrics.ppv(ref, ctx),
        'baseline_npv': metrics.npv(ref, ctx),
        'baseline_ppv_count_prevalence': metrics.ppv(ref, count_ctx),
        'baseline_npv_count_prevalence': metrics.npv(ref, count_ctx),
    })
    return {'metadata': metadata, 'rows': rows}


def rd_report(study, cfg):
    """Recomputes the detection iso-utility intercept table of a
    recall/detection study. Intercepts are reported in units of 1e-3.

    :param study: study fixture
    :type study: ruleout.studies.StudyFixture
    :param cfg: bootstrap settings
    :type cfg: ruleout.inference.BootstrapConfig
    :rtype: dict
    """

    u_rel = study.relative_utility
    rows = []
    for row in study.rows:
        p = study.rd_point(row)
        is_baseline = row is study.baseline
        candidate, _ = inference.bootstrap_rd(
            study.paired_table(row), u_rel, cfg)

        diui = 1e3 * metrics.diui(p, u_rel)
        rows.append(collections.OrderedDict([
            ('ruleout_pct', row['ruleout_pct']),
            ('recall_rate', p.recall_rate),
            ('detection_rate', p.detection_rate),
            ('diui_e3', diui),
            ('published_diui_e3', row['diui_e3']),
            ('diui_delta_e3', diui - row['diui_e3']),
            ('diui_ci_low_e3', 1e3 * candidate.ci_low),
            ('diui_ci_high_e3', 1e3 * candidate.ci_high),
            ('published_ci_low_e3', row['diui_ci_e3'][0]),
            ('published_ci_high_e3', row['diui_ci_e3'][1]),
            ('p_eu_pct', None if is_baseline else _pct(
                candidate.exceedance_probability)),
            ('published_p_eu_pct', row['p_eu_pct']),
        ]))

    return {'metadata': _metadata(study, cfg), 'rows': rows}


def ratio_report(study, cfg):
    """Ratio of the with-device to the without-device expected utility
    against the rule-out percentage.

    :param study: study fixture
    :type study: ruleout.studies.StudyFixture
    :param cfg: bootstrap settings
    :type cfg: ruleout.inference.BootstrapConfig
    :rtype: dict
    """

    if study.space == constants.RD_SPACE:
        metric = inference.diui_ratio_metric(study.relative_utility)
    else:
        metric = inference.eu_ratio_metric(study.context())

    rows = []
    for row in study.rows:
        candidate, _ = inference.bootstrap_metric(
            study.paired_table(row), metric, cfg)
        rows.append(collections.OrderedDict([
            ('ruleout_pct', row['ruleout_pct']),
            ('ratio', candidate.point_estimate),
            ('ratio_ci_low', candidate.ci_low),
            ('ratio_ci_high', candidate.ci_high),
        ]))

    return {'metadata': _metadata(study, cfg), 'rows': rows}
