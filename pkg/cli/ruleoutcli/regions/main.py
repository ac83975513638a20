import collections

import docopt

import ruleoutcli
from ruleout import cmds, emitting, metrics, regions, util
from ruleout.errors import RuleoutException
from ruleoutcli import tables
from ruleoutcli import util as cliutil
from ruleoutcli.subcommand import default_command_info, default_doc
from ruleoutcli.util import decorate_docopt_usage

emitter = emitting.FlatEmitter()
logger = util.get_logger(__name__)

DEFAULT_RESOLUTION = 101


def main(argv, toml_config):
    try:
        return _main(argv, toml_config)
    except RuleoutException as e:
        emitter.publish(e)
        return 2


@decorate_docopt_usage
def _main(argv, toml_config):
    args = docopt.docopt(
        default_doc("regions"),
        argv=argv,
        version='ruleout-regions version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(args, toml_config), args)


def _cmds(args, toml_config):
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['regions', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['regions', '--ref-se'],
            arg_keys=['--ref-se', '--ref-sp', '--se', '--sp'],
            function=lambda ref_se, ref_sp, se, sp: _regions(
                ref_se, ref_sp, se, sp, args, toml_config)),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("regions"))
    return 0


def _line_row(line):
    return collections.OrderedDict([
        ('region', line.region),
        ('slope', line.slope),
        ('intercept', line.intercept),
        ('anchor_x', line.anchor_x),
        ('anchor_y', line.anchor_y),
    ])


def _regions(ref_se, ref_sp, se, sp, args, toml_config):
    """Boundary lines of a reference and, when given, the verdict of a
    candidate against them.

    :returns: process return code
    :rtype: int
    """

    ref = metrics.RocPoint.from_se_sp(
        util.parse_float(ref_se, '--ref-se'),
        util.parse_float(ref_sp, '--ref-sp'))
    u_rel = cliutil.require_relative_utility(
        cliutil.relative_utility(args, toml_config))
    ctx = metrics.UtilityContext(
        util.parse_float(args['--prevalence'], '--prevalence'), u_rel)

    metadata = {
        'ref_sensitivity': ref.tpr,
        'ref_specificity': ref.specificity,
        'prevalence': ctx.prevalence,
        'relative_utility': u_rel,
    }
    fmt = cliutil.output_format(args, toml_config)

    if args['--plot-data']:
        resolution = DEFAULT_RESOLUTION
        if args['--resolution'] is not None:
            resolution = util.parse_int(args['--resolution'], '--resolution')
        metadata['resolution'] = resolution
        report = {
            'metadata': metadata,
            'rows': regions.boundary_polylines(ref, ctx, resolution),
        }
        emitting.publish_report(
            emitter, report, tables.report_table, lambda r: r['rows'], fmt)
        return 0

    report = {
        'metadata': metadata,
        'lines': [_line_row(line)
                  for line in regions.boundary_lines(ref, ctx)],
    }

    if (se is None) != (sp is None):
        raise RuleoutException('--se and --sp must be given together')
    if se is not None:
        cand = metrics.RocPoint.from_se_sp(
            util.parse_float(se, '--se'), util.parse_float(sp, '--sp'))
        verdict = regions.classify(cand, ref, ctx)
        report['verdict'] = collections.OrderedDict([
            ('sensitivity', cand.tpr),
            ('specificity', cand.specificity),
            ('sesp_superior', verdict.sesp_superior),
            ('ppv_npv_superior', verdict.ppv_npv_superior),
            ('eu_superior', verdict.eu_superior),
        ])

    emitting.publish_report(
        emitter, report, _table, _rows, fmt)
    return 0


def _table(report):
    blocks = [tables.report_table(report, 'lines')]
    if 'verdict' in report:
        blocks.append(tables.metadata_block(report['verdict']))
    return '\n\n'.join(blocks)


def _rows(report):
    if 'verdict' in report:
        return [report['verdict']]
    return report['lines']
