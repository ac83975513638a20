import docopt

import ruleoutcli
from ruleout import cmds, emitting, util
from ruleout.errors import RuleoutException
from ruleoutcli.subcommand import (default_command_documentation,
                                   default_command_info, default_doc,
                                   default_subcommands)
from ruleoutcli.util import decorate_docopt_usage

emitter = emitting.FlatEmitter()
logger = util.get_logger(__name__)


def main(argv, toml_config):
    try:
        return _main(argv)
    except RuleoutException as e:
        emitter.publish(e)
        return 2


@decorate_docopt_usage
def _main(argv):
    args = docopt.docopt(
        default_doc("help"),
        argv=argv,
        version='ruleout-help version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(), args)


def _cmds():
    """
    :returns: All of the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['help', '--info'],
            arg_keys=[],
            function=_info),

        cmds.Command(
            hierarchy=['help'],
            arg_keys=['<subcommand>'],
            function=_help),
    ]


def _info():
    """
    :returns: process return code
    :rtype: int
    """

    emitter.publish(default_command_info("help"))
    return 0


def _help(command):
    """
    :param command: the command name for which you want to see a help
    :type command: str
    :returns: process return code
    :rtype: int
    """

    if command is not None:
        return _help_command(command)
    return ruleout_help()


def ruleout_help():
    """
    help text for `ruleout` command

    :returns: process return code
    :rtype: int
    """

    results = [(c, default_command_info(c)) for c in default_subcommands()]
    commands_message = ''.join(
        '\n\t{:15}\t{}'.format(name, info) for name, info in results)

    emitter.publish(
        "Evaluate AI devices that rule out low-suspicion screening exams\n"
        "by the expected utility of the whole reading workflow.\n")
    emitter.publish("Available ruleout commands:")
    emitter.publish(commands_message)
    emitter.publish(
        "\nGet detailed command description with "
        "'ruleout <command> --help'.")

    return 0


def _help_command(command):
    """
    :param command: the command name for which you want to see a help
    :type command: str
    :returns: process return code
    :rtype: int
    """

    if command not in default_subcommands():
        raise RuleoutException(
            "{!r} is not a ruleout command. Valid commands are: {}".format(
                command, ', '.join(default_subcommands())))

    emitter.publish(default_command_documentation(command))
    return 0
