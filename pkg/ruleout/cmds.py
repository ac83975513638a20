import collections

from ruleout.errors import RuleoutException

Command = collections.namedtuple(
    'Command',
    ['hierarchy', 'arg_keys', 'function'])
"""Describe a subcommand action.

:param hierarchy: docopt keys that must all be truthy for the action to run,
                  e.g. ['reproduce'] or ['metrics', '--info']
:type hierarchy: list of str
:param arg_keys: docopt keys whose values are passed to `function`, in order
:type arg_keys: list of str
:param function: the action; returns the process status
:type function: func(*args) -> int
"""


def execute(cmds, args):
    """Runs the first action whose hierarchy matches the parsed arguments.

    :param cmds: candidate actions, most specific first
    :type cmds: list of Command
    :param args: docopt result
    :type args: dict
    :returns: the process status
    :rtype: int
    """

    for hierarchy, arg_keys, function in cmds:
        if all(args[key] for key in hierarchy):
            return function(*[args[name] for name in arg_keys])

    raise RuleoutException(
        'Could not find a command for arguments: {}'.format(
            ' '.join(sorted(key for key, value in args.items() if value))))
