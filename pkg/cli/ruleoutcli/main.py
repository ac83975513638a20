import signal
import sys

import docopt

import ruleoutcli
from ruleout import config, emitting, errors, util
from ruleout.errors import RuleoutException
from ruleoutcli.help.main import ruleout_help
from ruleoutcli.subcommand import (default_doc, default_subcommands,
                                   SubcommandMain)
from ruleoutcli.util import decorate_docopt_usage


logger = util.get_logger(__name__)
emitter = emitting.FlatEmitter()


def main():
    try:
        return _main()
    except RuleoutException as e:
        emitter.publish(e)
        return 2


@decorate_docopt_usage
def _main(argv=None):
    signal.signal(signal.SIGINT, signal_handler)

    args = docopt.docopt(
        default_doc("ruleout"), argv=argv, options_first=True)

    util.configure_logger(args['--log-level'])

    if args['--version']:
        emitter.publish("ruleoutcli.version={}".format(ruleoutcli.version))
        return 0

    command = args['<command>']

    if not command:
        return ruleout_help()

    if command not in default_subcommands():
        emitter.publish(errors.DefaultError(
            "{!r} is not a ruleout command. "
            "See 'ruleout --help'.".format(command)))
        return 2

    toml_config = _load_config(args['--config'], command)

    sc = SubcommandMain(command, args['<args>'], toml_config)
    exitcode, _ = sc.run_and_capture()
    return exitcode


def _load_config(path, command):
    """
    :param path: path given with --config, if any
    :type path: str | None
    :param command: subcommand about to run
    :type command: str
    :returns: the configuration; `config` reads it unvalidated so that
              `ruleout config validate` can report the violations
    :rtype: ruleout.config.Toml
    """

    if path is None:
        return config.empty()
    if command == 'config':
        return config.read_from_path(path)
    return config.load_from_path(path)


def signal_handler(signal, frame):
    emitter.publish(
        errors.DefaultError("User interrupted command with Ctrl-C"))
    sys.exit(0)


if __name__ == "__main__":
    sys.exit(main())
