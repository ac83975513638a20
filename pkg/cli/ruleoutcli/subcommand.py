import importlib.resources
import traceback


def _default_modules():
    """Dict of the ruleout subcommands and their main methods

    :returns: subcommand -> main method
    :rtype: {}
    """

    # avoid circular imports
    from ruleoutcli.baseline import main as baseline_main
    from ruleoutcli.compare import main as compare_main
    from ruleoutcli.config import main as config_main
    from ruleoutcli.help import main as help_main
    from ruleoutcli.metrics import main as metrics_main
    from ruleoutcli.regions import main as regions_main
    from ruleoutcli.reproduce import main as reproduce_main
    from ruleoutcli.simulate import main as simulate_main

    return {'baseline-ru': baseline_main,
            'compare': compare_main,
            'config': config_main,
            'help': help_main,
            'metrics': metrics_main,
            'regions': regions_main,
            'reproduce': reproduce_main,
            'simulate': simulate_main,
            }


def default_subcommands():
    """
    :returns: names of the ruleout subcommands
    :rtype: [str]
    """

    return sorted(_default_modules())


def default_doc(command):
    """Returns documentation of command

    :param command: ruleout command, or 'ruleout' for the top level
    :type command: str
    :returns: docopt usage text of command
    :rtype: str
    """

    resource = importlib.resources.files('ruleoutcli').joinpath(
        'data/help/{}.txt'.format(command))
    return resource.read_text(encoding='utf-8')


def default_command_info(command):
    """top level documentation of a ruleout command

    :param command: name of command
    :param type: str
    :returns: command summary
    :rtype: str
    """

    doc = default_command_documentation(command)
    return doc.splitlines()[1].strip(".").lstrip()


def default_command_documentation(command):
    """documentation of a ruleout command

    :param command: name of command
    :param type: str
    :returns: command summary
    :rtype: str
    """

    return default_doc(command).rstrip('\r\n')


class SubcommandMain():

    def __init__(self, command, args, toml_config):
        """Represents a subcommand running in the main thread

        :param command: name of the subcommand
        :type command: str
        :param args: arguments following the subcommand
        :type args: [str]
        :param toml_config: configuration
        :type toml_config: ruleout.config.Toml
        """

        self._command = command
        self._args = args
        self._toml_config = toml_config

    def run_and_capture(self):
        """
        Run a command and capture exceptions. This is a blocking call
        :returns: tuple of exitcode, error (or None)
        :rtype: int, str | None
        """

        m = _default_modules()[self._command]
        err = None
        try:
            exit_code = m.main([self._command] + self._args,
                               self._toml_config)
        except Exception:
            err = traceback.format_exc()
            traceback.print_exc()
            exit_code = 1
        return exit_code, err
