import docopt

import ruleoutcli
from ruleout import cmds, config, emitting, util
from ruleout.errors import RuleoutException
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
        default_doc("config"),
        argv=argv,
        version='ruleout-config version {}'.format(ruleoutcli.version))

    return cmds.execute(_cmds(toml_config), args)


def _cmds(toml_config):
    """
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: all the supported commands
    :rtype: list of ruleout.cmds.Command
    """

    return [
        cmds.Command(
            hierarchy=['config', 'show'],
            arg_keys=['<name>'],
            function=lambda name: _show(name, toml_config)),

        cmds.Command(
            hierarchy=['config', 'validate'],
            arg_keys=[],
            function=lambda: _validate(toml_config)),

        cmds.Command(
            hierarchy=['config'],
            arg_keys=['--info'],
            function=_info),
    ]


def _info(info):
    """
    :param info: Whether to output a description of this subcommand
    :type info: boolean
    :returns: process status
    :rtype: int
    """

    emitter.publish(default_command_info("config"))
    return 0


def _resolved(toml_config):
    """
    :returns: built-in defaults overlaid with the file's properties
    :rtype: dict
    """

    resolved = dict(config.DEFAULTS)
    resolved.update(toml_config.property_items())
    return resolved


def _show(name, toml_config):
    """
    :param name: dotted property name, None for all properties
    :type name: str | None
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: process status
    :rtype: int
    """

    if name is not None:
        try:
            value = toml_config[name]
        except KeyError:
            if name not in config.DEFAULTS:
                raise RuleoutException(
                    "Property {!r} doesn't exist".format(name))
            value = config.DEFAULTS[name]

        if isinstance(value, config.Toml):
            raise RuleoutException(config.generate_choice_msg(name, value))
        emitter.publish(_display(value))
    else:
        for key, value in sorted(_resolved(toml_config).items()):
            emitter.publish('{} {}'.format(key, _display(value)))

    return 0


def _display(value):
    return 'None' if value is None else str(value)


def _validate(toml_config):
    """
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: process status
    :rtype: int
    """

    errs = config.validate(toml_config)
    if len(errs) != 0:
        emitter.publish(util.list_to_err(errs))
        return 2

    emitter.publish("Congratulations, your configuration is valid!")
    return 0
