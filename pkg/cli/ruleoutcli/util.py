from functools import wraps

import docopt

from ruleout import config, constants, emitting, inference, util
from ruleout.errors import RuleoutException

emitter = emitting.FlatEmitter()


def decorate_docopt_usage(func):
    """Handle DocoptExit exception

    :param func: function
    :type func: function
    :return: wrapped function
    :rtype: function
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
        except docopt.DocoptExit as e:
            emitter.publish("Command not recognized\n")
            emitter.publish(e)
            return 2
        return result
    return wrapper


def _keep(value, name):
    return value


def _choice(choices):
    def parse(value, name):
        if value not in choices:
            raise RuleoutException(
                '{} must be one of {}, got {!r}'.format(
                    name, ', '.join(choices), value))
        return value
    return parse


def output_format(args, toml_config):
    """
    :param args: docopt result
    :type args: dict
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: one of constants.VALID_OUTPUT_FORMATS
    :rtype: str
    """

    return config.resolve(
        args.get('--format'), 'output.format', toml_config,
        _choice(constants.VALID_OUTPUT_FORMATS))


def relative_utility(args, toml_config):
    """
    :param args: docopt result
    :type args: dict
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :returns: the relative utility, None when neither the flag nor the
              configuration sets one
    :rtype: float | None
    """

    return config.resolve(
        args.get('--relative-utility'), 'utility.relative_utility',
        toml_config, util.parse_float)


def bootstrap_config(args, toml_config):
    """Bootstrap settings from the flags, the configuration file and the
    built-in defaults, in that order.

    :param args: docopt result
    :type args: dict
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :rtype: ruleout.inference.BootstrapConfig
    """

    return inference.BootstrapConfig(
        n_resamples=config.resolve(
            args.get('--samples'), 'bootstrap.samples', toml_config,
            util.parse_int),
        ci_level=config.resolve(
            args.get('--ci'), 'bootstrap.ci', toml_config,
            util.parse_float),
        seed=config.resolve(
            args.get('--seed'), 'bootstrap.seed', toml_config,
            util.parse_int),
        mode=config.resolve(
            args.get('--mode'), 'bootstrap.mode', toml_config, _keep),
        pairing=args.get('--pairing') or 'paired',
        workers=config.resolve(
            args.get('--workers'), 'bootstrap.workers', toml_config,
            util.parse_int))


def workers(args, toml_config):
    """
    :param args: docopt result
    :type args: dict
    :param toml_config: configuration
    :type toml_config: ruleout.config.Toml
    :rtype: int
    """

    value = config.resolve(
        args.get('--workers'), 'bootstrap.workers', toml_config,
        util.parse_int)
    inference.check_workers(value)
    return value


def require_relative_utility(u_rel):
    """
    :param u_rel: resolved relative utility
    :type u_rel: float | None
    :rtype: float
    """

    if u_rel is None:
        raise RuleoutException(
            'A relative utility is required: pass --relative-utility or set '
            'utility.relative_utility in the configuration file')
    return u_rel
