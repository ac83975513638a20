"""Optional TOML configuration holding defaults for command line tunables.

A configuration file is only read when the user points at one; without it
every tunable falls back to the built-in defaults in
:py:mod:`ruleout.constants`, so outputs depend on the flags alone.
"""

import collections.abc
import importlib.resources
import json

import toml

from ruleout import constants, util
from ruleout.errors import RuleoutException

logger = util.get_logger(__name__)

DEFAULTS = {
    'bootstrap.samples': constants.DEFAULT_BOOTSTRAP_SAMPLES,
    'bootstrap.seed': constants.DEFAULT_BOOTSTRAP_SEED,
    'bootstrap.ci': constants.DEFAULT_CI_LEVEL,
    'bootstrap.mode': 'conditional',
    'bootstrap.workers': 1,
    'output.format': 'table',
    'utility.relative_utility': None,
}
"""Built-in value of every configurable property"""


def empty():
    """
    :returns: a configuration with no properties set
    :rtype: Toml
    """

    return Toml({})


def read_from_path(path):
    """Parses a TOML configuration file without validating it

    :param path: Path to the TOML file
    :type path: str
    :returns: Map for the configuration file
    :rtype: Toml
    """

    with util.open_file(path, 'r', encoding='utf-8') as config_file:
        try:
            toml_obj = toml.loads(config_file.read())
        except Exception as e:
            raise RuleoutException(
                'Error parsing config file at [{}]: {}'.format(path, e))

    return Toml(toml_obj)


def load_from_path(path):
    """Loads and validates a TOML configuration file

    :param path: Path to the TOML file
    :type path: str
    :returns: Map for the configuration file
    :rtype: Toml
    """

    toml_config = read_from_path(path)
    errs = validate(toml_config)
    if errs:
        raise RuleoutException(
            'Invalid config file at [{}]:\n{}'.format(
                path, util.list_to_err(errs)))

    logger.info('Loaded configuration from %s', path)
    return toml_config


def get_config_schema():
    """
    :returns: the configuration schema
    :rtype: dict
    """

    resource = importlib.resources.files('ruleout').joinpath(
        'data/config-schema/ruleout.json')
    return json.loads(resource.read_text(encoding='utf-8'))


def validate(toml_config):
    """
    :param toml_config: configuration to check
    :type toml_config: Toml
    :returns: schema violations, empty when valid
    :rtype: [str]
    """

    return util.validate_json(toml_config._dictionary, get_config_schema())


def get_config_val(name, toml_config):
    """Returns the value of a dotted property, or its built-in default when
    the file does not set it.

    :param name: name of the property, e.g. 'bootstrap.samples'
    :type name: str
    :param toml_config: configuration
    :type toml_config: Toml
    :returns: value of 'name' parameter
    :rtype: str | int | float | None
    """

    split_key(name)
    try:
        return toml_config[name]
    except KeyError:
        return DEFAULTS.get(name)


def resolve(flag_value, name, toml_config, parse):
    """Resolve a tunable: the command line flag wins over the configuration
    file, which wins over the built-in default.

    :param flag_value: raw docopt value, None when the flag is absent
    :type flag_value: str | None
    :param name: dotted property name
    :type name: str
    :param toml_config: configuration
    :type toml_config: Toml
    :param parse: converts a raw flag string
    :type parse: func(str, str) -> object
    :returns: resolved value
    :rtype: object
    """

    if flag_value is not None:
        return parse(flag_value, name)
    return get_config_val(name, toml_config)


def split_key(name):
    """
    :param name: the full property path - e.g. bootstrap.seed
    :type name: str
    :returns: the section and property name
    :rtype: (str, str)
    """

    terms = name.split('.', 1)
    if len(terms) != 2:
        raise RuleoutException('Property name must have both a section and '
                               'key: <section>.<key> - E.g. bootstrap.seed')

    return (terms[0], terms[1])


def generate_choice_msg(name, value):
    """
    :param name: name of the property
    :type name: str
    :param value: dictionary for the value
    :type value: Toml
    :returns: an error message for top level properties
    :rtype: str
    """

    message = ("Property {!r} doesn't fully specify a value - "
               "possible properties are:").format(name)
    for key, _ in sorted(value.property_items()):
        message += '\n{}.{}'.format(name, key)

    return message


def _get_path(toml_config, path):
    """
    :param toml_config: Dict with the configuration values
    :type toml_config: dict
    :param path: Path to the value. E.g. 'path.to.value'
    :type path: str
    :returns: Value stored at the given path
    :rtype: double, int, str, list or dict
    """

    for section in path.split('.'):
        toml_config = toml_config[section]

    return toml_config


def _iterator(parent, dictionary):
    """
    :param parent: Path to the value parameter
    :type parent: str
    :param dictionary: Value of the key
    :type dictionary: collections.abc.Mapping
    :returns: An iterator of tuples for each property and value
    :rtype: iterator of (str, any) where any can be str, int, double, list
    """

    for key, value in dictionary.items():
        new_key = key if parent is None else "{}.{}".format(parent, key)

        if isinstance(value, collections.abc.Mapping):
            yield from _iterator(new_key, value)
        else:
            yield (new_key, value)


class Toml(collections.abc.Mapping):
    """Read-only view over a parsed TOML document with dotted-path keys.

    :param dictionary: configuration dictionary
    :type dictionary: dict
    """

    def __init__(self, dictionary):
        self._dictionary = dictionary

    def __getitem__(self, path):
        """
        :param path: Path to the value. E.g. 'path.to.value'
        :type path: str
        :returns: Value stored at the given path
        :rtype: double, int, str, list or Toml
        """

        try:
            toml_config = _get_path(self._dictionary, path)
        except TypeError:
            raise KeyError(path)
        if isinstance(toml_config, collections.abc.Mapping):
            return Toml(toml_config)
        return toml_config

    def __iter__(self):
        return iter(self._dictionary)

    def __len__(self):
        return len(self._dictionary)

    def property_items(self):
        """Iterator for full-path keys and values

        :returns: Iterator for full-path keys and values
        :rtype: iterator of tuples
        """

        return _iterator(None, self._dictionary)
