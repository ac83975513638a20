import concurrent.futures
import contextlib
import functools
import json
import logging
import math
import os
import re
import sys
import time

import jsonschema

from ruleout import constants
from ruleout.errors import RuleoutException


def get_logger(name):
    """Get a logger

    :param name: The name of the logger. E.g. __name__
    :type name: str
    :returns: The logger for the specified name
    :rtype: logging.Logger
    """

    return logging.getLogger(name)


def configure_logger(log_level):
    """Configure the program's logger.

    :param log_level: Log level for configuring logging
    :type log_level: str | None
    :rtype: None
    """

    if log_level is None:
        logging.disable(logging.CRITICAL)
        return None

    log_level = log_level.lower()
    if log_level in constants.VALID_LOG_LEVEL_VALUES:
        logging.disable(logging.NOTSET)
        logging.basicConfig(
            format=('%(threadName)s: '
                    '%(asctime)s '
                    '%(pathname)s:%(funcName)s:%(lineno)d - '
                    '%(message)s'),
            stream=sys.stderr,
            level=log_level.upper())
        return None

    msg = 'Log level set to an unknown value {!r}. Valid values are {!r}'
    raise RuleoutException(
        msg.format(log_level, constants.VALID_LOG_LEVEL_VALUES))


@contextlib.contextmanager
def open_file(path, *args, **kwargs):
    """Context manager that opens a file, and raises a RuleoutException if
    it fails.

    :param path: file path
    :type path: str
    :param *args: other arguments to pass to `open`
    :type *args: [str]
    :returns: a context manager
    :rtype: context manager
    """

    try:
        file_ = open(path, *args, **kwargs)
    except (IOError, OSError) as e:
        logger.exception('Unable to open file: %s', path)

        raise io_exception(path, e.errno)

    try:
        yield file_
    finally:
        file_.close()


def io_exception(path, errno):
    """Returns a RuleoutException for when there is an error opening the
    file at `path`

    :param path: file path
    :type path: str
    :param errno: IO error number
    :type errno: int
    :returns: RuleoutException
    :rtype: RuleoutException
    """

    return RuleoutException('Error opening file [{}]: {}'.format(
        path, os.strerror(errno)))


def decode_line(line):
    """Text of one input line without a leading byte order mark

    :param line: raw line of a file opened in binary mode, or text
    :type line: bytes | str
    :returns: the decoded line
    :rtype: str
    :raises UnicodeDecodeError: when `line` is not UTF-8
    """

    if isinstance(line, bytes):
        line = line.decode('utf-8')
    return line.lstrip('\ufeff')


def decode_error_reason(error):
    """
    :param error: failed decoding of one line
    :type error: UnicodeDecodeError
    :rtype: str
    """

    return 'not valid UTF-8 text, byte {:#04x} at column {}'.format(
        error.object[error.start], error.start + 1)


def load_json(reader):
    """Deserialize a reader into a python object

    :param reader: the json reader
    :type reader: a :code:`.read()`-supporting object
    :returns: the deserialized JSON object
    :rtype: dict | list | str | int | float | bool
    """

    try:
        return json.load(reader)
    except Exception as error:
        logger.error(
            'Unhandled exception while loading JSON: %r',
            error)

        raise RuleoutException('Error loading JSON: {}'.format(error))


def validate_json(instance, schema):
    """Validate an instance under the given schema.

    :param instance: the instance to validate
    :type instance: dict
    :param schema: the schema to validate with
    :type schema: dict
    :returns: list of errors as strings
    :rtype: [str]
    """

    validator = jsonschema.Draft4Validator(schema)
    validation_errors = sorted(
        validator.iter_errors(instance), key=lambda ve: ve.message)

    return [_format_validation_error(e) for e in validation_errors]


def _format_validation_error(error):
    """
    :param error: validation error to format
    :type error: jsonchema.exceptions.ValidationError
    :returns: string representation of the validation error
    :rtype: str
    """

    match = re.search("(.+) is a required property", error.message)
    if match:
        message = 'Error: missing required property {}.'.format(
            match.group(1))
    else:
        message = 'Error: {}\n'.format(error.message)
        if len(error.absolute_path) > 0:
            message += 'Path: {}\n'.format(
                '.'.join(str(path) for path in error.absolute_path))
        message += 'Value: {}'.format(json.dumps(error.instance))

    return message


def list_to_err(errs):
    """convert list of error strings to a single string

    :param errs: list of string errors
    :type errs: [str]
    :returns: error message
    :rtype: str
    """

    return str.join('\n\n', errs)


def parse_int(string, name='value'):
    """Parse string as an integer

    :param string: string to parse as an integer
    :type string: str
    :param name: flag or field name used in the error message
    :type name: str
    :returns: the interger value of the string
    :rtype: int
    """

    try:
        return int(string)
    except (TypeError, ValueError):
        logger.error(
            'Unhandled exception while parsing string as int: %r',
            string)

        raise RuleoutException(
            'Error parsing {} as an integer: {!r}'.format(name, string))


def parse_float(string, name='value'):
    """Parse string as a finite float

    :param string: string to parse as a float
    :type string: str
    :param name: flag or field name used in the error message
    :type name: str
    :returns: the float value of the string
    :rtype: float
    """

    try:
        value = float(string)
    except (TypeError, ValueError):
        logger.error(
            'Unhandled exception while parsing string as float: %r',
            string)

        raise RuleoutException(
            'Error parsing {} as a number: {!r}'.format(name, string))

    if not math.isfinite(value):
        raise RuleoutException(
            '{} must be finite, got {!r}'.format(name, string))
    return value


def parse_float_list(string, name='value'):
    """Parse a comma separated list of numbers

    :param string: e.g. '0,0.1,0.25'
    :type string: str
    :param name: flag name used in error messages
    :type name: str
    :rtype: [float]
    """

    items = [item.strip() for item in string.split(',')]
    if not all(items):
        raise RuleoutException(
            '{} must be a comma separated list of numbers'.format(name))
    return [parse_float(item, name) for item in items]


def duration(fn):
    """ Decorator to log the duration of a function.

    :param fn: function to measure
    :type fn: function
    :returns: wrapper function
    :rtype: function
    """

    @functools.wraps(fn)
    def timer(*args, **kwargs):
        start = time.time()
        try:
            return fn(*args, **kwargs)
        finally:
            logger.debug("duration: {0}.{1}: {2:2.2f}s".format(
                fn.__module__,
                fn.__name__,
                time.time() - start))

    return timer


def ordered_map(fn, objs, workers=1):
    """Apply `fn` to every element of `objs`, in parallel when `workers`
    is larger than one. Results keep the order of `objs`.

    :param fn: function
    :type fn: function
    :param objs: objs
    :type objs: iterable
    :param workers: number of threads
    :type workers: int
    :rtype: list
    """

    if workers <= 1:
        return [fn(obj) for obj in objs]

    with concurrent.futures.ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, objs))


logger = get_logger(__name__)
