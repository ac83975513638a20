import abc
import collections.abc
import csv
import io
import json
import math
import pydoc
import re
import shutil
import sys

import pager
import pygments
from pygments.formatters import Terminal256Formatter
from pygments.lexers import JsonLexer

from ruleout import constants, errors, util

logger = util.get_logger(__name__)


class Emitter(object):
    """Abstract class for emitting events."""

    @abc.abstractmethod
    def publish(self, event):
        """Publishes an event.

        :param event: event to publish
        :type event: any
        """

        raise NotImplementedError


class FlatEmitter(Emitter):
    """Simple emitter that sends all publish events to the provided handler.
    If no handler is provider then use :py:const:`DEFAULT_HANDLER`.

    :param handler: event handler to call when publish is called
    :type handler: func(event) where event is defined in
                   :py:func:`FlatEmitter.publish`
    """

    def __init__(self, handler=None):
        if handler is None:
            self._handler = DEFAULT_HANDLER
        else:
            self._handler = handler

    def publish(self, event):
        """Publishes an event.

        :param event: event to publish
        :type event: any
        """

        self._handler(event)


def print_handler(event):
    """Default handler for printing event to stdout.

    :param event: event to emit to stdout
    :type event: str, dict, list, or ruleout.errors.Error
    """

    if event is None:
        pass

    elif isinstance(event, str):
        _page(event)

    elif isinstance(event, errors.Error):
        print(event.error(), file=sys.stderr)
        sys.stderr.flush()

    elif isinstance(event, Exception):
        print(event, file=sys.stderr)
        sys.stderr.flush()

    elif isinstance(event, (collections.abc.Mapping, collections.abc.Sequence,
                            bool, int, float)):
        _page(_process_json(event))

    else:
        logger.debug('Printing unknown type: %s, %r.', type(event), event)
        _page(event)


def publish_report(emitter, report, table_fn, rows_fn, fmt):
    """Publishes `report` as JSON, as CSV rows, or as a human table.

    :param emitter: emitter to use for publishing
    :type emitter: Emitter
    :param report: report with a 'metadata' entry
    :type report: dict
    :param table_fn: renders the report for humans
    :type table_fn: dict -> PrettyTable | str
    :param rows_fn: flattens the report into uniform rows
    :type rows_fn: dict -> [OrderedDict]
    :param fmt: one of constants.VALID_OUTPUT_FORMATS
    :type fmt: str
    :rtype: None
    """

    if fmt == 'json':
        emitter.publish(report)
    elif fmt == 'csv':
        emitter.publish(to_csv(rows_fn(report)))
    else:
        output = str(table_fn(report))
        if output:
            emitter.publish(output)


def to_csv(rows):
    """Serializes uniform rows with a header line

    :param rows: rows sharing the same keys in the same order
    :type rows: [OrderedDict]
    :rtype: str
    """

    if not rows:
        return ''

    out = io.StringIO()
    writer = csv.DictWriter(
        out, fieldnames=list(rows[0].keys()), lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_value(v) for k, v in row.items()})
    return out.getvalue().rstrip('\n')


def _csv_value(value):
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ''
    return value


def json_safe(event):
    """Replace non-finite floats, which JSON cannot carry, by strings

    :param event: JSON-like value
    :type event: dict | list | float | ...
    :rtype: dict | list | float | str | ...
    """

    if isinstance(event, float) and not math.isfinite(event):
        return str(event)
    if isinstance(event, collections.abc.Mapping):
        return {k: json_safe(v) for k, v in event.items()}
    if isinstance(event, (list, tuple)):
        return [json_safe(v) for v in event]
    return event


def _process_json(event):
    """Conditionally highlights the supplied JSON value.

    :param event: event to emit to stdout
    :type event: str, dict, list, or ruleout.errors.Error
    :returns: String representation of the supplied JSON value,
              possibly syntax-highlighted.
    :rtype: str
    """

    json_output = json.dumps(json_safe(event), sort_keys=True, indent=2)

    # Strip trailing whitespace
    json_output = re.sub(r'\s+$', '', json_output, 0, re.M)

    if not sys.stdout.isatty():
        return json_output

    return _highlight_json(json_output)


def _page(output):
    """Conditionally pipes the supplied output through a pager.

    :param output:
    :type output: object
    """

    output = str(output)

    if not sys.stdout.isatty():
        print(output)
        return

    num_lines = output.count('\n')
    exceeds_tty_height = pager.getheight() - 1 < num_lines

    pager_command = constants.PAGER_COMMAND
    if exceeds_tty_height and \
            shutil.which(pager_command.split(' ')[0]) is not None:
        pydoc.pipepager(output, cmd=pager_command)
    else:
        print(output)


def _highlight_json(json_value):
    """
    :param json_value: JSON value to syntax-highlight
    :type json_value: dict, list, number, string, boolean, or None
    :returns: A string representation of the supplied JSON value,
              highlighted for a terminal that supports ANSI colors.
    :rtype: str
    """

    return pygments.highlight(
        json_value, JsonLexer(), Terminal256Formatter()).strip()


DEFAULT_HANDLER = print_handler
"""The default handler for an emitter: :py:func:`print_handler`."""
