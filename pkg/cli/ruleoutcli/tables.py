import math
from collections import OrderedDict

import prettytable

EMPTY_ENTRY = '---'


def fmt(value):
    """Renders a report value for a human table.

    :param value: value to render
    :type value: float | int | bool | str | None
    :rtype: str
    """

    if value is None:
        return EMPTY_ENTRY
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return '{:.4g}'.format(value)
    return str(value)


def _column(key):
    return lambda row: fmt(row[key])


def table(fields, objs, **kwargs):
    """Returns a PrettyTable.  `fields` represents the header schema of
    the table.  `objs` represents the objects to be rendered into
    rows.

    :param fields: An OrderedDict, where each element represents a
                   column.  The key is the column header, and the
                   value is the function that transforms an element of
                   `objs` into a value for that column.
    :type fields: OrderdDict(str, function)
    :param objs: objects to render into rows
    :type objs: [object]
    :param **kwargs: kwargs to pass to `prettytable.PrettyTable`
    :type **kwargs: dict
    :rtype: PrettyTable
    """

    tb = prettytable.PrettyTable(
        [k.upper() for k in fields.keys()],
        border=False,
        hrules=prettytable.NONE,
        vrules=prettytable.NONE,
        **kwargs
    )
    tb.left_padding_width = 0
    tb.right_padding_width = 2

    for obj in objs:
        row = [fn(obj) for fn in fields.values()]
        tb.add_row(row)

    return tb


def rows_table(rows, columns=None):
    """Table of uniform report rows, one column per key.

    :param rows: report rows
    :type rows: [OrderedDict]
    :param columns: keys to show, all keys of the first row by default
    :type columns: [str] | None
    :rtype: PrettyTable
    """

    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    fields = OrderedDict((key, _column(key)) for key in columns)
    tb = table(fields, rows)
    for key in fields:
        tb.align[key.upper()] = 'r'
    return tb


def metadata_block(metadata):
    """Renders report metadata as 'key: value' lines, sorted by key. Lists
    are rendered one item per line.

    :param metadata: report metadata
    :type metadata: dict
    :rtype: str
    """

    lines = []
    for key, value in sorted(metadata.items()):
        if isinstance(value, list):
            lines.append('{}:'.format(key))
            lines.extend('  {}'.format(item) for item in value)
        else:
            lines.append('{}: {}'.format(key, fmt(value)))
    return '\n'.join(lines)


def metrics_table(report):
    """
    :param report: `metrics` report
    :type report: dict
    :rtype: PrettyTable
    """

    fields = OrderedDict([
        ('METRIC', lambda item: item[0]),
        ('VALUE', lambda item: fmt(item[1])),
    ])
    tb = table(fields, report['metrics'].items())
    tb.align['METRIC'] = 'l'
    tb.align['VALUE'] = 'r'
    return tb


def comparison_table(report):
    """
    :param report: `compare` report
    :type report: dict
    :rtype: str
    """

    blocks = [metadata_block(report['metadata']),
              str(rows_table(report['workflows']))]
    if 'verdict' in report:
        blocks.append(metadata_block(report['verdict']))
    return '\n\n'.join(blocks)


def report_table(report, key='rows'):
    """Metadata followed by the table of `report[key]`.

    :param report: report with a 'metadata' entry
    :type report: dict
    :param key: entry holding the rows
    :type key: str
    :rtype: str
    """

    return '\n\n'.join([metadata_block(report['metadata']),
                        str(rows_table(report[key]))])
