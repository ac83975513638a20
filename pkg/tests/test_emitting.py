import collections
import json
import math

from ruleout import emitting


def _report():
    return {
        'metadata': {'seed': 0},
        'rows': [{'name': 'baseline', 'rho_plus': math.inf}],
    }


def _rows(report):
    return [collections.OrderedDict([('name', 'baseline'), ('iui', 0.849)]),
            collections.OrderedDict([('name', '10%'), ('iui', None)])]


def _table(report):
    return 'NAME  IUI'


def _collect(fmt):
    events = []
    emitter = emitting.FlatEmitter(events.append)
    emitting.publish_report(emitter, _report(), _table, _rows, fmt)
    return events


def test_publish_json_report():
    events = _collect('json')
    assert events == [_report()]


def test_publish_csv_report():
    assert _collect('csv') == ['name,iui\nbaseline,0.849\n10%,']


def test_publish_table_report():
    assert _collect('table') == ['NAME  IUI']


def test_json_safe_replaces_non_finite_floats():
    safe = emitting.json_safe(_report())
    assert safe['rows'][0]['rho_plus'] == 'inf'
    assert json.loads(json.dumps(safe)) == safe


def test_to_csv_empty():
    assert emitting.to_csv([]) == ''


def test_print_handler_json(capsys):
    emitting.print_handler({'b': 1, 'a': [1, 2]})
    out, err = capsys.readouterr()
    assert json.loads(out) == {'a': [1, 2], 'b': 1}
    assert out.startswith('{\n  "a"')
    assert err == ''


def test_print_handler_exception(capsys):
    emitting.print_handler(ValueError('boom'))
    out, err = capsys.readouterr()
    assert out == ''
    assert err == 'boom\n'
