import pytest

from ruleout import config
from ruleoutcli.metrics import main

from .common import assert_mock, exec_mock
from ..common import json_report


def _json(args, toml_config=None):
    returncode, stdout, stderr = exec_mock(
        main.main, ['metrics'] + args + ['--format=json'], toml_config)
    assert returncode == 0
    assert stderr == b''
    return json_report(stdout)


def test_info():
    assert_mock(main.main, ['metrics', '--info'],
                stdout=b'Compute predictive values, likelihood ratios and '
                       b'iso-utility intercepts of an operating point\n')


def test_roc_point():
    report = _json(['--se=0.906', '--sp=0.935', '--prevalence=0.007',
                    '--relative-utility=162'])
    values = report['metrics']

    assert report['metadata'] == {'space': 'roc'}
    assert values['iui'] == pytest.approx(0.849, abs=5e-4)
    assert values['npv'] == pytest.approx(0.9993, abs=5e-4)
    assert values['ppv'] == pytest.approx(0.0895, abs=5e-4)
    assert values['rho_plus'] == pytest.approx(0.906 / 0.065)
    assert values['detection_rate'] == pytest.approx(0.007 * 0.906)
    assert values['diui'] == pytest.approx(
        0.007 * 162 / 163 * values['iui'], rel=1e-9)
    assert 'expected_utility' not in values


def test_roc_point_without_relative_utility():
    values = _json(['--se=0.906', '--sp=0.935',
                    '--prevalence=0.007'])['metrics']

    assert 'ppv' in values
    assert 'iui' not in values
    assert 'diui' not in values


def test_relative_utility_from_config():
    toml_config = config.Toml({'utility': {'relative_utility': 162}})
    values = _json(['--se=0.906', '--sp=0.935', '--prevalence=0.007'],
                   toml_config)['metrics']

    assert values['relative_utility'] == 162
    assert values['iui'] == pytest.approx(0.849, abs=5e-4)


def test_outcome_utilities():
    values = _json(['--se=0.906', '--sp=0.935', '--prevalence=0.007',
                    '--utilities=1,-0.01,0,-1'])['metrics']

    assert values['relative_utility'] == pytest.approx(200)
    assert 'expected_utility' in values


def test_outcome_utilities_ignore_configured_relative_utility():
    toml_config = config.Toml({'utility': {'relative_utility': 162}})
    values = _json(['--se=0.906', '--sp=0.935', '--prevalence=0.007',
                    '--utilities=1,-0.01,0,-1'], toml_config)['metrics']

    assert values['relative_utility'] == pytest.approx(200)


def test_outcome_utilities_need_four_values():
    returncode, stdout, stderr = exec_mock(
        main.main, ['metrics', '--se=0.9', '--sp=0.9', '--prevalence=0.1',
                    '--utilities=1,2,3'])

    assert returncode == 2
    assert b'four values' in stderr


def test_rd_point():
    report = _json(['--recall-rate=0.032', '--detection-rate=0.0061',
                    '--relative-utility=111'])
    values = report['metrics']

    assert report['metadata'] == {'space': 'rd'}
    assert values['diui'] == pytest.approx(0.0061 - 0.032 / 112, abs=1e-12)
    assert values['diui'] == pytest.approx(5.83e-3, abs=0.1e-3)
    assert values['iso_slope'] == pytest.approx(1 / 112)
    assert 'sensitivity' not in values


def test_rd_point_with_prevalence():
    values = _json(['--recall-rate=0.032', '--detection-rate=0.0061',
                    '--prevalence=0.007',
                    '--relative-utility=111'])['metrics']

    assert values['sensitivity'] == pytest.approx(0.0061 / 0.007)
    assert values['specificity'] == pytest.approx(
        1 - (0.032 - 0.0061) / 0.993)
    assert values['diui'] == pytest.approx(
        0.007 * 111 / 112 * values['iui'], rel=1e-9)


def test_detection_above_recall():
    returncode, stdout, stderr = exec_mock(
        main.main, ['metrics', '--recall-rate=0.01',
                    '--detection-rate=0.02'])

    assert returncode == 2
    assert stdout == b''
    assert b'cannot exceed recall_rate' in stderr


def test_missing_prevalence_is_a_usage_error():
    returncode, stdout, stderr = exec_mock(
        main.main, ['metrics', '--se=0.906', '--sp=0.935'])

    assert returncode == 2
    assert stdout.startswith(b'Command not recognized')


def test_invalid_number():
    returncode, _, stderr = exec_mock(
        main.main, ['metrics', '--se=high', '--sp=0.935',
                    '--prevalence=0.007'])

    assert returncode == 2
    assert b"Error parsing --se as a number: 'high'" in stderr


def test_invalid_format():
    returncode, _, stderr = exec_mock(
        main.main, ['metrics', '--se=0.9', '--sp=0.9', '--prevalence=0.1',
                    '--format=xml'])

    assert returncode == 2
    assert b'output.format must be one of table, json, csv' in stderr


def test_csv():
    returncode, stdout, _ = exec_mock(
        main.main, ['metrics', '--recall-rate=0.032',
                    '--detection-rate=0.0061', '--format=csv'])

    assert returncode == 0
    assert stdout.decode('utf-8').splitlines() == [
        'metric,value',
        'recall_rate,0.032',
        'detection_rate,0.0061',
        'benign_recall_rate,{!r}'.format(0.032 - 0.0061),
    ]


def test_table_is_the_default():
    returncode, stdout, _ = exec_mock(
        main.main, ['metrics', '--recall-rate=0.032',
                    '--detection-rate=0.0061'])

    assert returncode == 0
    assert stdout.split(b'\n')[0].split() == [b'METRIC', b'VALUE']
