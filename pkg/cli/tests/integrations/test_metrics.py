import json

import pytest

from .common import assert_command, exec_command


def test_info():
    assert_command(['ruleout', 'metrics', '--info'],
                   stdout=b'Compute predictive values, likelihood ratios and '
                          b'iso-utility intercepts of an operating point\n')


def test_version():
    assert_command(['ruleout', 'metrics', '--version'],
                   stdout=b'ruleout-metrics version 0.1.0\n')


def test_table():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'metrics', '--se=0.906', '--sp=0.935',
         '--prevalence=0.007', '--relative-utility=162'])

    assert returncode == 0
    assert stderr == b''
    lines = stdout.decode('utf-8').splitlines()
    assert lines[0].split() == ['METRIC', 'VALUE']
    assert ['iui', '0.8491'] in [line.split() for line in lines]


def test_json():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'metrics', '--recall-rate=0.032',
         '--detection-rate=0.0061', '--relative-utility=111',
         '--format=json'])

    assert returncode == 0
    values = json.loads(stdout.decode('utf-8'))['metrics']
    assert values['diui'] == pytest.approx(0.0061 - 0.032 / 112)


def test_csv():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'metrics', '--se=0.9', '--sp=0.9', '--prevalence=0.5',
         '--format=csv'])

    assert returncode == 0
    lines = stdout.decode('utf-8').splitlines()
    assert lines[0] == 'metric,value'
    values = dict(line.split(',') for line in lines[1:])
    assert float(values['ppv']) == pytest.approx(0.9)


def test_invalid_rate():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'metrics', '--se=1.2', '--sp=0.9', '--prevalence=0.5'])

    assert returncode == 2
    assert stdout == b''
    assert b'must be within [0, 1]' in stderr
