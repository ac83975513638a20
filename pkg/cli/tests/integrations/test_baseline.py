import json

import pytest

from .common import assert_command, exec_command


def test_info():
    assert_command(['ruleout', 'baseline-ru', '--info'],
                   stdout=b'Estimate the relative utility implied by the '
                          b'tangent of a performance curve\n')


def test_curve_file():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'baseline-ru', '--curve=tests/data/curves/linear.csv',
         '--at=0.03', '--format=json'])

    assert returncode == 0
    row, = json.loads(stdout.decode('utf-8'))['rows']
    assert row['relative_utility'] == pytest.approx(111, rel=1e-9)


def test_fixture_table():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'baseline-ru', '--fixture=euro-double-reading',
         '--at=0.032'])

    assert returncode == 0
    text = stdout.decode('utf-8')
    assert 'curve: fixture:euro-double-reading' in text
    assert 'RELATIVE_UTILITY' in text


def test_outside_knot_range():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'baseline-ru', '--fixture=euro-double-reading',
         '--at=0.9'])

    assert returncode == 2
    assert stdout == b''
    assert b'outside the knot range' in stderr
