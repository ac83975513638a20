from .common import assert_command, exec_command

TOY = ['ruleout', 'simulate', '--cohort=tests/data/cohort/toy.csv']


def test_info():
    assert_command(['ruleout', 'simulate', '--info'],
                   stdout=b'Simulate believe-the-negative rule-out on a '
                          b'cohort at several operating thresholds\n')


def test_csv():
    returncode, stdout, stderr = exec_command(
        TOY + ['--fractions=0,0.5', '--relative-utility=2', '--samples=100',
               '--format=csv'])

    assert returncode == 0
    assert stderr == b''
    lines = stdout.decode('utf-8').splitlines()
    assert lines[0].split(',')[:4] == [
        'requested_fraction', 'achieved_fraction', 'threshold', 'n_read']
    assert lines[1].startswith('0.0,0.0,-inf,6,')
    assert lines[2].startswith('0.5,0.5,')
    assert len(lines) == 3


def test_table():
    returncode, stdout, stderr = exec_command(
        TOY + ['--thresholds=3.5,5.5'])

    assert returncode == 0
    text = stdout.decode('utf-8')
    assert 'REQUESTED_FRACTION' in text
    assert 'n_patients: 6' in text


def test_bad_cohort():
    assert_command(
        ['ruleout', 'simulate', '--cohort=tests/data/cohort/bad_truth.csv',
         '--fractions=0.5'],
        returncode=2,
        stderr=b"Row 3 (line 4): truth must be 0 or 1, got '2'\n")


def test_missing_cohort():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'simulate', '--cohort=tests/data/cohort/missing.csv',
         '--fractions=0.5'])

    assert returncode == 2
    assert stdout == b''
    assert stderr.startswith(
        b'Error opening file [tests/data/cohort/missing.csv]')
