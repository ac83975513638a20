from .common import assert_command, exec_command
from ..common import help_bytes


def test_help():
    assert_command(['ruleout', '--help'], stdout=help_bytes('ruleout'))


def test_default():
    returncode, stdout, stderr = exec_command(['ruleout'])

    assert returncode == 0
    assert stderr == b''
    assert stdout.startswith(b'Evaluate AI devices that rule out')
    assert b'Available ruleout commands:' in stdout


def test_ruleout_help():
    _, default, _ = exec_command(['ruleout'])

    assert_command(['ruleout', 'help'], stdout=default)


def test_version():
    assert_command(['ruleout', '--version'],
                   stdout=b'ruleoutcli.version=0.1.0\n')


def test_log_level_flag():
    returncode, stdout, stderr = exec_command(
        ['ruleout', '--log-level=info', 'config', '--info'])

    assert returncode == 0
    assert stdout == b'Show and validate the configuration file\n'


def test_capital_log_level_flag():
    returncode, stdout, stderr = exec_command(
        ['ruleout', '--log-level=INFO', 'config', '--info'])

    assert returncode == 0
    assert stdout == b'Show and validate the configuration file\n'


def test_debug_logging_goes_to_stderr():
    returncode, stdout, stderr = exec_command(
        ['ruleout', '--log-level=debug', 'simulate',
         '--cohort=tests/data/cohort/toy.csv', '--fractions=0.5',
         '--format=csv'])

    assert returncode == 0
    assert stdout.startswith(b'requested_fraction,')
    assert b'Ingested cohort of 6 patients' in stderr


def test_invalid_log_level_flag():
    stderr = (b"Log level set to an unknown value 'blah'. Valid values are "
              b"['debug', 'info', 'warning', 'error', 'critical']\n")

    assert_command(['ruleout', '--log-level=blah', 'config', '--info'],
                   returncode=2,
                   stderr=stderr)


def test_unknown_command():
    assert_command(['ruleout', 'cluster'],
                   returncode=2,
                   stderr=b"'cluster' is not a ruleout command. "
                          b"See 'ruleout --help'.\n")


def test_unrecognized_arguments():
    returncode, stdout, stderr = exec_command(
        ['ruleout', 'metrics', '--se=0.9'])

    assert returncode == 2
    assert stdout == b'Command not recognized\n\n'
    assert stderr.startswith(b'Usage:')


def test_unknown_option():
    returncode, stdout, stderr = exec_command(
        ['ruleout', '--bogus', 'metrics'])

    assert returncode == 2
    assert stdout == b'Command not recognized\n\n'
    assert stderr.startswith(b'Usage:')
