import pytest

from ruleoutcli.subcommand import default_subcommands

from .common import assert_command
from ..common import help_bytes


def test_help():
    assert_command(['ruleout', 'help', '--help'], stdout=help_bytes('help'))


def test_info():
    assert_command(['ruleout', 'help', '--info'],
                   stdout=b'Display help information about ruleout\n')


def test_version():
    assert_command(['ruleout', 'help', '--version'],
                   stdout=b'ruleout-help version 0.1.0\n')


@pytest.mark.parametrize('command', default_subcommands())
def test_help_command(command):
    assert_command(['ruleout', 'help', command], stdout=help_bytes(command))


@pytest.mark.parametrize('command', default_subcommands())
def test_command_help_flag(command):
    assert_command(['ruleout', command, '--help'],
                   stdout=help_bytes(command))


def test_help_unknown_command():
    stderr = (b"'cluster' is not a ruleout command. Valid commands are: "
              b"baseline-ru, compare, config, help, metrics, regions, "
              b"reproduce, simulate\n")
    assert_command(['ruleout', 'help', 'cluster'],
                   returncode=2,
                   stderr=stderr)
