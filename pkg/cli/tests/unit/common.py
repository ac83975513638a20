import contextlib
import io
import sys

import mock

from ruleout import config


@contextlib.contextmanager
def mock_args(args):
    """ Context manager that mocks sys.args and captures stdout/stderr

    :param args: sys.args values to mock
    :type args: [str]
    :rtype: None
    """
    with mock.patch('sys.argv', ['ruleout'] + args):
        stdout, stderr = sys.stdout, sys.stderr
        sys.stdout, sys.stderr = io.StringIO(), io.StringIO()
        try:
            yield sys.stdout, sys.stderr
        finally:
            sys.stdout, sys.stderr = stdout, stderr


def exec_mock(main, args, toml_config=None):
    """Call a subcommand main function with sys.args mocked, and capture
    stdout/stderr

    :param main: main function to call
    :type main: function
    :param args: sys.args to mock, excluding the initial 'ruleout'
    :type args: [str]
    :param toml_config: configuration, empty by default
    :type toml_config: ruleout.config.Toml | None
    :returns: (returncode, stdout, stderr)
    :rtype: (int, bytes, bytes)
    """

    print('MOCK ARGS: {}'.format(' '.join(args)))

    if toml_config is None:
        toml_config = config.empty()

    with mock_args(args) as (stdout, stderr):
        returncode = main(args, toml_config)

    stdout_val = stdout.getvalue().encode('utf-8')
    stderr_val = stderr.getvalue().encode('utf-8')

    print('STDOUT: {}'.format(stdout_val))
    print('STDERR: {}'.format(stderr_val))

    return (returncode, stdout_val, stderr_val)


def assert_mock(main,
                args,
                returncode=0,
                stdout=b'',
                stderr=b'',
                toml_config=None):
    """Mock and call a main function, and assert expected behavior.

    :param main: main function to call
    :type main: function
    :param args: sys.args to mock, excluding the initial 'ruleout'
    :type args: [str]
    :type returncode: int
    :param stdout: Expected stdout
    :type stdout: bytes
    :param stderr: Expected stderr
    :type stderr: bytes
    :param toml_config: configuration, empty by default
    :type toml_config: ruleout.config.Toml | None
    :rtype: None
    """

    returncode_, stdout_, stderr_ = exec_mock(main, args, toml_config)

    assert returncode_ == returncode
    assert stdout_ == stdout
    assert stderr_ == stderr
