import json


def help_bytes(command):
    """Bytes printed for `ruleout <command> --help`

    :param command: command name
    :type command: str
    :rtype: bytes
    """

    with open('ruleoutcli/data/help/{}.txt'.format(command),
              encoding='utf-8') as f:
        return (f.read().strip('\n') + '\n').encode('utf-8')


def json_report(stdout):
    """
    :param stdout: output of a command run with --format=json
    :type stdout: bytes
    :rtype: dict
    """

    return json.loads(stdout.decode('utf-8'))
