import os

import pytest

CLI_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture(autouse=True)
def _run_from_cli_root(monkeypatch):
    # The CLI suite uses paths relative to cli/ (see cli/tox.ini).
    monkeypatch.chdir(CLI_ROOT)
