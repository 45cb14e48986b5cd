import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from entrylod.batch import convert_records, load_records, merged  # noqa: E402

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in _ACCEPTANCE.items():
        terminalreporter.write_line("%s %s" % ("PASS" if outcome == "passed" else "FAIL", name))


@pytest.fixture(scope="session")
def corpus_results():
    from helpers import CORPUS
    return convert_records(load_records([CORPUS]))


@pytest.fixture(scope="session")
def corpus_graph(corpus_results):
    return merged(corpus_results)
