import json
import re
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

_CRITERION = re.compile(r"test_criterion_(\d+)")


@pytest.fixture
def fixture_json():
    def load(name):
        return json.loads((FIXTURES / name).read_text())

    return load


def pytest_configure(config):
    config._acceptance = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    detail = dict(report.user_properties).get("detail", "")
    if not report.passed:
        msg = str(report.longrepr).strip().splitlines()
        detail = detail or (msg[-1] if msg else "")
    results = _CONFIG._acceptance
    results[int(m.group(1))] = ("PASS" if report.passed else "FAIL", detail)


_CONFIG = None


@pytest.hookimpl(tryfirst=True)
def pytest_sessionstart(session):
    global _CONFIG
    _CONFIG = session.config


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        status, detail = results[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {detail}")
