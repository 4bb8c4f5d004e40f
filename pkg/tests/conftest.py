import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    crit = None
    for key in getattr(report, "keywords", {}):
        if key.startswith("criterion_"):
            crit = key
    if crit is None:
        return
    if report.when == "call" or report.failed:
        ok = report.passed if report.when == "call" else False
        ACCEPTANCE[crit] = ACCEPTANCE.get(crit, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda k: int(k.split("_")[1])):
        status = "PASS" if ACCEPTANCE[crit] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {crit.split('_')[1]}")
