import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = {}


def pytest_runtest_logreport(report):
    if 'test_acceptance.py' not in report.nodeid:
        return
    name = report.nodeid.split('::')[-1].split('[')[0]
    if not name.startswith('test_criterion_'):
        return
    crit = name[len('test_criterion_'):]
    ok = _acceptance.get(crit, True)
    if report.when == 'call' or report.failed:
        _acceptance[crit] = ok and report.passed if report.when == 'call' else False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section('acceptance criteria')
    for crit in sorted(_acceptance):
        verdict = 'PASS' if _acceptance[crit] else 'FAIL'
        terminalreporter.write_line(f"{verdict}  criterion {crit}")
