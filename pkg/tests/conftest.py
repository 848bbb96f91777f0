'''Shared pytest wiring.

After any run that touched the acceptance suite, print one line per
acceptance criterion so the release checklist can be read off the
terminal summary directly.
'''

import re

_CRITERION = re.compile(r'test_acceptance\.py::.*criterion_(\d+)')
_STATUS = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    num = int(match.group(1))
    if report.when == 'call':
        _STATUS[num] = 'PASS' if report.passed else 'FAIL'
    elif report.when == 'setup' and report.skipped:
        _STATUS[num] = 'SKIP'
    elif report.when == 'setup' and report.failed:
        _STATUS[num] = 'FAIL'


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _STATUS:
        return
    terminalreporter.section('acceptance criteria')
    for num in sorted(_STATUS):
        terminalreporter.write_line('criterion %d: %s' % (num, _STATUS[num]))
