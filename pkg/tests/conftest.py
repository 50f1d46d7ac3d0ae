from __future__ import annotations

import time

SUITE_BUDGET_SECONDS = 60
_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from test_acceptance import RESULTS

    elapsed = time.perf_counter() - _START
    tr = terminalreporter
    if RESULTS:
        tr.section("acceptance criteria")
        for number in range(1, 12):
            if number in RESULTS:
                ok, detail = RESULTS[number]
                tr.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
            else:
                tr.write_line(f"criterion {number:2d}: FAIL  (did not complete)")
    tr.write_line(
        f"suite runtime: {'PASS' if elapsed < SUITE_BUDGET_SECONDS else 'FAIL'}  "
        f"{elapsed:.1f} s (budget {SUITE_BUDGET_SECONDS} s)"
    )


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _START >= SUITE_BUDGET_SECONDS and session.exitstatus == 0:
        session.exitstatus = 1
