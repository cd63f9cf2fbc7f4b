from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cmbent import gf3

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ctxs():
    cache: dict[int, gf3.FieldCtx] = {}

    def get(n: int) -> gf3.FieldCtx:
        if n not in cache:
            cache[n] = gf3.ctx_new(n)
        return cache[n]

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
