import pytest

from hlbounds.norm import sup_norm
from hlbounds.poly import HomoPoly2

_ACCEPTANCE = {}


@pytest.fixture(scope="session", autouse=True)
def _warm_jit():
    # compile the numba kernels once so timed checks measure steady-state cost
    sup_norm(HomoPoly2(2, (1.0, 0.5, -1.0)), 4.0)


@pytest.fixture
def record():
    """Collect (criterion, ok, detail) lines for the acceptance summary."""

    def _record(criterion, ok, detail=""):
        _ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_ACCEPTANCE, key=lambda c: int(c.split()[0])):
        results = _ACCEPTANCE[criterion]
        ok = all(r for r, _ in results)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}")
        for r, detail in results:
            if not r:
                terminalreporter.write_line(f"        failed: {detail}")
