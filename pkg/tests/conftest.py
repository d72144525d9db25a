import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kitaevdyn.hamiltonians import Couplings  # noqa: E402
from kitaevdyn.lattice import build_patch  # noqa: E402


@pytest.fixture(scope="session")
def hexagon():
    return build_patch(1, 1)


@pytest.fixture(scope="session")
def two_hexagons():
    return build_patch(1, 2)


@pytest.fixture(scope="session")
def j_case_i():
    return Couplings(0.3, 0.3, 1.0)


@pytest.fixture(scope="session")
def j_generic():
    # distinct couplings so coefficient bookkeeping errors cannot cancel
    return Couplings(0.2, 0.3, 0.5)


# criterion number -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = "; ".join(f"{'ok' if ok else 'FAILED'}: {d}" for ok, d in parts)
        terminalreporter.write_line(f"criterion {k:2d}: {status} | {detail}")
