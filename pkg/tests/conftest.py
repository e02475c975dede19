import json
from pathlib import Path

import numpy as np
import pytest

from detjump.gas import GasSpec, load_gas_spec

DATA = Path(__file__).parent / "data"
REFERENCE_PATH = DATA / "reference_gas.json"

# (criterion number, verdict, detail) collected by the acceptance module
ACCEPTANCE_LINES = []


def reference_gas() -> GasSpec:
    return load_gas_spec(REFERENCE_PATH.read_text())


def random_gases(n=50, seed=20260314):
    """Gases with gamma in [1.1, 1.7] and Q/c0**2 in [0.1, 3]."""
    rng = np.random.default_rng(seed)
    base = reference_gas()
    out = []
    for g, q in zip(rng.uniform(1.1, 1.7, n), rng.uniform(0.1, 3.0, n)):
        c0_sq = g * base.p0 / base.rho0
        out.append(base.replace(gamma=float(g), Q=float(q * c0_sq)))
    return out


@pytest.fixture
def gas():
    return reference_gas()


@pytest.fixture
def gas_file(tmp_path):
    def write(**changes):
        cfg = json.loads(REFERENCE_PATH.read_text())
        cfg.update(changes)
        path = tmp_path / f"gas_{len(list(tmp_path.iterdir()))}.json"
        path.write_text(json.dumps(cfg))
        return str(path)
    return write


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {detail}")
