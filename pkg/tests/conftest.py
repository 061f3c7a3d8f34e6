import random

import pytest
from hypothesis import settings

from hcprop.circuit import CircuitModel
from hcprop.tsplib import TspInstance, random_instance

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.append((label, ok, detail))


def model_of(coords) -> CircuitModel:
    return CircuitModel(TspInstance.from_coords(coords))


def random_model(n: int, seed: int) -> CircuitModel:
    return CircuitModel(random_instance(n, seed))


@pytest.fixture
def square():
    return model_of([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(ACCEPTANCE):
        line = f"{'PASS' if ok else 'FAIL'} {label}"
        terminalreporter.write_line(line + (f": {detail}" if detail else ""))
