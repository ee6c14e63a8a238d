import sys
from pathlib import Path

import pytest

from gr1cores import Realizer, parse_spec, reduce

HERE = Path(__file__).resolve().parent
SPECS = HERE.parent / "specs"
sys.path.insert(0, str(HERE))

LIFT_CORES = [
    {21, 27, 36}, {21, 27, 37}, {27, 35, 36}, {27, 35, 37}, {27, 36, 37}, {24, 27, 30, 37},
]


def load(name_or_text):
    if name_or_text.endswith(".spc"):
        name_or_text = (SPECS / name_or_text).read_text()
    return reduce(parse_spec(name_or_text))


def lines(ids):
    return frozenset(i.line for i in ids)


@pytest.fixture(scope="session")
def lift():
    return load("lift.spc")


@pytest.fixture(scope="session")
def monitor():
    return load("monitor.spc")


@pytest.fixture(scope="session")
def lift_realizer(lift):
    return Realizer(lift)


@pytest.fixture
def spec_path():
    return lambda name: str(SPECS / name)


@pytest.fixture(params=["cython", "python"])
def backend(request, monkeypatch):
    """Run a test under each cpre kernel."""
    from gr1cores import _backend, _cpre_py

    if request.param == "cython":
        kernel = _backend.compiled_kernel()
        if kernel is None:
            pytest.skip("compiled kernel not built")
        monkeypatch.setattr(_backend, "cpre", kernel)
    else:
        monkeypatch.setattr(_backend, "cpre", _cpre_py.cpre)
    return request.param



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
