import json

import pytest

from segcalc.core import cyclic_line, load_context, make_context

CTX5_DOC = {"mode": "modular", "ell": 5, "q": 3,
            "lines": [{"id": "L", "f": 1, "dual": "L", "twist": 1, "deg": 1}]}


@pytest.fixture
def ctx5():
    """ell = 5, q = 3 and one self-dual line of order 4."""
    return load_context(CTX5_DOC)


@pytest.fixture
def ctx5_file(tmp_path):
    path = tmp_path / "ctx.json"
    path.write_text(json.dumps(CTX5_DOC))
    return str(path)


@pytest.fixture
def L2():
    return cyclic_line(2)


@pytest.fixture
def L3():
    return cyclic_line(3)


@pytest.fixture
def L4():
    return cyclic_line(4)


@pytest.fixture
def Linf():
    return cyclic_line(None)


@pytest.fixture
def mixed_ctx():
    """ell = 7, q = 2: line A has order 3, line Z (f = 3) has order 1."""
    ctx = make_context("modular", 7, 2)
    return ctx.with_line("A", f=1, twist=3).with_line("Z", f=3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
