import functools

import pytest

from chevsuper import analyze, build, propose_basis
from chevsuper.repmod import induce, natural_even_module

ACCEPTANCE_FAMILIES = [("gl", 1, 1), ("gl", 2, 1), ("sl", 2, 1), ("sl", 3, 1), ("osp", 1, 2), ("osp", 2, 2)]


@functools.lru_cache(maxsize=None)
def algebra(family, m, n):
    return build(family, m, n)


@functools.lru_cache(maxsize=None)
def datum(family, m, n):
    return analyze(algebra(family, m, n))


@functools.lru_cache(maxsize=None)
def chevalley(family, m, n):
    return propose_basis(algebra(family, m, n), datum(family, m, n))


@functools.lru_cache(maxsize=None)
def induced(family, m, n):
    g = algebra(family, m, n)
    return induce(g, chevalley(family, m, n), natural_even_module(g))


@pytest.fixture(params=ACCEPTANCE_FAMILIES, ids=lambda f: f"{f[0]}({f[1]}|{f[2]})")
def family(request):
    return request.param


@pytest.fixture(scope="session")
def gl21():
    return algebra("gl", 2, 1), datum("gl", 2, 1), chevalley("gl", 2, 1)


@pytest.fixture(scope="session")
def gl11():
    return algebra("gl", 1, 1), datum("gl", 1, 1), chevalley("gl", 1, 1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.summary_lines():
            terminalreporter.write_line(line)
