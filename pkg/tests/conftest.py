import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from chromix.core import GraphBuilder, NmGraph, Signature, UndirectedGraph

SIGNATURES = [Signature(1, 0), Signature(0, 2), Signature(1, 1), Signature(0, 3)]


def random_nmgraph(rng: random.Random, sig: Signature, nv: int, density: float) -> NmGraph:
    b = GraphBuilder(sig, nv)
    for u, v in combinations(range(nv), 2):
        if rng.random() < density:
            b.set_adjacency(u, v, rng.randint(1, sig.p))
    return b.build()


def graph_from_edges(nv, edges, sig, alpha=1):
    b = GraphBuilder(sig, nv)
    for u, v in edges:
        b.set_adjacency(u, v, alpha)
    return b.build()


def cycle(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, combinations(range(n), 2))


@st.composite
def nmgraphs(draw, max_vertices=7, signatures=SIGNATURES):
    sig = draw(st.sampled_from(signatures))
    nv = draw(st.integers(0, max_vertices))
    b = GraphBuilder(sig, nv)
    for u, v in combinations(range(nv), 2):
        a = draw(st.integers(0, sig.p))
        if a:
            b.set_adjacency(u, v, a)
    return b.build()


@st.composite
def simple_graphs(draw, max_vertices=9):
    nv = draw(st.integers(1, max_vertices))
    pairs = list(combinations(range(nv), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return UndirectedGraph(nv, [e for e, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance reporting: one PASS/FAIL line per criterion --------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    passed = rep.passed if rep.when == "call" else False
    if rep.when == "call" or number not in _CRITERIA:
        _CRITERIA[number] = (title, passed, round(call.duration, 2))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, secs = _CRITERIA[number]
        terminalreporter.write_line(f"C{number:<2} {'PASS' if passed else 'FAIL'}  {title}  ({secs}s)")
