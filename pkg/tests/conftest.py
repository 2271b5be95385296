from __future__ import annotations

from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from constructible.complexes import SimplexSet, build_complex, closure
from constructible.functions import ConstructibleFunction
from constructible.maps import SimplicialMap

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@st.composite
def complexes(draw, max_vertices: int = 7, max_dim: int = 3):
    n = draw(st.integers(1, max_vertices))
    verts = [f"v{i}" for i in range(n)]
    pool = [list(c) for k in range(2, min(max_dim, n - 1) + 2) for c in combinations(verts, k)]
    tops = draw(st.lists(st.sampled_from(pool), max_size=8)) if pool else []
    return build_complex(tops + [[v] for v in verts])


@st.composite
def functions(draw, K=None, lo: int = -4, hi: int = 4):
    if K is None:
        K = complexes()
    if isinstance(K, st.SearchStrategy):
        K = draw(K)
    vals = draw(st.lists(st.integers(lo, hi), min_size=len(K), max_size=len(K)))
    return ConstructibleFunction(K, dict(zip(K.ordered, vals)))


@st.composite
def closed_sets(draw, K):
    picks = draw(st.lists(st.sampled_from(K.ordered), max_size=6))
    return closure(SimplexSet(K, picks))


@st.composite
def maps(draw, K, targets: int = 4):
    names = [f"w{i}" for i in range(draw(st.integers(1, targets)))]
    vm = {v: draw(st.sampled_from(names)) for v in K.vertices}
    images = [sorted({vm[v] for v in s}) for s in K.maximal_simplices]
    return SimplicialMap(K, build_complex(images + [[w] for w in names]), vm)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, label = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {label}")
