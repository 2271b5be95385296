"""Named example spaces, maps and stratifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complexes import (
    Simplex,
    SimplexSet,
    SimplicialComplex,
    Stratification,
    build_complex,
    join,
    suspension,
)
from .errors import UnknownFixture
from .functions import ConstructibleFunction
from .maps import SimplicialMap


@dataclass
class Fixture:
    name: str
    complex: SimplicialComplex
    function: ConstructibleFunction | None = None
    stratification: Stratification | None = None
    map: SimplicialMap | None = None
    sets: dict[str, SimplexSet] = field(default_factory=dict)


def cycle(names: list[str]) -> SimplicialComplex:
    return build_complex([[names[i], names[(i + 1) % len(names)]] for i in range(len(names))])


def boundary_of_simplex(vertices: list[str]) -> SimplicialComplex:
    return build_complex([list(f) for f in combinations(vertices, len(vertices) - 1)])


def points(names: list[str]) -> SimplicialComplex:
    return SimplicialComplex([(n,) for n in names])


def figure_eight() -> SimplicialComplex:
    return build_complex([["w", "p1"], ["p1", "p2"], ["p2", "w"], ["w", "q1"], ["q1", "q2"], ["q2", "w"]])


def torus() -> SimplicialComplex:
    """The seven-vertex torus."""
    tris = []
    for i in range(7):
        tris.append([str(i), str((i + 1) % 7), str((i + 3) % 7)])
        tris.append([str(i), str((i + 2) % 7), str((i + 3) % 7)])
    return build_complex(tris)


def _cone_on(simplices, apex: str) -> set[Simplex]:
    return {tuple(sorted(s + (apex,))) for s in simplices}


def _suspend_strata(strata: dict[str, tuple[int, set[Simplex]]], poles: tuple[str, str]) -> dict[str, tuple[int, set[Simplex]]]:
    out = {f"pole-{p}": (0, {(p,)}) for p in poles}
    for label, (d, block) in strata.items():
        out[f"S({label})"] = (d + 1, set(block) | _cone_on(block, poles[0]) | _cone_on(block, poles[1]))
    return out


def _ak_parts() -> tuple[SimplicialComplex, dict[str, tuple[int, set[Simplex]]]]:
    """The 2-dimensional space glued from three suspensions, with its natural strata.

    A = suspension of the figure eight (apexes a, b), B = suspension of three
    points (apexes b, c), C = an arc from c to a through m.  The junctions are
    the three shared apexes.
    """
    A = join(figure_eight(), points(["a", "b"]))
    B = join(points(["x1", "x2", "x3"]), points(["b", "c"]))
    C = build_complex([["c", "m"], ["m", "a"]])
    Y = build_complex([list(s) for K in (A, B, C) for s in K.maximal_simplices])

    strata: dict[str, tuple[int, set[Simplex]]] = {v: (0, {(v,)}) for v in ("a", "b", "c", "m")}
    strata["arc-awb"] = (1, {("a", "w"), ("w",), ("b", "w")})
    for x in ("x1", "x2", "x3"):
        strata[f"arc-b{x}c"] = (1, {("b", x), (x,), ("c", x)})
    strata["arc-cm"] = (1, {("c", "m")})
    strata["arc-am"] = (1, {("a", "m")})
    for loop in (("p1", "p2"), ("q1", "q2")):
        u, v = loop
        open_arc = {(u,), (v,), (u, v), (u, "w"), (v, "w")}
        strata[f"disc-{u}{v}"] = (2, open_arc | _cone_on(open_arc, "a") | _cone_on(open_arc, "b"))
    return Y, strata


def ak_y() -> Fixture:
    Y, strata = _ak_parts()
    return Fixture("ak-Y", Y, stratification=Stratification(Y, strata))


def ak_x() -> Fixture:
    Y, strata = _ak_parts()
    X = suspension(Y, ("n", "s"))
    return Fixture("ak-X", X, stratification=Stratification(X, _suspend_strata(strata, ("n", "s"))))


def fold_map() -> Fixture:
    """Simplicial model of x -> x^2 on [-1, 1]."""
    dom = build_complex([["-1", "0"], ["0", "1"]])
    cod = build_complex([["0", "1"]])
    f = SimplicialMap(dom, cod, {"-1": "1", "0": "0", "1": "1"})
    one = ConstructibleFunction(dom, {s: 1 for s in dom.simplices})
    return Fixture("fold-map", dom, function=one, map=f)


def double_cover() -> Fixture:
    dom = cycle([f"v{i}" for i in range(6)])
    cod = cycle([f"w{i}" for i in range(3)])
    f = SimplicialMap(dom, cod, {f"v{i}": f"w{i % 3}" for i in range(6)})
    return Fixture("double-cover", dom, map=f)


def quadrant() -> Fixture:
    """A disc (cone on an 8-cycle) with twice the indicator of a closed quarter sector.

    The set ``Y`` is the diameter through r0 and r4, which meets the sector in a ray.
    """
    rim = [f"r{i}" for i in range(8)]
    X = join(cycle(rim), points(["o"]))
    Q = build_complex([["o", rim[i], rim[i + 1]] for i in range(2)])
    Qset = SimplexSet(X, Q.simplices)
    phi = ConstructibleFunction(X, {s: 2 for s in Q.simplices})
    axis = SimplexSet(X, [("o",), ("r0",), ("r4",), ("o", "r0"), ("o", "r4")])
    return Fixture("quadrant", X, function=phi, sets={"Q": Qset, "Y": axis})


def _simple(name: str, K: SimplicialComplex) -> Fixture:
    return Fixture(name, K)


def _sphere3() -> Fixture:
    K = boundary_of_simplex(["0", "1", "2", "3", "4"])
    return Fixture("sphere3", K, stratification=Stratification.single(K))


FIXTURES = {
    "path": lambda: _simple("path", build_complex([["a", "b"], ["b", "c"]])),
    "circle": lambda: _simple("circle", cycle(["a", "b", "c"])),
    "sphere2": lambda: _simple("sphere2", boundary_of_simplex(["0", "1", "2", "3"])),
    "sphere3": _sphere3,
    "torus": lambda: _simple("torus", torus()),
    "figure-eight": lambda: _simple("figure-eight", figure_eight()),
    "theta": lambda: _simple("theta", suspension(points(["x1", "x2", "x3"]), ("n", "s"))),
    "ak-Y": ak_y,
    "ak-X": ak_x,
    "fold-map": fold_map,
    "double-cover": double_cover,
    "quadrant": quadrant,
}


def fixture(name: str) -> Fixture:
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}") from None
    return builder()


def fixture_names() -> list[str]:
    return sorted(FIXTURES)

