"""Randomised internal consistency checks, shared by the CLI and the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable

from .complexes import SimplexSet, SimplicialComplex, build_complex, closure
from .errors import ConstructibleError
from .fixtures import fixture, fixture_names
from .functions import ConstructibleFunction, constant
from .maps import SimplicialMap, pushforward
from .operators import chi_link_of_set, dual_op, link_along, link_op, link_op_oracle


def random_complex(rng: random.Random, max_vertices: int = 7, max_dim: int = 3) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    tops = [[v] for v in verts]
    for _ in range(rng.randint(0, 2 * n)):
        k = rng.randint(2, min(max_dim + 1, n)) if n >= 2 else 1
        tops.append(rng.sample(verts, k))
    return build_complex(tops)


def random_function(rng: random.Random, K: SimplicialComplex, lo: int = -4, hi: int = 4) -> ConstructibleFunction:
    return ConstructibleFunction(K, {s: rng.randint(lo, hi) for s in K.ordered})


def random_closed_set(rng: random.Random, K: SimplicialComplex) -> SimplexSet:
    picks = [s for s in K.ordered if rng.random() < 0.3]
    return closure(SimplexSet(K, picks))


def random_map(rng: random.Random, K: SimplicialComplex, targets: int = 4) -> SimplicialMap:
    """A random vertex map from K into a codomain containing every image simplex plus extra faces."""
    names = [f"w{i}" for i in range(rng.randint(1, targets))]
    vm = {v: rng.choice(names) for v in K.vertices}
    images = [sorted({vm[v] for v in s}) for s in K.maximal_simplices]
    extra = [list(c) for c in combinations(names, 2) if rng.random() < 0.3]
    return SimplicialMap(K, build_complex(images + extra + [[w] for w in names]), vm)


def _samples(rng: random.Random, rounds: int) -> list[SimplicialComplex]:
    named = [fixture(n).complex for n in fixture_names()]
    return named + [random_complex(rng) for _ in range(rounds)]


def run_selftest(seed: int = 0, rounds: int = 40) -> list[dict]:
    rng = random.Random(seed)
    complexes = _samples(rng, rounds)

    def agree(name: str, test: Callable[[], bool]) -> dict:
        try:
            return {"name": name, "ok": bool(test())}
        except ConstructibleError as exc:
            return {"name": name, "ok": False, "error": str(exc)}

    def link_oracle() -> bool:
        return all(link_op(p) == link_op_oracle(p) for K in complexes for p in (constant(K), random_function(rng, K)))

    def involution() -> bool:
        return all(dual_op(dual_op(p)) == p for K in complexes for p in [random_function(rng, K)])

    def link_along_forms() -> bool:
        for K in complexes:
            link_along(random_closed_set(rng, K), random_function(rng, K))
        return True

    def chi_routes() -> bool:
        for K in complexes:
            chi_link_of_set(random_closed_set(rng, K), random_closed_set(rng, K))
        return True

    def push_commutes() -> bool:
        for K in complexes[-rounds:]:
            f = random_map(rng, K)
            p = random_function(rng, K)
            if pushforward(f, dual_op(p)) != dual_op(pushforward(f, p)):
                return False
        return True

    def akbulut_king_routes() -> bool:
        from .akbulut_king import akbulut_king, stratified_check

        for name in fixture_names():
            fx = fixture(name)
            X = fx.complex
            if X.dimension > 3 or link_op(constant(X)).mod(2).values():
                continue
            if akbulut_king(X).details["cross_check_disagreements"]:
                return False
            if fx.stratification is not None and stratified_check(X, fx.stratification).details["cross_check_disagreements"]:
                return False
        return True

    return [
        agree("link: star formula equals closed-simplex decomposition", link_oracle),
        agree("duality is an involution", involution),
        agree("link along a set: both closed forms agree", link_along_forms),
        agree("link Euler characteristic: both routes agree", chi_routes),
        agree("pushforward commutes with duality", push_commutes),
        agree("Akbulut-King: product, set and geometric routes agree", akbulut_king_routes),
    ]
