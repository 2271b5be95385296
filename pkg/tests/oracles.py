"""Independent reference computations, written without the package's operator code.

They work in the barycentric subdivision (chains of simplices) or through
closed-simplex decompositions, so they share no formula with the star sums.
"""

from __future__ import annotations

from itertools import combinations

from constructible.complexes import Simplex, SimplicialComplex


def _is_face(a: Simplex, b: Simplex) -> bool:
    return set(a) < set(b)


def chains(K: SimplicialComplex, pool: list[Simplex]):
    """All nonempty chains (strictly increasing under inclusion) drawn from ``pool``."""
    pool = sorted(pool, key=len)
    out: list[tuple[Simplex, ...]] = []

    def grow(chain: tuple[Simplex, ...], start: int) -> None:
        for i in range(start, len(pool)):
            s = pool[i]
            if not chain or _is_face(chain[-1], s):
                nxt = chain + (s,)
                out.append(nxt)
                grow(nxt, i + 1)

    grow((), 0)
    return out


def link_by_subdivision(K: SimplicialComplex, values: dict[Simplex, int]) -> dict[Simplex, int]:
    """Integrate over the link of the barycentre of each simplex in the subdivision.

    The link is the order complex of the simplices comparable to tau; the open
    cell spanned by a chain c sits inside the open simplex max(c + tau).
    """
    out = {}
    for tau in K.simplices:
        comparable = [s for s in K.simplices if s != tau and (_is_face(s, tau) or _is_face(tau, s))]
        total = 0
        for c in chains(K, comparable):
            top = max(c + (tau,), key=len)
            total += (-1) ** (len(c) - 1) * values.get(top, 0)
        if total:
            out[tau] = total
    return out


def link_along_by_subdivision(K: SimplicialComplex, Y: set[Simplex], values: dict[Simplex, int]) -> dict[Simplex, int]:
    """Link along a closed set Y as an integral over a level set of the distance to Y.

    In the subdivision, take f = 0 on barycentres of simplices in Y and 1
    elsewhere, extended linearly.  Near the barycentre of tau the closed star
    meets {f = small} in one open cell per chain c with c + tau a chain and c
    meeting both Y and its complement; that cell has dimension len(c) - 2 and
    sits inside the open simplex max(c).
    """
    out = {}
    for tau in Y:
        comparable = [s for s in K.simplices if s != tau and (_is_face(s, tau) or _is_face(tau, s))]
        total = 0
        for c in chains(K, comparable + [tau]):
            if c[0] in Y and c[-1] not in Y:
                total += (-1) ** len(c) * values.get(c[-1], 0)
        if total:
            out[tau] = total
    return out


def closed_coefficients_by_solving(K: SimplicialComplex, values: dict[Simplex, int]) -> dict[Simplex, int]:
    """Peel off closed simplices from the top down: c[s] = phi(s) - sum of c over strict cofaces."""
    coeffs: dict[Simplex, int] = {}
    for s in sorted(K.simplices, key=len, reverse=True):
        c = values.get(s, 0) - sum(v for t, v in coeffs.items() if _is_face(s, t))
        if c:
            coeffs[s] = c
    return coeffs


def pushforward_by_closed_simplices(K: SimplicialComplex, L: SimplicialComplex, vm: dict[str, str], values) -> dict[Simplex, int]:
    """Each closed simplex pushes forward to its closed image simplex (contractible fibres)."""
    out: dict[Simplex, int] = {}
    for s, c in closed_coefficients_by_solving(K, values).items():
        img = tuple(sorted({vm[v] for v in s}))
        for k in range(1, len(img) + 1):
            for f in combinations(img, k):
                out[f] = out.get(f, 0) + c
    return {s: v for s, v in out.items() if v}


def euler_characteristic_by_count(simplices) -> int:
    counts: dict[int, int] = {}
    for s in simplices:
        counts[len(s)] = counts.get(len(s), 0) + 1
    return sum((-1) ** (n - 1) * c for n, c in counts.items())


def integral_by_closed_simplices(K: SimplicialComplex, values: dict[Simplex, int]) -> int:
    """Every closed simplex has Euler characteristic 1."""
    return sum(closed_coefficients_by_solving(K, values).values())
