"""Finite abstract simplicial complexes and subsets of their open simplices.

A simplex is a tuple of vertex names in increasing (lexicographic) order.  A
:class:`SimplexSet` is a set of *open* simplices of an ambient complex, which is
how locally closed subsets (strata, skeleta, characteristic sets) are modelled.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import (
    AmbientMismatch,
    DuplicateVertexInSimplex,
    SimplexNotInComplex,
    StratificationError,
)

Simplex = tuple[str, ...]


def make_simplex(vertices: Iterable[str]) -> Simplex:
    """Canonical form of a vertex collection; rejects repeats and the empty simplex."""
    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts):
        raise DuplicateVertexInSimplex(f"repeated vertex in {verts}")
    if not verts:
        raise ValueError("the empty simplex is not a member of any complex")
    return tuple(sorted(verts))


def dim(simplex: Simplex) -> int:
    return len(simplex) - 1


def simplex_key(simplex: Simplex) -> tuple[int, Simplex]:
    """Sort key used for every canonical ordering: by dimension, then vertices."""
    return (len(simplex), simplex)


def proper_faces(simplex: Simplex) -> Iterator[Simplex]:
    """Nonempty proper faces of ``simplex``."""
    for k in range(1, len(simplex)):
        yield from combinations(simplex, k)


def all_faces(simplex: Simplex) -> Iterator[Simplex]:
    for k in range(1, len(simplex) + 1):
        yield from combinations(simplex, k)


class SimplicialComplex:
    """An immutable, face-closed finite set of simplices.

    Construct through :func:`build_complex` unless the input is already known
    to be canonical and face-closed.
    """

    def __init__(self, simplices: Iterable[Simplex]) -> None:
        self._simplices = frozenset(simplices)

    # --- basic container protocol -------------------------------------------------
    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._simplices

    def __contains__(self, simplex: object) -> bool:
        return simplex in self._simplices

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.ordered)

    def __len__(self) -> int:
        return len(self._simplices)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self._simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertices)}, simplices={len(self)}, dim={self.dimension})"

    # --- derived data -------------------------------------------------------------
    @cached_property
    def ordered(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self._simplices, key=simplex_key))

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(s[0] for s in self._simplices if len(s) == 1))

    @cached_property
    def dimension(self) -> int:
        """Maximal simplex dimension; -1 for the empty complex."""
        return max((dim(s) for s in self._simplices), default=-1)

    @cached_property
    def _cofaces(self) -> dict[Simplex, tuple[Simplex, ...]]:
        up: dict[Simplex, list[Simplex]] = {s: [] for s in self._simplices}
        for s in self._simplices:
            for f in proper_faces(s):
                up[f].append(s)
        return {s: tuple(sorted(v, key=simplex_key)) for s, v in up.items()}

    def cofaces(self, simplex: Simplex) -> tuple[Simplex, ...]:
        """Proper cofaces of ``simplex`` (simplices strictly containing it)."""
        try:
            return self._cofaces[simplex]
        except KeyError:
            raise SimplexNotInComplex(f"{list(simplex)} is not in the complex") from None

    def faces(self, simplex: Simplex) -> tuple[Simplex, ...]:
        self.require(simplex)
        return tuple(sorted(proper_faces(simplex), key=simplex_key))

    @cached_property
    def maximal_simplices(self) -> tuple[Simplex, ...]:
        return tuple(s for s in self.ordered if not self._cofaces[s])

    def require(self, simplex: Simplex) -> None:
        if simplex not in self._simplices:
            raise SimplexNotInComplex(f"{list(simplex)} is not in the complex")

    def skeleton(self, k: int) -> "SimplexSet":
        return SimplexSet(self, (s for s in self._simplices if dim(s) <= k))

    def simplices_of_dim(self, k: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.ordered if dim(s) == k)

    def whole(self) -> "SimplexSet":
        return SimplexSet(self, self._simplices)

    def empty(self) -> "SimplexSet":
        return SimplexSet(self, ())

    def subset(self, simplices: Iterable[Iterable[str]]) -> "SimplexSet":
        """SimplexSet from raw vertex lists (canonicalised)."""
        return SimplexSet(self, (make_simplex(s) for s in simplices))


class SimplexSet:
    """A set of open simplices of a fixed ambient complex."""

    def __init__(self, ambient: SimplicialComplex, members: Iterable[Simplex]) -> None:
        members = frozenset(members)
        stray = members - ambient.simplices
        if stray:
            bad = min(stray, key=simplex_key)
            raise SimplexNotInComplex(f"{list(bad)} is not in the ambient complex")
        self.ambient = ambient
        self.members = members

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.members

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.members, key=simplex_key))

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplexSet):
            return NotImplemented
        return self.members == other.members and self.ambient == other.ambient

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        shown = [list(s) for s in list(self)[:6]]
        more = "..." if len(self) > 6 else ""
        return f"SimplexSet({shown}{more})"

    def _check(self, other: "SimplexSet") -> None:
        if other.ambient is not self.ambient and other.ambient != self.ambient:
            raise AmbientMismatch("simplex sets live in different complexes")

    def __or__(self, other: "SimplexSet") -> "SimplexSet":
        self._check(other)
        return SimplexSet(self.ambient, self.members | other.members)

    def __and__(self, other: "SimplexSet") -> "SimplexSet":
        self._check(other)
        return SimplexSet(self.ambient, self.members & other.members)

    def __sub__(self, other: "SimplexSet") -> "SimplexSet":
        self._check(other)
        return SimplexSet(self.ambient, self.members - other.members)

    def __le__(self, other: "SimplexSet") -> bool:
        self._check(other)
        return self.members <= other.members

    @property
    def dimension(self) -> int:
        return max((dim(s) for s in self.members), default=-1)

    @property
    def is_closed(self) -> bool:
        return all(f in self.members for s in self.members for f in proper_faces(s))

    def closure(self) -> "SimplexSet":
        return closure(self)

    def as_complex(self) -> SimplicialComplex:
        """The subcomplex spanned by the closure of this set."""
        return SimplicialComplex(closure(self).members)


# --- operations -----------------------------------------------------------------------


def build_complex(maximal_simplices: Iterable[Sequence[str]]) -> SimplicialComplex:
    """Face closure of the given vertex lists."""
    simplices: set[Simplex] = set()
    for verts in maximal_simplices:
        simplices.update(all_faces(make_simplex(verts)))
    return SimplicialComplex(simplices)


def closure(S: SimplexSet) -> SimplexSet:
    out = set(S.members)
    for s in S.members:
        out.update(proper_faces(s))
    return SimplexSet(S.ambient, out)


def star(K: SimplicialComplex, tau: Simplex) -> SimplexSet:
    """Open star: every simplex containing ``tau`` (including ``tau``)."""
    K.require(tau)
    return SimplexSet(K, (tau, *K.cofaces(tau)))


def link_complex(K: SimplicialComplex, tau: Simplex) -> SimplicialComplex:
    K.require(tau)
    tset = set(tau)
    out = set()
    for rho in K.cofaces(tau):
        rest = tuple(v for v in rho if v not in tset)
        out.add(rest)
    return SimplicialComplex(out)


def _disjoint_pair(K: SimplicialComplex, L: SimplicialComplex) -> tuple[SimplicialComplex, SimplicialComplex]:
    if not set(K.vertices) & set(L.vertices):
        return K, L
    return rename(K, lambda v: f"{v}#L"), rename(L, lambda v: f"{v}#R")


def rename(K: SimplicialComplex, fn) -> SimplicialComplex:
    return SimplicialComplex(make_simplex(fn(v) for v in s) for s in K.simplices)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes.

    When the vertex names overlap, every vertex of ``K`` gets the suffix ``#L``
    and every vertex of ``L`` the suffix ``#R``.
    """
    K, L = _disjoint_pair(K, L)
    out: set[Simplex] = set(K.simplices) | set(L.simplices)
    for a in K.simplices:
        for b in L.simplices:
            out.add(tuple(sorted(a + b)))
    return SimplicialComplex(out)


def point(name: str) -> SimplicialComplex:
    return SimplicialComplex([(name,)])


def cone(K: SimplicialComplex, apex: str = "apex") -> SimplicialComplex:
    return join(K, point(apex))


def suspension(K: SimplicialComplex, poles: tuple[str, str] = ("north", "south")) -> SimplicialComplex:
    return join(K, SimplicialComplex([(poles[0],), (poles[1],)]))


def boundary_complex(tau: Simplex) -> SimplicialComplex:
    """The boundary sphere of a simplex, as a complex (empty for a vertex)."""
    return SimplicialComplex(proper_faces(tau))


def euler_char(S: SimplexSet | SimplicialComplex) -> int:
    """Alternating simplex count; compactly supported for non-closed sets."""
    members = S.members if isinstance(S, SimplexSet) else S.simplices
    return sum(1 if len(s) % 2 else -1 for s in members)


def top_components(S: SimplexSet) -> list[SimplexSet]:
    """Classes of top-dimensional members of ``S`` glued along shared codimension-1 faces."""
    d = S.dimension
    if d < 0:
        return []
    tops = [s for s in S if dim(s) == d]
    graph = nx.Graph()
    graph.add_nodes_from(tops)
    if d > 0:
        by_facet: dict[Simplex, list[Simplex]] = {}
        for s in tops:
            for f in combinations(s, d):
                by_facet.setdefault(f, []).append(s)
        for group in by_facet.values():
            for a, b in zip(group, group[1:]):
                graph.add_edge(a, b)
    comps = [SimplexSet(S.ambient, c) for c in nx.connected_components(graph)]
    comps.sort(key=lambda c: simplex_key(min(c.members, key=simplex_key)))
    return comps


class Stratification:
    """A partition of a complex's simplices into labelled strata.

    Each stratum declares a dimension equal to the largest simplex it contains;
    it may also contain lower-dimensional simplices (an open disc stratum holds
    its interior edges and vertices).  The frontier condition is enforced: the
    closure of a stratum only adds simplices of strata of strictly smaller
    dimension.
    """

    def __init__(self, ambient: SimplicialComplex, strata: dict[str, tuple[int, Iterable[Simplex]]]) -> None:
        self.ambient = ambient
        self.strata: dict[str, tuple[int, SimplexSet]] = {}
        owner: dict[Simplex, str] = {}
        for label, (d, simplices) in sorted(strata.items()):
            block = SimplexSet(ambient, simplices)
            if not block:
                raise StratificationError(f"stratum {label!r} is empty")
            if block.dimension != d:
                raise StratificationError(
                    f"stratum {label!r} declares dimension {d} but its largest simplex has dimension {block.dimension}"
                )
            for s in block.members:
                if s in owner:
                    raise StratificationError(f"simplex {list(s)} lies in strata {owner[s]!r} and {label!r}")
                owner[s] = label
            self.strata[label] = (d, block)
        missing = ambient.simplices - owner.keys()
        if missing:
            raise StratificationError(f"simplex {list(min(missing, key=simplex_key))} belongs to no stratum")
        self.owner = owner
        for label, (d, block) in self.strata.items():
            for s in closure(block).members - block.members:
                other = owner[s]
                if self.strata[other][0] >= d:
                    raise StratificationError(
                        f"frontier condition fails: closure of {label!r} meets {other!r} of dimension {self.strata[other][0]}"
                    )
        for k in range(ambient.dimension + 1):
            if not self.skeleton(k).is_closed:
                raise StratificationError(f"skeleton of dimension {k} is not closed")

    @classmethod
    def by_simplices(cls, K: SimplicialComplex) -> "Stratification":
        """Every open simplex is its own stratum."""
        return cls(K, {"|".join(s): (dim(s), [s]) for s in K.simplices})

    @classmethod
    def by_dimension(cls, K: SimplicialComplex) -> "Stratification":
        """One stratum per simplex dimension; its skeleta are the simplicial skeleta."""
        return cls(K, {f"dim{d}": (d, K.simplices_of_dim(d)) for d in range(K.dimension + 1)})

    @classmethod
    def single(cls, K: SimplicialComplex, label: str = "X") -> "Stratification":
        """The whole complex as one stratum (all lower skeleta empty)."""
        return cls(K, {label: (K.dimension, K.simplices)})

    def skeleton(self, k: int) -> SimplexSet:
        members: set[Simplex] = set()
        for d, block in self.strata.values():
            if d <= k:
                members |= block.members
        return SimplexSet(self.ambient, members)

    def of_dim(self, k: int) -> list[tuple[str, SimplexSet]]:
        return [(label, block) for label, (d, block) in self.strata.items() if d == k]

    def __iter__(self):
        return iter(self.strata.items())


def order_complex_euler_char(S: SimplexSet) -> int:
    """Euler characteristic of the order complex of ``S`` under face inclusion.

    For an upward-closed ``S`` (the complement of a closed subcomplex) this is
    the ordinary, homotopy-invariant Euler characteristic of the open set.
    """
    weight: dict[Simplex, int] = {}
    for s in sorted(S.members, key=simplex_key):
        weight[s] = 1 - sum(weight[f] for f in proper_faces(s) if f in weight)
    return sum(weight.values())
