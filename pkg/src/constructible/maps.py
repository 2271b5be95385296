"""Simplicial maps, pullback and proper pushforward."""

from __future__ import annotations

from typing import Mapping

from .complexes import Simplex, SimplicialComplex, dim
from .errors import AmbientMismatch, ValidationError
from .functions import ConstructibleFunction, checked


class SimplicialMap:
    """A vertex map that sends every simplex of ``domain`` onto a simplex of ``codomain``."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex, vertex_map: Mapping[str, str]) -> None:
        vm = {str(k): str(v) for k, v in vertex_map.items()}
        missing = set(domain.vertices) - vm.keys()
        if missing:
            raise ValidationError(f"vertex map is undefined on {sorted(missing)}")
        extra = vm.keys() - set(domain.vertices)
        if extra:
            raise ValidationError(f"vertex map mentions unknown vertices {sorted(extra)}")
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = vm
        self._image: dict[Simplex, Simplex] = {}
        for s in domain.ordered:
            img = tuple(sorted({vm[v] for v in s}))
            if img not in codomain:
                raise ValidationError(f"image of {list(s)} is {list(img)}, which is not a simplex of the codomain")
            self._image[s] = img

    def image(self, simplex: Simplex) -> Simplex:
        self.domain.require(simplex)
        return self._image[simplex]

    def __repr__(self) -> str:
        return f"SimplicialMap({self.domain!r} -> {self.codomain!r})"

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "SimplicialMap":
        return cls(K, K, {v: v for v in K.vertices})

    @classmethod
    def constant(cls, K: SimplicialComplex, target: SimplicialComplex, vertex: str) -> "SimplicialMap":
        return cls(K, target, {v: vertex for v in K.vertices})


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f."""
    if f.codomain is not g.domain and f.codomain != g.domain:
        raise AmbientMismatch("cannot compose: codomain of f is not the domain of g")
    return SimplicialMap(f.domain, g.codomain, {v: g.vertex_map[w] for v, w in f.vertex_map.items()})


def pullback(f: SimplicialMap, psi: ConstructibleFunction) -> ConstructibleFunction:
    if psi.ambient is not f.codomain and psi.ambient != f.codomain:
        raise AmbientMismatch("function is not defined on the codomain of the map")
    return ConstructibleFunction._trusted(
        f.domain, {s: psi[img] for s, img in f._image.items() if psi[img]}
    )


def pushforward(f: SimplicialMap, phi: ConstructibleFunction) -> ConstructibleFunction:
    """Integrate phi over the fibres of f.

    The fibre over an interior point of tau meets an open simplex rho mapping
    onto tau in an open cell of dimension dim(rho) - dim(tau).
    """
    if phi.ambient is not f.domain and phi.ambient != f.domain:
        raise AmbientMismatch("function is not defined on the domain of the map")
    acc: dict[Simplex, int] = {}
    for rho, v in phi.items():
        tau = f._image[rho]
        sign = 1 if (dim(rho) - dim(tau)) % 2 == 0 else -1
        acc[tau] = checked(acc.get(tau, 0) + sign * v)
    return ConstructibleFunction(f.codomain, acc)
