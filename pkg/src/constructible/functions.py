"""Integer-valued functions constant on open simplices, and the ring they form."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .complexes import (
    Simplex,
    SimplexSet,
    SimplicialComplex,
    closure,
    dim,
    simplex_key,
)
from .errors import AmbientMismatch, IntegerOverflow

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise IntegerOverflow(f"value {value} does not fit in a signed 64-bit integer")
    return value


class ConstructibleFunction:
    """An integer on each open simplex of ``ambient``; zeros are not stored."""

    def __init__(self, ambient: SimplicialComplex, values: Mapping[Simplex, int] | Iterable[tuple[Simplex, int]] = ()) -> None:
        items = values.items() if isinstance(values, Mapping) else values
        data: dict[Simplex, int] = {}
        for s, v in items:
            if s not in ambient:
                ambient.require(s)
            v = checked(int(v))
            if v:
                data[s] = v
        self.ambient = ambient
        self._values = data

    @classmethod
    def _trusted(cls, ambient: SimplicialComplex, data: dict[Simplex, int]) -> "ConstructibleFunction":
        obj = cls.__new__(cls)
        obj.ambient = ambient
        obj._values = data
        return obj

    def __getitem__(self, simplex: Simplex) -> int:
        return self._values.get(simplex, 0)

    def items(self) -> Iterator[tuple[Simplex, int]]:
        """Nonzero entries in canonical simplex order."""
        for s in sorted(self._values, key=simplex_key):
            yield s, self._values[s]

    def values(self) -> dict[Simplex, int]:
        return dict(self._values)

    def support(self) -> SimplexSet:
        return SimplexSet(self.ambient, self._values)

    def is_zero(self) -> bool:
        return not self._values

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        return self._values == other._values and self.ambient == other.ambient

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{'.'.join(s)}:{v}" for s, v in list(self.items())[:8])
        more = ", ..." if len(self._values) > 8 else ""
        return f"CF({{{body}{more}}})"

    def _same(self, other: "ConstructibleFunction") -> None:
        if other.ambient is not self.ambient and other.ambient != self.ambient:
            raise AmbientMismatch("constructible functions live on different complexes")

    def _pointwise(self, other: "ConstructibleFunction", op: Callable[[int, int], int], keys) -> "ConstructibleFunction":
        self._same(other)
        out = {}
        for s in keys:
            v = checked(op(self._values.get(s, 0), other._values.get(s, 0)))
            if v:
                out[s] = v
        return ConstructibleFunction._trusted(self.ambient, out)

    def __add__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return self._pointwise(other, int.__add__, self._values.keys() | other._values.keys())

    def __sub__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return self._pointwise(other, int.__sub__, self._values.keys() | other._values.keys())

    def __mul__(self, other: "ConstructibleFunction | int") -> "ConstructibleFunction":
        if isinstance(other, int):
            return self.scale(other)
        return self._pointwise(other, int.__mul__, self._values.keys() & other._values.keys())

    __rmul__ = __mul__

    def __neg__(self) -> "ConstructibleFunction":
        return self.scale(-1)

    def __pow__(self, k: int) -> "ConstructibleFunction":
        if k < 1:
            raise ValueError("only positive powers are supported")
        out = {s: checked(v**k) for s, v in self._values.items()}
        return ConstructibleFunction._trusted(self.ambient, out)

    def scale(self, k: int) -> "ConstructibleFunction":
        if k == 0:
            return ConstructibleFunction._trusted(self.ambient, {})
        return ConstructibleFunction._trusted(self.ambient, {s: checked(k * v) for s, v in self._values.items()})

    def map_values(self, fn: Callable[[int], int]) -> "ConstructibleFunction":
        """Apply ``fn`` to every value (``fn(0)`` must be 0)."""
        return ConstructibleFunction(self.ambient, {s: fn(v) for s, v in self._values.items()})

    def mod(self, m: int) -> "ConstructibleFunction":
        return self.map_values(lambda v: v % m)


def zero(K: SimplicialComplex) -> ConstructibleFunction:
    return ConstructibleFunction._trusted(K, {})


def constant(K: SimplicialComplex, c: int = 1) -> ConstructibleFunction:
    return ConstructibleFunction(K, {s: c for s in K.simplices})


def indicator(S: SimplexSet) -> ConstructibleFunction:
    return ConstructibleFunction._trusted(S.ambient, {s: 1 for s in S.members})


def combine(kind: str, phi: ConstructibleFunction, psi: ConstructibleFunction | None = None, k: int = 1) -> ConstructibleFunction:
    """Ring operations by name: ``add``, ``sub``, ``mul`` or ``scale`` (by ``k``)."""
    if kind == "scale":
        return phi.scale(k)
    if psi is None:
        raise TypeError(f"{kind} needs two functions")
    if kind == "add":
        return phi + psi
    if kind == "sub":
        return phi - psi
    if kind == "mul":
        return phi * psi
    raise ValueError(f"unknown operation {kind!r}")


def integral(phi: ConstructibleFunction) -> int:
    """Euler integral: sum of (-1)^dim * value over open simplices."""
    total = 0
    for s, v in phi._values.items():
        total += v if len(s) % 2 else -v
    return checked(total)


def integral_over(phi: ConstructibleFunction, S: SimplexSet) -> int:
    return integral(restrict(phi, S))


def restrict(phi: ConstructibleFunction, S: SimplexSet) -> ConstructibleFunction:
    """phi times the indicator of S."""
    if S.ambient is not phi.ambient and S.ambient != phi.ambient:
        raise AmbientMismatch("set and function live on different complexes")
    return ConstructibleFunction._trusted(phi.ambient, {s: v for s, v in phi._values.items() if s in S.members})


def mobius_closed_coeffs(phi: ConstructibleFunction) -> dict[Simplex, int]:
    """Coefficients c with phi = sum c[s] * indicator(closed simplex s).

    Only nonzero coefficients are returned.
    """
    K = phi.ambient
    out = {}
    for s in K.simplices:
        c = phi[s]
        ds = dim(s)
        for rho in K.cofaces(s):
            v = phi._values.get(rho)
            if v:
                c += v if (dim(rho) - ds) % 2 == 0 else -v
        if c:
            out[s] = checked(c)
    return out


def from_closed_coeffs(K: SimplicialComplex, coeffs: Mapping[Simplex, int]) -> ConstructibleFunction:
    """Inverse of :func:`mobius_closed_coeffs`."""
    acc: dict[Simplex, int] = {}
    for s, c in coeffs.items():
        for f in closure(SimplexSet(K, [s])).members:
            acc[f] = acc.get(f, 0) + c
    return ConstructibleFunction(K, acc)


def canonical_closed_decomposition(S: SimplexSet) -> list[SimplexSet]:
    """Closed sets F1 > F2 > ... with 1_S = 1_F1 - 1_F2 + 1_F3 - ...

    Built by F_i = closure(Y_{i-1}), Y_i = F_i minus Y_{i-1}, starting at Y_0 = S.
    """
    out = []
    current = S
    while current:
        F = closure(current)
        out.append(F)
        current = F - current
    return out


def in_A_ideal(phi: ConstructibleFunction) -> bool:
    """Membership in the ideal of functions divisible by 2^k off a set of dimension < k, for every k."""
    return a_ideal_failure(phi) is None


def a_ideal_failure(phi: ConstructibleFunction) -> tuple[int, Simplex] | None:
    """First (k, simplex) showing phi is not in the ideal, or None."""
    biggest = max((abs(v) for v in phi._values.values()), default=0)
    top = max(phi.ambient.dimension + 1, biggest.bit_length() + 1)
    for k in range(1, top + 1):
        m = 1 << k
        bad = [s for s, v in phi._values.items() if v % m and dim(s) >= k]
        if bad:
            return k, min(bad, key=simplex_key)
    return None
