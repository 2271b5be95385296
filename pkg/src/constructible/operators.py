"""Link, duality and related operators on constructible functions.

For a point x in the open simplex tau, a small sphere around x meets tau in a
sphere of dimension dim(tau) - 1 and every proper coface rho in an open cell of
dimension dim(rho) - 1.  Integrating over that sphere gives the star formula
used by :func:`link_op`.
"""

from __future__ import annotations

from .complexes import (
    Simplex,
    SimplexSet,
    closure,
    dim,
    euler_char,
    order_complex_euler_char,
    proper_faces,
)
from .errors import FormulaDisagreement, NotEuler, SetNotClosed
from .functions import (
    ConstructibleFunction,
    checked,
    indicator,
    integral,
    mobius_closed_coeffs,
    restrict,
)


def link_op(phi: ConstructibleFunction) -> ConstructibleFunction:
    """Lambda phi, by summing over stars."""
    acc: dict[Simplex, int] = {}
    for rho, v in phi._values.items():
        if len(rho) % 2 == 0:  # odd-dimensional: its own link sphere has chi 2
            acc[rho] = acc.get(rho, 0) + 2 * v
        # open (dim rho - 1)-cell in the link of each proper face
        contrib = v if len(rho) % 2 == 0 else -v
        for tau in proper_faces(rho):
            acc[tau] = acc.get(tau, 0) + contrib
    return ConstructibleFunction(phi.ambient, acc)


def link_op_oracle(phi: ConstructibleFunction) -> ConstructibleFunction:
    """Lambda phi through the decomposition into closed-simplex indicators.

    The link of a point of a closed simplex is a sphere at interior points and
    a disc at boundary points.
    """
    K = phi.ambient
    acc: dict[Simplex, int] = {}
    for sigma, c in mobius_closed_coeffs(phi).items():
        at_interior = 1 + (-1) ** (dim(sigma) - 1)
        if at_interior:
            acc[sigma] = acc.get(sigma, 0) + c * at_interior
        for tau in proper_faces(sigma):
            acc[tau] = acc.get(tau, 0) + c
    return ConstructibleFunction(K, acc)


def dual_op(phi: ConstructibleFunction) -> ConstructibleFunction:
    return phi - link_op(phi)


def omega_op(phi: ConstructibleFunction) -> ConstructibleFunction:
    return phi + dual_op(phi)


def odd_witness(psi: ConstructibleFunction) -> tuple[Simplex, int] | None:
    for s, v in psi.items():
        if v % 2:
            return s, v
    return None


def _halve(psi: ConstructibleFunction, what: str) -> ConstructibleFunction:
    bad = odd_witness(psi)
    if bad is not None:
        raise NotEuler(bad[0], bad[1], what)
    return ConstructibleFunction._trusted(psi.ambient, {s: v // 2 for s, v in psi._values.items()})


def half_link(phi: ConstructibleFunction) -> ConstructibleFunction:
    """Lambda phi / 2; raises NotEuler when some value is odd."""
    return _halve(link_op(phi), "link")


def half_omega(phi: ConstructibleFunction) -> ConstructibleFunction:
    return _halve(omega_op(phi), "omega")


def is_euler(phi: ConstructibleFunction) -> bool:
    return odd_witness(link_op(phi)) is None


def is_self_dual(phi: ConstructibleFunction) -> bool:
    return link_op(phi).is_zero()


def is_anti_self_dual(phi: ConstructibleFunction) -> bool:
    return omega_op(phi).is_zero()


def _require_closed(Y: SimplexSet) -> None:
    if not Y.is_closed:
        raise SetNotClosed("the set must be a closed subcomplex")


def link_along(Y: SimplexSet, phi: ConstructibleFunction) -> ConstructibleFunction:
    """Link of phi along the closed set Y.

    Evaluates both closed forms and refuses to answer if they differ.  The
    inner operators run in the ambient complex; for functions supported on a
    closed subcomplex that coincides with running them inside the subcomplex.
    """
    _require_closed(Y)
    lam = link_op(phi)
    via_links = link_op(restrict(phi, Y)) - link_op(restrict(lam, Y)) + restrict(lam, Y)
    via_duals = restrict(phi, Y) - dual_op(restrict(dual_op(phi), Y))
    if via_links != via_duals:
        raise FormulaDisagreement("the two closed forms of the link along a set disagree")
    return via_links


def omega_along(Y: SimplexSet, phi: ConstructibleFunction) -> ConstructibleFunction:
    """phi|_Y + D((D phi)|_Y), the counterpart of :func:`link_along`."""
    _require_closed(Y)
    return restrict(phi, Y) + dual_op(restrict(dual_op(phi), Y))


def chi_link_of_set(Y: SimplexSet, Z: SimplexSet) -> int:
    """Euler characteristic of the link of closure(Y) in the closed set Z.

    Computed as the integral of Lambda 1_Z over closure(Y), and independently
    as chi(Y & Z) + chi(Z - Y) - chi(Z) with the homotopy Euler characteristic
    of the open complement.
    """
    _require_closed(Z)
    Ybar = closure(Y)
    by_integral = integral(restrict(link_op(indicator(Z)), Ybar))
    meet = Ybar & Z
    by_complement = euler_char(meet) + order_complex_euler_char(Z - Ybar) - euler_char(Z)
    if by_integral != by_complement:
        raise FormulaDisagreement(
            f"link Euler characteristic: integral gives {by_integral}, complement formula gives {by_complement}"
        )
    return checked(by_integral)


def link_op_in_subcomplex(phi: ConstructibleFunction, Y: SimplexSet) -> ConstructibleFunction:
    """Lambda of phi|_Y computed with the subcomplex Y as ambient, extended by zero."""
    _require_closed(Y)
    sub = Y.as_complex()
    local = ConstructibleFunction(sub, {s: v for s, v in phi.items() if s in Y.members})
    lam = link_op(local)
    return ConstructibleFunction(phi.ambient, lam.values())

