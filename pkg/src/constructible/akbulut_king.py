"""Euler and completely-Euler tests, Akbulut-King invariants and characteristic sets.

Throughout, ``phi`` denotes half_omega(1_X).  For a 1-dimensional stratum S the
invariants (eps0, eps1, eps2) are read off pointwise from phi, half_link(phi^2)
and half_link(phi^3); they are cross-checked against the link-along-S
definitions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .complexes import (
    Simplex,
    SimplexSet,
    SimplicialComplex,
    Stratification,
    closure,
    dim,
    simplex_key,
    top_components,
)
from .errors import (
    DimensionTooHigh,
    FormulaDisagreement,
    HalfNotIntegral,
    NotEuler,
    SetNotClosable,
    SkeletonNotEuler,
)
from .functions import (
    ConstructibleFunction,
    a_ideal_failure,
    constant,
    indicator,
    restrict,
)
from .operators import (
    half_link,
    half_omega,
    link_along,
    link_op,
    odd_witness,
)

log = logging.getLogger(__name__)

# Akbulut-King names for the epsilon patterns (eps0, eps1, eps2).
Z_PATTERNS = {"Z0": (1, 1, 1), "Z1": (0, 1, 0), "Z2": (1, 0, 0), "Z3": (1, 1, 0)}
# The same sets as delta patterns: Z0 = X_101, Z1 = X_111, Z2 = X_110, Z3 = X_001.
Z_AS_DELTA = {"Z0": (1, 0, 1), "Z1": (1, 1, 1), "Z2": (1, 1, 0), "Z3": (0, 0, 1)}
PROP38_DELTAS = [(1, 1, 1), (1, 0, 1), (0, 1, 1), (1, 1, 0)]


@dataclass(frozen=True)
class Witness:
    function: str
    simplex: Simplex
    value: int


@dataclass
class CheckReport:
    verdict: bool
    failing_witnesses: list[Witness] = field(default_factory=list)
    characteristic_sets: dict[str, SimplexSet] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.failing_witnesses.sort(key=lambda w: (w.function, simplex_key(w.simplex)))
        if self.verdict != (not self.failing_witnesses):
            raise ValueError("verdict must be true exactly when there are no failing witnesses")


@dataclass
class EpsilonProfile:
    epsilon: dict[Simplex, tuple[int, int, int]]
    delta: dict[Simplex, tuple[int, int, int]]
    c0: SimplexSet
    c1: SimplexSet
    x0: SimplexSet
    x1: SimplexSet
    epsilon3: dict[Simplex, int] | None = None
    geometric: dict[Simplex, tuple[int, int]] = field(default_factory=dict)
    disagreements: list[str] = field(default_factory=list)
    eps3_forms: dict[str, bool] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def _euler_witness(psi: ConstructibleFunction, name: str) -> Witness | None:
    bad = odd_witness(link_op(psi))
    return None if bad is None else Witness(name, bad[0], bad[1])


def _require_dim(K: SimplicialComplex, top: int) -> None:
    if K.dimension > top:
        raise DimensionTooHigh(f"dimension {K.dimension} exceeds {top}")


def _require_euler_space(X: SimplicialComplex) -> ConstructibleFunction:
    """Return half_omega(1_X), or raise NotEuler with the offending link value."""
    w = _euler_witness(constant(X), "1_X")
    if w is not None:
        raise NotEuler(w.simplex, w.value, "1_X is not Euler")
    return half_omega(constant(X))


def is_euler_set(S: SimplexSet) -> bool:
    """Whether closure(S) has even link Euler characteristic everywhere.

    Only vertices may be missing from S's closure.
    """
    Sbar = closure(S)
    if any(dim(s) > 0 for s in Sbar.members - S.members):
        raise SetNotClosable("closing this set adds simplices of positive dimension")
    return odd_witness(link_op(indicator(Sbar))) is None


def _stratum_value(phi: ConstructibleFunction, block: SimplexSet, d: int, label: str, warnings: list[str]) -> int:
    """phi mod 2 on the stratum, read on its top simplices; warns if not constant."""
    seen = {phi[s] % 2 for s in block.members}
    if len(seen) > 1:
        warnings.append(f"NonConstantOnStratum: half_omega(1_X) mod 2 varies on stratum {label!r}")
    tops = [phi[s] % 2 for s in block if dim(s) == d]
    return tops[0]


def c0_set(X: SimplicialComplex, stratification: Stratification | None = None) -> tuple[SimplexSet, SimplexSet]:
    """(C0, C1): the 1-skeleton plus the 2-strata where half_omega(1_X) is odd (resp. even)."""
    _require_dim(X, 3)
    phi = _require_euler_space(X)
    return _c_sets(X, phi, stratification or Stratification.by_simplices(X), [])


def _c_sets(X, phi, strat: Stratification, warnings: list[str]) -> tuple[SimplexSet, SimplexSet]:
    x1 = strat.skeleton(1)
    c0, c1 = set(x1.members), set(x1.members)
    for label, block in strat.of_dim(2):
        (c0 if _stratum_value(phi, block, 2, label, warnings) else c1).update(block.members)
    C0, C1 = SimplexSet(X, c0), SimplexSet(X, c1)
    if not (C0.is_closed and C1.is_closed):
        raise FormulaDisagreement("C0(X) or C1(X) is not closed")
    return C0, C1


def _check_skeleta(strat: Stratification) -> None:
    for k in range(strat.ambient.dimension + 1):
        w = _euler_witness(indicator(strat.skeleton(k)), f"skeleton X^{k}")
        if w is not None:
            raise SkeletonNotEuler(w.simplex, w.value, f"skeleton X^{k} is not Euler")


def epsilon_profile(X: SimplicialComplex, stratification: Stratification | None = None) -> EpsilonProfile:
    _require_dim(X, 3)
    phi = _require_euler_space(X)
    strat = stratification or Stratification.by_simplices(X)
    if stratification is not None:
        _check_skeleta(strat)
    warnings: list[str] = []
    one = constant(X)
    L2, L3 = half_link(phi**2), half_link(phi**3)
    C0, C1 = _c_sets(X, phi, strat, warnings)
    x0, x1 = strat.skeleton(0), strat.skeleton(1)

    eps: dict[Simplex, tuple[int, int, int]] = {}
    delta: dict[Simplex, tuple[int, int, int]] = {}
    for s in x1:
        p, l2, l3 = phi[s] % 2, L2[s] % 2, L3[s] % 2
        e = ((l2 + l3) % 2, l3, (p + l2) % 2)
        dl = (p, l2, l3)
        if dl != ((e[0] + e[1] + e[2]) % 2, (e[0] + e[1]) % 2, e[1]):
            raise FormulaDisagreement(f"delta/epsilon relations fail at {list(s)}")
        eps[s], delta[s] = e, dl

    profile = EpsilonProfile(eps, delta, C0, C1, x0, x1, warnings=warnings)

    # Geometric route on every 1-stratum S: links along closure(S).
    along_c0 = link_along(C0, one)
    ind_c0, ind_c1 = indicator(C0), indicator(C1)
    if stratification is not None:
        profile.epsilon3 = {}
        half_x2 = half_link(indicator(strat.skeleton(2)))
        forms = {"eps2+eps3=half_omega(1_X2)": True, "eps3=eps2+half_link(1_X2)": True}
    for label, block in strat.of_dim(1):
        Sbar = closure(block)
        iterated = link_along(Sbar, along_c0)
        to_c0 = link_along(Sbar, ind_c0)
        to_c1 = link_along(Sbar, ind_c1) if stratification is not None else None
        for s in block:
            v0, v2 = iterated[s], to_c0[s]
            if v0 % 4:
                raise HalfNotIntegral(s, v0, 4, "iterated link along S and C0")
            if v2 % 2:
                raise HalfNotIntegral(s, v2, 2, "link of C0 along S")
            g = ((v0 // 4) % 2, (v2 // 2) % 2)
            profile.geometric[s] = g
            if g != (eps[s][0], eps[s][2]):
                profile.disagreements.append(
                    f"{list(s)}: formula (eps0, eps2) = {(eps[s][0], eps[s][2])}, geometric = {g}"
                )
            if to_c1 is not None:
                v3 = to_c1[s]
                if v3 % 2:
                    raise HalfNotIntegral(s, v3, 2, "link of C1 along S")
                e3 = (v3 // 2) % 2
                profile.epsilon3[s] = e3
                h = half_x2[s] % 2
                if (eps[s][2] + e3) % 2 != (1 - h) % 2:
                    forms["eps2+eps3=half_omega(1_X2)"] = False
                if e3 != (eps[s][2] + h) % 2:
                    forms["eps3=eps2+half_link(1_X2)"] = False
        values = {(eps[s], profile.epsilon3.get(s) if profile.epsilon3 is not None else None) for s in block}
        if len(values) > 1:
            warnings.append(f"NonConstantOnStratum: epsilon varies on stratum {label!r}")
    if stratification is not None:
        profile.eps3_forms = forms
    for w in warnings:
        log.warning(w)
    return profile


def _pattern_set(X: SimplicialComplex, table: dict[Simplex, tuple], pattern: tuple, within: SimplexSet | None = None) -> SimplexSet:
    return SimplexSet(X, (s for s, v in table.items() if v == pattern and (within is None or s in within.members)))


def characteristic_sets(X: SimplicialComplex, profile: EpsilonProfile | None = None) -> dict[str, SimplexSet]:
    """X_delta (delta in Z2^3), E_abc (a, b, c in Z2) and Z0..Z3, all inside the 1-skeleton."""
    profile = profile or epsilon_profile(X)
    out: dict[str, SimplexSet] = {}
    strata_1 = profile.x1 - profile.x0
    for pat in product((0, 1), repeat=3):
        tag = "".join(map(str, pat))
        out[f"X_{tag}"] = _pattern_set(X, profile.delta, pat)
        out[f"E_{tag}"] = profile.x0 | _pattern_set(X, profile.epsilon, pat, strata_1)
    for name, pat in Z_PATTERNS.items():
        tag = "".join(map(str, pat))
        out[name] = out[f"E_{tag}"]
        via_delta = out["X_" + "".join(map(str, Z_AS_DELTA[name]))] | profile.x0
        if via_delta != out[name]:
            raise FormulaDisagreement(f"{name} differs between its epsilon and delta descriptions")
    return out


_FACTOR_NAMES = ("phi", "half_link(phi)", "half_link(phi^2)", "half_link(phi^3)")


def _product(factors: list[ConstructibleFunction], exps: tuple[int, ...], X: SimplicialComplex):
    acc = constant(X)
    names = []
    for f, e, name in zip(factors, exps, _FACTOR_NAMES[: len(exps)] if len(exps) == 4 else None):
        if e:
            acc = acc * f
            names.append(name)
    return acc, " * ".join(names)


def completely_euler_dim2(phi: ConstructibleFunction) -> CheckReport:
    """Completely-Euler test for a function whose support has dimension at most 2."""
    X = phi.ambient
    d = phi.support().dimension
    if d > 2:
        raise DimensionTooHigh(f"support has dimension {d}; at most 2 is supported")
    w = _euler_witness(phi, "phi")
    if w is not None:
        return CheckReport(False, [w], details={"euler": False, "support_dimension": d})
    if d <= 1:
        return CheckReport(True, details={"euler": True, "support_dimension": d, "rule": "support of dimension <= 1"})
    factors = [phi, half_link(phi), half_link(phi**2), half_link(phi**3)]
    witnesses, checked_names = [], []
    for exps in product((0, 1), repeat=4):
        a, b, c, e = exps
        if b + c + e == 0 or a + b + c + e < 2:
            continue
        psi, name = _product(factors, exps, X)
        checked_names.append(name)
        w = _euler_witness(psi, name)
        if w is not None:
            witnesses.append(w)
    return CheckReport(
        not witnesses,
        witnesses,
        details={"euler": True, "support_dimension": d, "products_checked": checked_names},
    )


def _products_39(phi, L2, L3) -> dict[str, ConstructibleFunction]:
    return {
        "phi * half_link(phi^2)": phi * L2,
        "phi * half_link(phi^3)": phi * L3,
        "half_link(phi^2) * half_link(phi^3)": L2 * L3,
        "phi * half_link(phi^2) * half_link(phi^3)": phi * L2 * L3,
    }


def completely_euler_dim3(X: SimplicialComplex) -> CheckReport:
    """Whether 1_X is completely Euler, for dim X <= 3.

    Checked both on the four product functions and on the four
    characteristic sets X_111, X_101, X_011, X_110 (with the vertices added).
    """
    _require_dim(X, 3)
    w = _euler_witness(constant(X), "1_X")
    if w is not None:
        return CheckReport(False, [w], details={"euler": False})
    if X.dimension <= 2:
        return CheckReport(True, details={"euler": True, "rule": "dimension <= 2: Euler suffices"})
    phi = half_omega(constant(X))
    L2, L3 = half_link(phi**2), half_link(phi**3)
    witnesses = []
    for name, psi in _products_39(phi, L2, L3).items():
        w = _euler_witness(psi, name)
        if w is not None:
            witnesses.append(w)
    profile = epsilon_profile(X)
    sets = characteristic_sets(X, profile)
    chosen = {}
    for pat in PROP38_DELTAS:
        name = "X_" + "".join(map(str, pat))
        chosen[name] = sets[name] | profile.x0
    set_status = {name: is_euler_set(S) for name, S in chosen.items()}
    set_verdict = all(set_status.values())
    if set_verdict != (not witnesses):
        raise FormulaDisagreement("product form and set form of the completely-Euler test disagree")
    for name in Z_PATTERNS:
        chosen[name] = sets[name]
    return CheckReport(
        not witnesses,
        witnesses,
        characteristic_sets=chosen,
        details={
            "euler": True,
            "product_form": not witnesses,
            "set_form": set_verdict,
            "set_euler": set_status,
        },
    )


def akbulut_king(X: SimplicialComplex) -> CheckReport:
    """X Euler and Z0..Z3 Euler; cross-checked against :func:`completely_euler_dim3`."""
    _require_dim(X, 3)
    w = _euler_witness(constant(X), "1_X")
    if w is not None:
        return CheckReport(False, [w], details={"euler": False})
    profile = epsilon_profile(X)
    sets = characteristic_sets(X, profile)
    witnesses = []
    status = {}
    for name in Z_PATTERNS:
        ok = is_euler_set(sets[name])
        status[name] = ok
        if not ok:
            bad = odd_witness(link_op(indicator(closure(sets[name]))))
            witnesses.append(Witness(name, bad[0], bad[1]))
    verdict = not witnesses
    if verdict != completely_euler_dim3(X).verdict:
        raise FormulaDisagreement("Akbulut-King conditions and the completely-Euler test disagree")
    eps_table = {s: list(e) for s, e in profile.epsilon.items() if dim(s) == 1}
    return CheckReport(
        verdict,
        witnesses,
        characteristic_sets={k: v for k, v in sets.items() if k.startswith("Z")},
        details={
            "euler": True,
            "z_euler": status,
            "epsilon": eps_table,
            "cross_check_disagreements": list(profile.disagreements),
        },
        warnings=list(profile.warnings),
    )


_STRAT_FACTORS = ("phi", "half_link(phi^2)", "half_link(phi^3)", "half_link(1_X2)")


def stratified_check(X: SimplicialComplex, strat: Stratification) -> CheckReport:
    """Whether the skeleta indicators of ``strat`` form a completely Euler family."""
    _require_dim(X, 3)
    if strat.ambient != X:
        raise FormulaDisagreement("stratification belongs to another complex")
    _check_skeleta(strat)
    phi = half_omega(constant(X))
    L2, L3 = half_link(phi**2), half_link(phi**3)
    M = half_link(indicator(strat.skeleton(2)))
    x0, x1 = strat.skeleton(0), strat.skeleton(1)

    funcs: dict[str, ConstructibleFunction] = {"phi * 1_X1": restrict(phi, x1)}
    factors = (phi, L2, L3, M)
    for exps in product((0, 1), repeat=4):
        a, b, c, d = exps
        if (d == 0 and a + b + c >= 2) or (d == 1 and a + b + c > 0):
            acc = constant(X)
            for f, e in zip(factors, exps):
                if e:
                    acc = acc * f
            funcs[" * ".join(n for n, e in zip(_STRAT_FACTORS, exps) if e)] = acc
    witnesses = [w for name, psi in funcs.items() if (w := _euler_witness(psi, name)) is not None]

    pattern = {s: (phi[s] % 2, L2[s] % 2, L3[s] % 2, M[s] % 2) for s in x1}
    sets: dict[str, SimplexSet] = {}
    for dl in PROP38_DELTAS:
        sets["X_" + "".join(map(str, dl)) + ",0"] = _pattern_set(X, pattern, dl + (0,))
    for dl in product((0, 1), repeat=3):
        if dl != (0, 0, 0):
            sets["X_" + "".join(map(str, dl)) + ",1"] = _pattern_set(X, pattern, dl + (1,))
    sets["X'"] = _pattern_set(X, pattern, (1, 0, 0, 0), x1 - x0)
    set_status = {name: is_euler_set(S | x0) for name, S in sets.items()}
    set_verdict = all(set_status.values())
    if set_verdict != (not witnesses):
        raise FormulaDisagreement("product form and set form of the stratified test disagree")

    profile = epsilon_profile(X, strat)
    strata_1 = x1 - x0
    table = {s: profile.epsilon[s] + (profile.epsilon3[s],) for s in profile.epsilon3 or {}}
    for pat in product((0, 1), repeat=4):
        sets["E_" + "".join(map(str, pat))] = x0 | _pattern_set(X, table, pat, strata_1)
    return CheckReport(
        not witnesses,
        witnesses,
        characteristic_sets=sets,
        details={
            "functions_checked": list(funcs),
            "set_euler": set_status,
            "eps3_forms": profile.eps3_forms,
            "cross_check_disagreements": list(profile.disagreements),
        },
        warnings=list(profile.warnings),
    )


@dataclass
class DivisibilityReport:
    k: int
    min_valuation: int | None
    divisible: bool
    classes: list[dict[str, Any]] = field(default_factory=list)


def two_adic_valuation(n: int) -> int:
    return (n & -n).bit_length() - 1


def iterated_link(
    X: SimplicialComplex,
    sets: list[SimplexSet],
    candidates: list[SimplexSet] = (),
) -> tuple[ConstructibleFunction, DivisibilityReport]:
    """Lambda_{Y1} ... Lambda_{Yk} 1_X with a 2-adic report.

    For each candidate set, the values mod 2^(k+1) on the top simplices of each
    of its top-adjacency classes are listed.  Nothing is asserted.
    """
    phi = constant(X)
    for Y in reversed(sets):
        phi = link_along(Y, phi)
    k = len(sets)
    vals = [two_adic_valuation(v) for _, v in phi.items()]
    low = min(vals, default=None)
    report = DivisibilityReport(k, low, low is None or low >= k)
    m = 1 << (k + 1)
    for i, Y in enumerate(candidates):
        for j, comp in enumerate(top_components(Y)):
            residues = sorted(phi[s] % m for s in comp)
            report.classes.append(
                {"candidate": i, "component": j, "residues": residues, "constant": len(set(residues)) <= 1}
            )
    return phi, report


def parity_classes(phi: ConstructibleFunction, S: SimplexSet) -> list[set[int]]:
    """Values mod 2 of phi on the top simplices of each top-adjacency class of S."""
    return [{phi[s] % 2 for s in comp} for comp in top_components(S)]


def half_closure_suite(phi: ConstructibleFunction) -> CheckReport:
    """Ideal membership of phi and half_link(phi), and Euler status of phi and its halves."""
    witnesses = []
    fail = a_ideal_failure(phi)
    member = fail is None
    if fail is not None:
        witnesses.append(Witness(f"phi mod 2^{fail[0]}", fail[1], phi[fail[1]]))
    euler = _euler_witness(phi, "phi")
    details: dict[str, Any] = {"in_A": member, "euler": euler is None}
    if euler is None:
        hl, ho = half_link(phi), half_omega(phi)
        details["half_link_in_A"] = a_ideal_failure(hl) is None
        details["half_link_euler"] = _euler_witness(hl, "half_link(phi)") is None
        details["half_omega_euler"] = _euler_witness(ho, "half_omega(phi)") is None
        if member and not details["half_link_in_A"]:
            k, s = a_ideal_failure(hl)
            witnesses.append(Witness(f"half_link(phi) mod 2^{k}", s, hl[s]))
    else:
        witnesses.append(euler)
        details.update(half_link_in_A=None, half_link_euler=None, half_omega_euler=None)
    return CheckReport(not witnesses, witnesses, details=details)
