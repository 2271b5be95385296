import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import closed_sets, complexes, functions
from oracles import link_along_by_subdivision, link_by_subdivision

from constructible.complexes import SimplexSet, build_complex, euler_char, link_complex
from constructible.errors import FormulaDisagreement, NotEuler, SetNotClosed
from constructible.fixtures import fixture
from constructible.functions import ConstructibleFunction, constant, indicator, integral, restrict
from constructible.operators import (
    chi_link_of_set,
    dual_op,
    half_link,
    half_omega,
    is_anti_self_dual,
    is_euler,
    is_self_dual,
    link_along,
    link_op,
    link_op_in_subcomplex,
    link_op_oracle,
    omega_along,
    omega_op,
)

PATH = build_complex([["a", "b"], ["b", "c"]])


def test_link_on_path():
    assert link_op(constant(PATH)).values() == {("a",): 1, ("b",): 2, ("c",): 1, ("a", "b"): 2, ("b", "c"): 2}


def test_link_of_open_edge():
    K = build_complex([["a", "b"]])
    phi = indicator(SimplexSet(K, [("a", "b")]))
    assert link_op(phi).values() == {("a",): 1, ("b",): 1, ("a", "b"): 2}
    assert dual_op(constant(K)).values() == {("a", "b"): -1}


def test_link_along_vertex_of_path():
    Y = SimplexSet(PATH, [("b",)])
    assert link_along(Y, constant(PATH)).values() == {("b",): 2}
    assert omega_along(Y, constant(PATH)).is_zero()


def test_link_along_needs_closed_set():
    with pytest.raises(SetNotClosed):
        link_along(SimplexSet(PATH, [("a", "b")]), constant(PATH))


def test_chi_link_examples():
    assert chi_link_of_set(SimplexSet(PATH, [("b",)]), PATH.whole()) == 2
    S2 = fixture("sphere2").complex
    assert chi_link_of_set(SimplexSet(S2, [("0", "1")]), S2.whole()) == 0


def test_halves_need_euler():
    with pytest.raises(NotEuler):
        half_link(constant(PATH))
    S1 = fixture("circle").complex
    assert half_link(constant(S1)) == constant(S1)
    assert half_omega(constant(S1)).is_zero()


@pytest.mark.parametrize("name", ["sphere2", "torus"])
def test_even_dimensional_manifolds_self_dual(name):
    assert is_self_dual(constant(fixture(name).complex))


@pytest.mark.parametrize("name", ["circle", "sphere3"])
def test_odd_dimensional_manifolds_anti_self_dual(name):
    assert is_anti_self_dual(constant(fixture(name).complex))


@given(functions())
def test_link_matches_subdivision_oracle(phi):
    assert link_op(phi).values() == link_by_subdivision(phi.ambient, phi.values())
    assert link_op(phi) == link_op_oracle(phi)


@given(functions())
def test_operator_identities(phi):
    lam = link_op(phi)
    assert dual_op(dual_op(phi)) == phi
    assert link_op(lam) == lam.scale(2)
    assert integral(lam) == 0
    assert dual_op(lam) == -lam == link_op(dual_op(phi))
    assert omega_op(phi) + lam == phi.scale(2)


@given(st.data())
def test_link_along_matches_oracle(data):
    phi = data.draw(functions())
    Y = data.draw(closed_sets(phi.ambient))
    assert link_along(Y, phi).values() == link_along_by_subdivision(phi.ambient, set(Y.members), phi.values())


@given(st.data())
def test_link_along_identities(data):
    phi = data.draw(functions())
    Y = data.draw(closed_sets(phi.ambient))
    LY = link_along(Y, phi)
    assert link_along(Y, dual_op(phi)) == -dual_op(LY)
    assert link_along(Y, link_op(phi)) == omega_op(LY)
    assert link_along(Y, omega_op(phi)) == link_op(LY)
    assert omega_along(Y, phi) + LY == restrict(phi, Y).scale(2)


def test_omega_along_third_identity_fails():
    # with Y everything, Lambda_Y vanishes but Omega_Y(Lambda phi) = 2 Lambda phi
    phi = constant(PATH)
    Y = PATH.whole()
    assert link_along(Y, phi).is_zero()
    assert omega_along(Y, link_op(phi)) == link_op(phi).scale(2) != link_op(link_along(Y, phi))


@given(st.data())
def test_link_in_subcomplex_equals_ambient(data):
    phi = data.draw(functions())
    Y = data.draw(closed_sets(phi.ambient))
    assert link_op_in_subcomplex(phi, Y) == link_op(restrict(phi, Y))


@given(st.data())
def test_chi_link_routes(data):
    K = data.draw(complexes())
    Y = SimplexSet(K, data.draw(st.lists(st.sampled_from(K.ordered), max_size=4)))
    Z = data.draw(closed_sets(K))
    chi_link_of_set(Y, Z)  # raises FormulaDisagreement on mismatch


@given(complexes(max_vertices=6))
def test_vertex_links_match_link_complex(K):
    lam = link_op(constant(K))
    for v in K.vertices:
        assert lam[(v,)] == euler_char(link_complex(K, (v,)))


def test_disagreement_is_an_assertion():
    assert issubclass(FormulaDisagreement, AssertionError)


def test_euler_of_closed_edge_is_not_euler_at_vertices():
    K = build_complex([["a", "b"]])
    assert not is_euler(constant(K))
    assert is_euler(ConstructibleFunction(K, {("a",): 2, ("b",): 2, ("a", "b"): 2}))


def test_literal_anticommutation_fails():
    # D(Lambda phi) and Lambda(D phi) both equal -Lambda phi, so they are not negatives
    phi = constant(PATH)
    assert dual_op(link_op(phi)) != -link_op(dual_op(phi))
