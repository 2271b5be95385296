import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import functions, maps
from oracles import pushforward_by_closed_simplices

from constructible.complexes import build_complex
from constructible.errors import AmbientMismatch, ValidationError
from constructible.fixtures import fixture
from constructible.functions import constant, integral
from constructible.maps import SimplicialMap, compose, pullback, pushforward
from constructible.operators import dual_op, link_op


def test_fold_map_pushforward():
    fx = fixture("fold-map")
    assert pushforward(fx.map, fx.function).values() == {("0",): 1, ("1",): 2, ("0", "1"): 2}


def test_double_cover_doubles():
    fx = fixture("double-cover")
    assert pushforward(fx.map, constant(fx.complex)) == constant(fx.map.codomain, 2)


def test_map_validation():
    K = build_complex([["a", "b"]])
    L = build_complex([["x"], ["y"]])
    with pytest.raises(ValidationError):
        SimplicialMap(K, L, {"a": "x", "b": "y"})
    with pytest.raises(ValidationError):
        SimplicialMap(K, L, {"a": "x"})


def test_pullback_checks_ambient():
    fx = fixture("fold-map")
    with pytest.raises(AmbientMismatch):
        pullback(fx.map, constant(fx.complex))
    assert pullback(fx.map, constant(fx.map.codomain)) == constant(fx.complex)


@given(st.data())
def test_pushforward_matches_oracle(data):
    phi = data.draw(functions())
    f = data.draw(maps(phi.ambient))
    assert pushforward(f, phi).values() == pushforward_by_closed_simplices(phi.ambient, f.codomain, f.vertex_map, phi.values())


@given(st.data())
def test_functoriality(data):
    phi = data.draw(functions())
    f = data.draw(maps(phi.ambient))
    g = data.draw(maps(f.codomain, targets=3))
    assert pushforward(f, dual_op(phi)) == dual_op(pushforward(f, phi))
    assert pushforward(f, link_op(phi)) == link_op(pushforward(f, phi))
    assert pushforward(compose(g, f), phi) == pushforward(g, pushforward(f, phi))
    assert integral(pushforward(f, phi)) == integral(phi)
