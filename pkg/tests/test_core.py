import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catdyn.core import (
    BackendMismatch,
    DiagramPath,
    LawReport,
    TypeMismatch,
    associator,
    associator_inv,
    check_diagram,
    check_equal,
    compose,
    compose_all,
    curry_left,
    eval_morphism,
    hom_map,
    hom_obj,
    identity,
    internal_compose,
    is_terminal_unit,
    lunitor,
    lunitor_inv,
    morphisms_equal,
    name_of,
    runitor,
    runitor_inv,
    swap,
    tensor_mor,
    tensor_obj,
    uncurry_left,
)
from catdyn.dynamics import flow_composition_law
from catdyn.examples import ABC, rot, z3_rotation
from catdyn.finset import FINSET, carrier, finset, morphism, product, size, table, unit
from catdyn.finvect import GF2, linear, space
from strategies import finsets, linear_maps, maps, spaces

OMEGA = finset(ABC)


# -- composition and identities ----------------------------------------------


def test_identity_is_neutral_on_a_table():
    f = rot(1)
    assert compose(identity(OMEGA), f) == f
    assert compose(f, identity(OMEGA)) == f


def test_rot1_twice_is_rot2():
    r2 = compose(rot(1), rot(1))
    assert table(r2) == {"a": "c", "b": "a", "c": "b"}
    assert r2 == rot(2)


def test_compose_rejects_mismatched_types():
    f = morphism(finset("pq"), OMEGA, ["a", "b"])
    g = morphism(finset("xy"), finset("z"), ["z", "z"])
    with pytest.raises(TypeMismatch):
        compose(g, f)


def test_compose_rejects_mixed_backends():
    with pytest.raises((BackendMismatch, TypeMismatch)):
        compose(identity(space(1)), identity(unit()))


def test_identity_examples():
    assert table(identity(OMEGA)) == {"a": "a", "b": "b", "c": "c"}
    assert size(unit()) == 1 and table(identity(unit())) == {(): ()}
    assert np.array_equal(identity(space(2)).payload, np.eye(2, dtype=np.uint8))


@given(st.data())
def test_composition_is_associative(data):
    a, b, c, d = (data.draw(finsets(min_size=1)) for _ in range(4))
    f = data.draw(maps(a, b))
    g = data.draw(maps(b, c))
    h = data.draw(maps(c, d))
    assert compose(compose(h, g), f) == compose(h, compose(g, f))


# -- tensor -------------------------------------------------------------------


def test_tensor_sizes_and_identity():
    ab = tensor_obj(finset("01"), finset("xy"))
    assert size(ab) == 4
    assert carrier(ab) == [("0", "x"), ("0", "y"), ("1", "x"), ("1", "y")]
    assert tensor_mor(identity(finset("01")), identity(finset("xy"))) == identity(ab)


def test_gf2_tensor_is_kronecker():
    f = linear(space(2), space(2), [[1, 1], [0, 1]])
    g = linear(space(3), space(3), [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    fg = tensor_mor(f, g)
    assert GF2.size(fg.dom) == 6
    assert np.array_equal(fg.payload, np.kron(f.payload, g.payload) % 2)


@given(st.data())
def test_tensor_is_bifunctorial(data):
    a, b, c, x, y, z = (data.draw(finsets(min_size=1, max_size=2)) for _ in range(6))
    f, f2 = data.draw(maps(a, b)), data.draw(maps(b, c))
    g, g2 = data.draw(maps(x, y)), data.draw(maps(y, z))
    assert tensor_mor(compose(f2, f), compose(g2, g)) == compose(tensor_mor(f2, g2), tensor_mor(f, g))


@given(st.data())
def test_gf2_tensor_is_bifunctorial(data):
    a, b, c, x, y, z = (data.draw(spaces(2)) for _ in range(6))
    f, f2 = data.draw(linear_maps(a, b)), data.draw(linear_maps(b, c))
    g, g2 = data.draw(linear_maps(x, y)), data.draw(linear_maps(y, z))
    assert tensor_mor(compose(f2, f), compose(g2, g)) == compose(tensor_mor(f2, g2), tensor_mor(f, g))


# -- structural isomorphisms ------------------------------------------------


def test_structural_maps_on_elements():
    assert swap(finset("01"), finset("xy"))(("0", "y")) == ("y", "0")
    assert lunitor(OMEGA)(((), "a")) == "a"
    assert runitor(OMEGA)(("a", ())) == "a"
    p, q, r = finset("p"), finset("q"), finset("r")
    assert associator(p, q, r)((("p", "q"), "r")) == ("p", ("q", "r"))


@pytest.mark.parametrize("backend_objs", [
    [finset(""), finset("p"), finset("pq"), finset("pqr")],
    [space(0), space(1), space(2), space(3)],
], ids=["finset", "gf2"])
def test_structural_maps_are_isos(backend_objs):
    for a, b in itertools.product(backend_objs[:3], repeat=2):
        ab = tensor_obj(a, b)
        assert compose(swap(b, a), swap(a, b)) == identity(ab)
    for a in backend_objs:
        assert compose(lunitor(a), lunitor_inv(a)) == identity(a)
        assert compose(lunitor_inv(a), lunitor(a)) == identity(tensor_obj(a.backend.unit(), a))
        assert compose(runitor(a), runitor_inv(a)) == identity(a)
    for a, b, c in itertools.product(backend_objs[:3], repeat=3):
        abc = tensor_obj(tensor_obj(a, b), c)
        assert compose(associator_inv(a, b, c), associator(a, b, c)) == identity(abc)


@pytest.mark.parametrize("objs", [
    [finset("p"), finset("pq"), finset("pqr")],
    [space(1), space(2), space(3)],
], ids=["finset", "gf2"])
def test_coherence_triangle_pentagon_hexagon(objs):
    one = objs[0].backend.unit()
    for a, b in itertools.product(objs, repeat=2):
        # (A⊗1)⊗B → A⊗(1⊗B) → A⊗B equals ρ⊗B
        assert check_diagram(
            [associator(a, one, b), tensor_mor(identity(a), lunitor(b))],
            [tensor_mor(runitor(a), identity(b))], "triangle")
    for a, b, c, d in itertools.product(objs[:2], repeat=4):
        ida, idd = identity(a), identity(d)
        assert check_diagram(
            [associator(tensor_obj(a, b), c, d), associator(a, b, tensor_obj(c, d))],
            [tensor_mor(associator(a, b, c), idd), associator(a, tensor_obj(b, c), d),
             tensor_mor(ida, associator(b, c, d))], "pentagon")
    for a, b, c in itertools.product(objs[:2], repeat=3):
        ida, idb, idc = identity(a), identity(b), identity(c)
        assert check_diagram(
            [associator(a, b, c), swap(a, tensor_obj(b, c)), associator(b, c, a)],
            [tensor_mor(swap(a, b), idc), associator(b, a, c), tensor_mor(idb, swap(a, c))],
            "hexagon")


# -- closed structure ---------------------------------------------------------


def test_curry_of_left_unitor_gives_constant_paths():
    c = curry_left(lunitor(OMEGA))
    assert c.cod == hom_obj(unit(), OMEGA)
    assert [c(x) for x in ABC] == [("a",), ("b",), ("c",)]


def test_curry_of_rotation_flow_is_flat_adjoint():
    f = z3_rotation()
    flat = curry_left(f.phi)
    assert flat("a") == ("a", "b", "c")
    assert uncurry_left(flat) == f.phi
    assert len(table(uncurry_left(flat))) == 9


def test_curry_and_uncurry_reject_wrong_shapes():
    with pytest.raises(TypeMismatch):
        curry_left(rot(1))
    with pytest.raises(TypeMismatch):
        uncurry_left(rot(1))


@given(st.data())
def test_curry_uncurry_roundtrip_finset(data):
    y, x = data.draw(finsets(max_size=3)), data.draw(finsets(max_size=3))
    z = data.draw(finsets(min_size=1, max_size=3))
    f = data.draw(maps(tensor_obj(y, x), z))
    assert uncurry_left(curry_left(f)) == f
    g = curry_left(f)
    assert curry_left(uncurry_left(g)) == g


@given(st.data())
def test_curry_uncurry_roundtrip_gf2(data):
    y, x, z = (data.draw(spaces(2)) for _ in range(3))
    f = data.draw(linear_maps(tensor_obj(y, x), z))
    assert uncurry_left(curry_left(f)) == f
    g = data.draw(linear_maps(x, hom_obj(y, z)))
    assert curry_left(uncurry_left(g)) == g


@given(st.data())
def test_eval_counit_identity(data):
    # eval∘(Y⊗curry(φ)) = φ
    y, x = data.draw(finsets(max_size=3)), data.draw(finsets(max_size=3))
    z = data.draw(finsets(min_size=1, max_size=3))
    phi = data.draw(maps(tensor_obj(y, x), z))
    lhs = compose(eval_morphism(y, z), tensor_mor(identity(y), curry_left(phi)))
    assert lhs == phi


def test_eval_examples():
    assert eval_morphism(OMEGA, OMEGA)(("a", ("a", "b", "c"))) == "a"
    t = finset(("0", "1", "2"))
    assert eval_morphism(t, OMEGA)(("1", ("a", "b", "c"))) == "b"


def test_gf2_eval_is_matrix_vector_product():
    v = space(2)
    swap_matrix = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    ev = eval_morphism(v, v)
    e0 = np.array([1, 0], dtype=np.uint8)
    assert ev(np.kron(e0, swap_matrix.reshape(-1))) == (0, 1)
    m = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    for x in ([0, 1], [1, 0], [1, 1]):
        assert ev(np.kron(np.array(x, dtype=np.uint8), m.reshape(-1))) == tuple(m @ x % 2)


def test_exponential_edge_cases():
    assert size(hom_obj(finset(""), OMEGA)) == 1
    assert size(hom_obj(OMEGA, finset(""))) == 0
    assert size(hom_obj(finset(""), finset(""))) == 1


# -- internal composition -----------------------------------------------------


def _ic(g, f):
    """Apply ∘ to the names of g and f and read back the composite's name."""
    a, b, c = f.dom, f.cod, g.cod
    one = a.backend.unit()
    return compose_all(internal_compose(a, b, c), tensor_mor(name_of(g), name_of(f)), lunitor_inv(one))


def test_internal_compose_examples():
    f = rot(1)
    assert _ic(identity(OMEGA), f) == name_of(f)
    assert _ic(rot(1), rot(1)) == name_of(rot(2))
    assert internal_compose(OMEGA, OMEGA, OMEGA)((table_tuple(rot(1)), table_tuple(rot(1)))) == \
        table_tuple(rot(2))


def table_tuple(f):
    return tuple(table(f)[x] for x in carrier(f.dom))


@given(st.data())
def test_internal_compose_matches_external(data):
    a, b, c = (data.draw(finsets(min_size=1)) for _ in range(3))
    f, g = data.draw(maps(a, b)), data.draw(maps(b, c))
    assert _ic(g, f) == name_of(compose(g, f))


@given(st.data())
def test_internal_compose_matches_external_gf2(data):
    a, b, c = (data.draw(spaces(2)) for _ in range(3))
    f, g = data.draw(linear_maps(a, b)), data.draw(linear_maps(b, c))
    assert _ic(g, f) == name_of(compose(g, f))


def test_internal_compose_is_associative_and_unital_exhaustively():
    objs = [finset("p"), finset("pq")]
    for a, b, c, d in itertools.product(objs, repeat=4):
        ab, bc, cd = hom_obj(a, b), hom_obj(b, c), hom_obj(c, d)
        left = compose_all(internal_compose(a, c, d),
                           tensor_mor(identity(cd), internal_compose(a, b, c)),
                           associator(cd, bc, ab))
        right = compose(internal_compose(a, b, d),
                        tensor_mor(internal_compose(b, c, d), identity(ab)))
        assert left == right
    for a, b in itertools.product(objs + [finset("pqr")], repeat=2):
        ab = hom_obj(a, b)
        unit_left = compose_all(internal_compose(a, b, b),
                                tensor_mor(name_of(identity(b)), identity(ab)), lunitor_inv(ab))
        unit_right = compose_all(internal_compose(a, a, b),
                                 tensor_mor(identity(ab), name_of(identity(a))), runitor_inv(ab))
        assert unit_left == identity(ab) == unit_right


def test_hom_map_is_postcomposition():
    t = finset(("0", "1", "2"))
    ind = morphism(OMEGA, finset("01"), {"a": "1", "b": "0", "c": "0"})
    assert hom_map(t, ind)(("a", "b", "a")) == ("1", "0", "1")


# -- diagram checking ---------------------------------------------------------


def test_check_diagram_trivial_and_law_examples():
    f = rot(1)
    assert check_diagram([f], [f])
    assert flow_composition_law(z3_rotation())


def test_check_diagram_reports_counterexample_on_corrupted_flow():
    f = z3_rotation()
    bad = dict(table(f.phi))
    bad[("1", "a")] = "c"
    from catdyn.dynamics import PreFlow

    report = flow_composition_law(PreFlow(f.time, f.omega, morphism(f.phi.dom, f.omega, bad)))
    assert not report and report.counterexample is not None
    (s, t), x = report.counterexample
    assert {s, t, x} & {"1", "a"}


def test_check_diagram_rejects_mismatched_endpoints():
    with pytest.raises(TypeMismatch):
        check_diagram([rot(1)], [identity(finset("pq"))])


def test_diagram_path_validation():
    with pytest.raises(ValueError):
        DiagramPath([])
    with pytest.raises(TypeMismatch):
        DiagramPath([identity(finset("pq")), rot(1)])
    p = DiagramPath([rot(1), rot(1), rot(1)])
    assert p.composite() == identity(OMEGA)


def test_law_report_invariant():
    with pytest.raises(ValueError):
        LawReport("x", True, counterexample="a")
    with pytest.raises(ValueError):
        LawReport("x", False)
    r = check_equal("r", rot(1), rot(2))
    assert not r and r.counterexample == "a" and r.domain == OMEGA


def test_morphisms_equal_is_extensional():
    assert morphisms_equal(compose(rot(2), rot(1)), identity(OMEGA))
    assert not morphisms_equal(rot(1), rot(2))


def test_terminal_unit_flags():
    assert is_terminal_unit(FINSET) and is_terminal_unit("finset")
    assert not is_terminal_unit(GF2) and not is_terminal_unit("gf2")
    assert is_terminal_unit(FINSET) == is_terminal_unit(FINSET)


def test_product_of_singleton():
    assert carrier(product(finset("01"), finset("x"))) == [("0", "x"), ("1", "x")]
