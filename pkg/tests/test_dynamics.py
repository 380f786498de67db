import pytest
from hypothesis import given
from hypothesis import strategies as st

from catdyn.core import TypeMismatch, compose, identity, name_of, terminal
from catdyn.dynamics import (
    Flow,
    InvalidFlow,
    NotASemiconjugacy,
    ParametricDynamics,
    PreFlow,
    compose_semiconjugacy,
    enriched_morphism_check,
    flow_to_parametric,
    is_semiconjugacy,
    make_semiconjugacy,
    parametric_to_flow,
    require_flow,
    sharp_composite,
    sharp_of_morphism,
    start_of,
    validate_flow,
    validate_parametric,
)
from catdyn.examples import ABC, identity_flow, rescaled_rotation, rot, z3_rotation
from catdyn.finset import (
    FINSET,
    cyclic_group,
    finset,
    max_monoid,
    morphism,
    product,
    table,
    trivial_monoid,
    unit,
)
from catdyn.sweep import action_table, all_flows, all_monoids

OMEGA = finset(ABC)


def _state_flow(time, omega):
    """The unique flow on a one-point set."""
    return Flow(time, omega, terminal(product(time.obj, omega)))


def test_rotation_flow_is_valid():
    r = validate_flow(z3_rotation())
    assert r and [p.law_name for p in r.parts] == ["flow unit law", "flow composition law"]


@pytest.mark.parametrize("m", [cyclic_group(3), max_monoid(3), trivial_monoid()])
def test_identity_flow_is_valid(m):
    assert validate_flow(identity_flow(m, OMEGA))


def test_rescaled_rotation_fails_with_a_real_counterexample():
    p = rescaled_rotation()
    r = validate_flow(p)
    assert not r
    ((s, t), x) = r.counterexample
    m = p.time.monoid
    lhs = p.phi((m.add(s, t), x))
    rhs = p.phi((s, p.phi((t, x))))
    assert lhs != rhs
    with pytest.raises(InvalidFlow):
        require_flow(p)


def test_preflow_typing_is_enforced():
    f = z3_rotation()
    with pytest.raises(TypeMismatch):
        PreFlow(f.time, OMEGA, rot(1))


def test_sharp_of_rotation():
    p = flow_to_parametric(z3_rotation())
    assert p.phi_sharp("1") == tuple(table(rot(1))[x] for x in ABC)
    assert p.phi_sharp("0") == ABC


def test_sharp_of_identity_and_trivial():
    p = flow_to_parametric(identity_flow(cyclic_group(3), OMEGA))
    assert all(p.phi_sharp(t) == ABC for t in "012")
    q = flow_to_parametric(identity_flow(trivial_monoid(), OMEGA))
    assert q.phi_sharp("0") == ABC


def test_parametric_roundtrip_on_rotation():
    f = z3_rotation()
    back = parametric_to_flow(flow_to_parametric(f))
    assert back == f and len(table(back.phi)) == 9


def test_constant_identity_family_gives_identity_flow():
    time = cyclic_group(3).as_time_object()
    const = compose(start_of(OMEGA), terminal(time.obj))
    p = ParametricDynamics(time, OMEGA, const)
    assert validate_parametric(p)
    assert parametric_to_flow(p) == identity_flow(cyclic_group(3), OMEGA)


def test_invalid_parametric_family_is_rejected():
    time = cyclic_group(3).as_time_object()
    bad = ParametricDynamics(time, OMEGA, compose(name_of(rot(1)), terminal(time.obj)))
    assert not validate_parametric(bad)
    with pytest.raises(InvalidFlow):
        parametric_to_flow(bad)


def test_semiconjugacy_examples():
    f = z3_rotation()
    assert is_semiconjugacy(identity(OMEGA), f, f)
    point = _state_flow(f.time, unit())
    assert is_semiconjugacy(terminal(OMEGA), f, point)
    assert is_semiconjugacy(rot(1), f, f)
    with pytest.raises(NotASemiconjugacy):
        make_semiconjugacy(morphism(OMEGA, OMEGA, {"a": "a", "b": "a", "c": "a"}), f, f)


def test_semiconjugacy_requires_same_time():
    with pytest.raises(TypeMismatch):
        is_semiconjugacy(identity(OMEGA), z3_rotation(), identity_flow(max_monoid(3), OMEGA))


def test_enriched_check_agrees_on_examples():
    f = z3_rotation()
    for h in (identity(OMEGA), rot(1), rot(2)):
        hs = sharp_of_morphism(h)
        assert FINSET.element_at(hs.cod, hs.payload[0]) == tuple(table(h)[x] for x in ABC)
        assert enriched_morphism_check(hs, f, f)
        assert is_semiconjugacy(h, f, f)


def test_corrupted_h_fails_both_checks_at_the_same_time():
    f = z3_rotation()
    h = morphism(OMEGA, OMEGA, {"a": "b", "b": "c", "c": "c"})
    square = is_semiconjugacy(h, f, f)
    hexagon = enriched_morphism_check(sharp_of_morphism(h), f, f)
    assert not square and not hexagon
    assert square.counterexample[0] == hexagon.counterexample


def test_compose_semiconjugacy():
    f = z3_rotation()
    idh = make_semiconjugacy(identity(OMEGA), f, f)
    r1 = make_semiconjugacy(rot(1), f, f)
    assert compose_semiconjugacy(idh, r1).h == r1.h
    r2 = compose_semiconjugacy(r1, r1)
    assert r2.h == rot(2) and is_semiconjugacy(r2.h, f, f)
    assert sharp_composite(rot(1), rot(1)) == sharp_of_morphism(rot(2))
    g = identity_flow(cyclic_group(3), OMEGA)
    other = make_semiconjugacy(identity(OMEGA), g, g)
    with pytest.raises(TypeMismatch):
        compose_semiconjugacy(other, r1)


SMALL_FLOWS = [f for m in all_monoids(2) for k in (1, 2) for f in all_flows(m.as_time_object(), k)]


@given(st.sampled_from(SMALL_FLOWS))
def test_roundtrip_is_identity_on_small_flows(f):
    p = flow_to_parametric(f)
    assert validate_parametric(p)
    assert parametric_to_flow(p) == f
    assert flow_to_parametric(parametric_to_flow(p)).phi_sharp == p.phi_sharp


@given(st.sampled_from(SMALL_FLOWS), st.data())
def test_square_and_hexagon_agree(f, data):
    same_time = [g for g in SMALL_FLOWS if g.time == f.time]
    g = data.draw(st.sampled_from(same_time))
    images = [data.draw(st.sampled_from(FINSET.carrier(g.omega))) for _ in FINSET.carrier(f.omega)]
    h = morphism(f.omega, g.omega, images)
    assert bool(is_semiconjugacy(h, f, g)) == bool(enriched_morphism_check(sharp_of_morphism(h), f, g))


@given(st.sampled_from(SMALL_FLOWS))
def test_counterexamples_distinguish_the_tables(f):
    # corrupt one entry; a failing report's witness must separate the two sides
    tbl = action_table(f).copy()
    tbl[-1, 0] = (tbl[-1, 0] + 1) % tbl.shape[1]
    p = PreFlow(f.time, f.omega, morphism(f.phi.dom, f.omega, [FINSET.element_at(f.omega, i)
                                                                 for i in tbl.reshape(-1)]))
    r = validate_flow(p)
    if r:
        return
    m = f.time.monoid
    bad = r.failures()[0]
    if bad.law_name == "flow unit law":
        _, x = bad.counterexample
        assert p.phi((m.unit, x)) != x
    else:
        (s, t), x = bad.counterexample
        assert p.phi((m.add(s, t), x)) != p.phi((s, p.phi((t, x))))
