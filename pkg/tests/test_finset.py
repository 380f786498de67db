import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catdyn.core import TypeMismatch, is_terminal_unit, terminal, time_object_laws
from catdyn.finset import (
    FINSET,
    AssociativityError,
    FiniteMonoid,
    MonoidError,
    UnitError,
    all_morphisms,
    carrier,
    cyclic_group,
    exponential,
    finset,
    is_commutative,
    left_zero_monoid,
    make_monoid,
    max_monoid,
    morphism,
    product,
    size,
    trivial_monoid,
)
from catdyn.sweep import monoids_of_order


def test_z3_is_a_commutative_monoid():
    z3 = make_monoid("012", {(str(a), str(b)): str((a + b) % 3) for a in range(3) for b in range(3)}, "0")
    assert is_commutative(z3)
    assert z3 == cyclic_group(3)


def test_max_monoid_is_commutative_and_idempotent():
    m = max_monoid(2)
    assert m.is_commutative()
    assert all(m.add(s, s) == s for s in m.elements)


def test_left_zero_monoid_is_noncommutative():
    m = left_zero_monoid()
    assert m.add("a", "b") == "a" and m.add("b", "a") == "b"
    assert not is_commutative(m)


def test_trivial_monoid_is_commutative():
    assert is_commutative(trivial_monoid())


def test_nested_mapping_table_form():
    m = make_monoid(["0", "1"], {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "0"}}, "0")
    assert m == cyclic_group(2)


def test_associativity_failure_reports_triple():
    tbl = {(s, t): str((int(s) + int(t)) % 3) for s in "012" for t in "012"}
    tbl[("1", "1")] = "0"
    with pytest.raises(AssociativityError) as e:
        make_monoid("012", tbl, "0")
    s, t, u = e.value.triple
    m = lambda x, y: tbl[(x, y)]  # noqa: E731
    assert m(m(s, t), u) != m(s, m(t, u))


def test_unit_failure_reports_element():
    with pytest.raises(UnitError) as e:
        make_monoid("01", {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "1", ("1", "1"): "1"}, "0")
    assert e.value.element == "1"


def test_partial_or_foreign_tables_rejected():
    with pytest.raises(MonoidError):
        make_monoid("01", {("0", "0"): "0"}, "0")
    with pytest.raises(MonoidError):
        make_monoid("0", {("0", "0"): "9"}, "0")
    with pytest.raises(MonoidError):
        make_monoid("0", {("0", "0"): "0"}, "x")


def _all_tables(els):
    n = len(els)
    for images in itertools.product(els, repeat=n * n):
        yield {(s, t): images[i * n + j] for i, s in enumerate(els) for j, t in enumerate(els)}


def _is_monoid_oracle(els, tbl, e):
    return (all(tbl[(e, t)] == t == tbl[(t, e)] for t in els)
            and all(tbl[(tbl[(s, t)], u)] == tbl[(s, tbl[(t, u)])]
                    for s, t, u in itertools.product(els, repeat=3)))


def test_validation_accepts_exactly_associative_unital_tables():
    els = ("0", "1", "2")
    for tbl in _all_tables(els):
        try:
            make_monoid(els, tbl, "0")
            ok = True
        except MonoidError:
            ok = False
        assert ok == _is_monoid_oracle(els, tbl, "0")


@given(st.sampled_from(monoids_of_order(3)), st.data())
def test_single_entry_mutation_fails_or_changes_monoid(m, data):
    s, t = data.draw(st.sampled_from(m.elements)), data.draw(st.sampled_from(m.elements))
    v = data.draw(st.sampled_from([x for x in m.elements if x != m.add(s, t)]))
    tbl = {(a, b): m.add(a, b) for a in m.elements for b in m.elements}
    tbl[(s, t)] = v
    try:
        m2 = make_monoid(m.elements, tbl, m.unit)
    except MonoidError:
        return
    assert m2 != m


def test_time_object_laws_hold_for_known_monoids():
    for m in (cyclic_group(3), max_monoid(3), left_zero_monoid(), trivial_monoid()):
        assert time_object_laws(m.as_time_object())


def test_monoid_counts_up_to_isomorphism():
    assert [len(monoids_of_order(n)) for n in (1, 2, 3)] == [1, 2, 7]


def test_exponential_and_product_sizes():
    t, omega = finset("012"), finset("abc")
    assert size(exponential(t, omega)) == 27
    assert carrier(exponential(finset(""), omega)) == [()]
    assert size(product(finset("01"), finset("x"))) == 2
    for n, m in itertools.product(range(4), repeat=2):
        assert size(exponential(finset("pqr"[:n]), finset("xyz"[:m]))) == m ** n


def test_exponential_order_is_lexicographic():
    paths = carrier(exponential(finset("01"), finset("ab")))
    assert paths == [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    assert paths == sorted(paths)


def test_unit_is_terminal():
    assert is_terminal_unit(FINSET)
    for n in range(4):
        a = finset("pqr"[:n])
        assert len(list(all_morphisms(a, FINSET.unit()))) == 1
        assert list(all_morphisms(a, FINSET.unit()))[0] == terminal(a)


def test_morphism_rejects_bad_tables():
    with pytest.raises(TypeMismatch):
        morphism(finset("ab"), finset("x"), {"a": "x"})
    with pytest.raises(TypeMismatch):
        morphism(finset("ab"), finset("x"), {"a": "x", "b": "y"})
    with pytest.raises(ValueError):
        finset("aa")


def test_payloads_are_read_only():
    f = morphism(finset("ab"), finset("xy"), ["x", "y"])
    with pytest.raises(ValueError):
        f.payload[0] = 1


def test_finite_monoid_from_sequence_table():
    m = FiniteMonoid(("0", "1"), (("0", "1"), ("1", "0")), "0")
    assert m == cyclic_group(2)
