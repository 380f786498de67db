"""Cartesian closed backend of finite sets, and finite monoids as time objects.

Carriers are ordered.  Elements are encoded as follows:

* base object: its labels;
* unit: the empty tuple ``()``;
* tensor: a pair ``(a, b)``;
* hom object [Y, Z]: the tabulation ``(f(y0), f(y1), ...)`` in Y's order.

Exponential carriers are enumerated lexicographically (first domain element
most significant), so element indices are mixed-radix numbers and no carrier
ever needs to be materialized to be indexed.  Morphism payloads are read-only
integer arrays of codomain indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .core import (
    Backend,
    Base,
    CategoryError,
    Hom,
    Morphism,
    ObjectRef,
    Tensor,
    TimeObject,
    TypeMismatch,
    Unit,
    UnknownObject,
    register_backend,
)

_MAX_INDEX = 2**62
# largest table the backend will materialize (int64 entries, 512 MiB)
MAX_TABLE = 2**26


class CarrierTooLarge(CategoryError):
    pass


def _check_table(n: int, what) -> int:
    if n > MAX_TABLE:
        raise CarrierTooLarge(f"{what} would need a table of {n} entries (limit {MAX_TABLE})")
    return n


def _arange(n: int, what) -> np.ndarray:
    return np.arange(_check_table(n, what))


def _frozen(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=np.int64)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def _size(d) -> int:
    if isinstance(d, Base):
        return len(d.data)
    if isinstance(d, Unit):
        return 1
    if isinstance(d, Tensor):
        return _size(d.left) * _size(d.right)
    if isinstance(d, Hom):
        return _size(d.target) ** _size(d.source)
    raise UnknownObject(f"not a finite-set descriptor: {d!r}")


@lru_cache(maxsize=None)
def _base_index(labels: tuple) -> dict:
    return {x: i for i, x in enumerate(labels)}


def _index_of(d, x) -> int:
    if isinstance(d, Base):
        try:
            return _base_index(d.data)[x]
        except (KeyError, TypeError):
            raise KeyError(f"{x!r} is not an element of {d}") from None
    if isinstance(d, Unit):
        if x != ():
            raise KeyError(f"{x!r} is not the element of the unit")
        return 0
    if isinstance(d, Tensor):
        if not (isinstance(x, tuple) and len(x) == 2):
            raise KeyError(f"{x!r} is not a pair in {d}")
        return _index_of(d.left, x[0]) * _size(d.right) + _index_of(d.right, x[1])
    if isinstance(d, Hom):
        n = _size(d.source)
        if not (isinstance(x, tuple) and len(x) == n):
            raise KeyError(f"{x!r} is not a tabulation in {d}")
        base, i = _size(d.target), 0
        for v in x:
            i = i * base + _index_of(d.target, v)
        return i
    raise UnknownObject(f"not a finite-set descriptor: {d!r}")


@lru_cache(maxsize=1 << 16)
def _element_at(d, i: int):
    if isinstance(d, Base):
        return d.data[i]
    if isinstance(d, Unit):
        return ()
    if isinstance(d, Tensor):
        r = _size(d.right)
        return (_element_at(d.left, i // r), _element_at(d.right, i % r))
    if isinstance(d, Hom):
        n, base = _size(d.source), _size(d.target)
        digits = []
        for _ in range(n):
            i, rem = divmod(i, base)
            digits.append(rem)
        return tuple(_element_at(d.target, k) for k in reversed(digits))
    raise UnknownObject(f"not a finite-set descriptor: {d!r}")


class FinSetBackend(Backend):
    id = "finset"
    terminal_unit = True

    # objects and elements
    def size(self, a: ObjectRef) -> int:
        self.check_object(a)
        return _size(a.descriptor)

    def index_of(self, a: ObjectRef, x) -> int:
        return _index_of(a.descriptor, x)

    def element_at(self, a: ObjectRef, i: int):
        return _element_at(a.descriptor, int(i))

    def carrier(self, a: ObjectRef) -> list:
        return [_element_at(a.descriptor, i) for i in range(self.size(a))]

    def _mor(self, dom: ObjectRef, cod: ObjectRef, payload) -> Morphism:
        return Morphism(dom, cod, _frozen(payload))

    # primitives
    def identity(self, a: ObjectRef) -> Morphism:
        return self._mor(a, a, _arange(self.size(a), a))

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        return self._mor(f.dom, g.cod, g.payload[f.payload])

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        nd = self.size(g.cod)
        _check_table(f.payload.size * g.payload.size, "tensor of morphisms")
        payload = np.add.outer(f.payload * nd, g.payload).ravel()
        return self._mor(self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod), payload)

    def swap(self, a: ObjectRef, b: ObjectRef) -> Morphism:
        na, nb = self.size(a), self.size(b)
        _check_table(na * nb, self.tensor_obj(a, b))
        payload = np.add.outer(np.arange(na), np.arange(nb) * na).ravel()
        return self._mor(self.tensor_obj(a, b), self.tensor_obj(b, a), payload)

    def lunitor(self, a: ObjectRef) -> Morphism:
        return self._mor(self.tensor_obj(self.unit(), a), a, _arange(self.size(a), a))

    def lunitor_inv(self, a: ObjectRef) -> Morphism:
        return self._mor(a, self.tensor_obj(self.unit(), a), _arange(self.size(a), a))

    def runitor(self, a: ObjectRef) -> Morphism:
        return self._mor(self.tensor_obj(a, self.unit()), a, _arange(self.size(a), a))

    def runitor_inv(self, a: ObjectRef) -> Morphism:
        return self._mor(a, self.tensor_obj(a, self.unit()), _arange(self.size(a), a))

    def associator(self, a, b, c) -> Morphism:
        # mixed-radix indices of ((x,y),z) and (x,(y,z)) coincide
        n = self.size(a) * self.size(b) * self.size(c)
        src = self.tensor_obj(self.tensor_obj(a, b), c)
        dst = self.tensor_obj(a, self.tensor_obj(b, c))
        return self._mor(src, dst, _arange(n, src))

    def associator_inv(self, a, b, c) -> Morphism:
        n = self.size(a) * self.size(b) * self.size(c)
        src = self.tensor_obj(a, self.tensor_obj(b, c))
        dst = self.tensor_obj(self.tensor_obj(a, b), c)
        return self._mor(src, dst, _arange(n, src))

    def _hom_size(self, y: ObjectRef, z: ObjectRef) -> int:
        n = self.size(z) ** self.size(y)
        if n >= _MAX_INDEX:
            raise CategoryError(f"[{y},{z}] has {n} elements; too large to index")
        return n

    def _digit_weights(self, y: ObjectRef, z: ObjectRef) -> np.ndarray:
        ny, nz = self.size(y), self.size(z)
        return np.array([nz ** (ny - 1 - k) for k in range(ny)], dtype=np.int64)

    def curry_left(self, f: Morphism) -> Morphism:
        y, x, z = f.dom.left(), f.dom.right(), f.cod
        self._hom_size(y, z)
        ny, nx = self.size(y), self.size(x)
        table = f.payload.reshape(ny, nx)
        payload = self._digit_weights(y, z) @ table if ny else np.zeros(nx, dtype=np.int64)
        return self._mor(x, self.hom_obj(y, z), payload)

    def uncurry_left(self, g: Morphism) -> Morphism:
        y, z, x = g.cod.source(), g.cod.target(), g.dom
        ny, nx, nz = self.size(y), self.size(x), self.size(z)
        if ny * nx == 0:
            payload = np.zeros(0, dtype=np.int64)
        else:
            w = self._digit_weights(y, z)
            payload = (g.payload[None, :] // w[:, None]) % nz
        return self._mor(self.tensor_obj(y, x), z, np.asarray(payload).ravel())

    def eval_morphism(self, y: ObjectRef, z: ObjectRef) -> Morphism:
        h = self._hom_size(y, z)
        ny, nz = self.size(y), self.size(z)
        dom = self.tensor_obj(y, self.hom_obj(y, z))
        if ny * h == 0:
            return self._mor(dom, z, np.zeros(0, dtype=np.int64))
        _check_table(ny * h, dom)
        w = self._digit_weights(y, z)
        payload = (np.arange(h)[None, :] // w[:, None]) % nz
        return self._mor(dom, z, payload.ravel())

    def terminal(self, a: ObjectRef) -> Morphism:
        return self._mor(a, self.unit(), np.zeros(_check_table(self.size(a), a), dtype=np.int64))

    def point(self, a: ObjectRef, element) -> Morphism:
        return self._mor(self.unit(), a, [self.index_of(a, element)])

    def apply(self, f: Morphism, x):
        return self.element_at(f.cod, f.payload[self.index_of(f.dom, x)])

    def first_difference(self, f: Morphism, g: Morphism):
        diff = np.flatnonzero(f.payload != g.payload)
        if diff.size == 0:
            return None
        return self.element_at(f.dom, diff[0])


FINSET = register_backend(FinSetBackend())


# --------------------------------------------------------------------------
# user-facing helpers


def finset(labels: Iterable[Hashable]) -> ObjectRef:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"labels must be distinct: {labels}")
    return ObjectRef(FINSET.id, Base(labels))


def unit() -> ObjectRef:
    return FINSET.unit()


def carrier(a: ObjectRef) -> list:
    return FINSET.carrier(a)


def size(a: ObjectRef) -> int:
    return FINSET.size(a)


def product(a: ObjectRef, b: ObjectRef) -> ObjectRef:
    return FINSET.tensor_obj(a, b)


def exponential(y: ObjectRef, z: ObjectRef) -> ObjectRef:
    return FINSET.hom_obj(y, z)


def morphism(dom: ObjectRef, cod: ObjectRef, fn: Callable | Mapping | Sequence) -> Morphism:
    """Tabulate a function, mapping, or image sequence (in dom order)."""
    xs = FINSET.carrier(dom)
    if callable(fn):
        images = [fn(x) for x in xs]
    elif isinstance(fn, Mapping):
        missing = [x for x in xs if x not in fn]
        if missing:
            raise TypeMismatch(f"table is not total on {dom}: missing {missing[:3]}")
        images = [fn[x] for x in xs]
    else:
        images = list(fn)
        if len(images) != len(xs):
            raise TypeMismatch(f"expected {len(xs)} images, got {len(images)}")
    try:
        payload = [FINSET.index_of(cod, v) for v in images]
    except KeyError as e:
        raise TypeMismatch(f"image outside codomain {cod}: {e}") from None
    return Morphism(dom, cod, _frozen(payload))


def table(f: Morphism) -> dict:
    return {x: FINSET.element_at(f.cod, i) for x, i in zip(FINSET.carrier(f.dom), f.payload)}


def element_of(pt: Morphism):
    """The element named by a global element 1 → A."""
    if pt.dom != FINSET.unit():
        raise TypeMismatch(f"{pt} is not a global element")
    return FINSET.element_at(pt.cod, pt.payload[0])


def all_morphisms(dom: ObjectRef, cod: ObjectRef) -> Iterator[Morphism]:
    """Every map dom → cod, in canonical (lexicographic) order."""
    n, m = size(dom), size(cod)
    for images in itertools.product(range(m), repeat=n):
        yield Morphism(dom, cod, _frozen(images))


# --------------------------------------------------------------------------
# finite monoids


class MonoidError(ValueError):
    pass


class AssociativityError(MonoidError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails at {triple}")


class UnitError(MonoidError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"unit law fails at {element!r}")


def _normalize_table(elements: tuple, add_table) -> tuple[tuple, ...]:
    if isinstance(add_table, Mapping):
        def lookup(s, t):
            if (s, t) in add_table:
                return add_table[(s, t)]
            return add_table[s][t]
    else:
        idx = {e: i for i, e in enumerate(elements)}

        def lookup(s, t):
            return add_table[idx[s]][idx[t]]
    rows = []
    for s in elements:
        row = []
        for t in elements:
            try:
                v = lookup(s, t)
            except (KeyError, IndexError, TypeError):
                raise MonoidError(f"table has no entry for ({s!r}, {t!r})") from None
            if v not in elements:
                raise MonoidError(f"table entry ({s!r}, {t!r}) = {v!r} is not an element")
            row.append(v)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class FiniteMonoid:
    elements: tuple
    add_table: tuple[tuple, ...]
    unit: Hashable

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if len(set(els)) != len(els) or not els:
            raise MonoidError("elements must be nonempty and distinct")
        if self.unit not in els:
            raise MonoidError(f"unit {self.unit!r} is not an element")
        object.__setattr__(self, "add_table", _normalize_table(els, self.add_table))
        for t in els:
            if self.add(self.unit, t) != t or self.add(t, self.unit) != t:
                raise UnitError(t)
        for s, t, u in itertools.product(els, repeat=3):
            if self.add(self.add(s, t), u) != self.add(s, self.add(t, u)):
                raise AssociativityError((s, t, u))

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def add(self, s, t):
        return self.add_table[self._index[s]][self._index[t]]

    def __len__(self) -> int:
        return len(self.elements)

    def is_commutative(self) -> bool:
        return all(self.add(s, t) == self.add(t, s) for s in self.elements for t in self.elements)

    def as_time_object(self, backend: str = "finset") -> TimeObject:
        if backend == "finset":
            return _finset_time_object(self)
        from .finvect import group_algebra_time_object

        return group_algebra_time_object(self)


@lru_cache(maxsize=None)
def _finset_time_object(m: FiniteMonoid) -> TimeObject:
    t = finset(m.elements)
    add = morphism(product(t, t), t, lambda st: m.add(*st))
    start = morphism(unit(), t, [m.unit])
    return TimeObject(m, t, add, start)


def make_monoid(elements: Sequence, add_table, unit) -> FiniteMonoid:
    return FiniteMonoid(tuple(elements), add_table, unit)


def is_commutative(m: FiniteMonoid) -> bool:
    return m.is_commutative()


def cyclic_group(n: int) -> FiniteMonoid:
    els = tuple(str(i) for i in range(n))
    return FiniteMonoid(els, {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}, "0")


def max_monoid(n: int) -> FiniteMonoid:
    """({0..n-1}, max, 0): commutative and idempotent."""
    els = tuple(str(i) for i in range(n))
    return FiniteMonoid(els, {(str(a), str(b)): str(max(a, b)) for a in range(n) for b in range(n)}, "0")


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("0",), {("0", "0"): "0"}, "0")


def left_zero_monoid() -> FiniteMonoid:
    """{e, a, b} with e the identity and x·y = x otherwise; noncommutative."""
    els = ("e", "a", "b")
    tbl = {}
    for s in els:
        for t in els:
            tbl[(s, t)] = t if s == "e" else s
    return FiniteMonoid(els, tbl, "e")
