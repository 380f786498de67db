"""Finite-dimensional GF(2) vector spaces: a closed symmetric monoidal
category whose unit is not terminal.

Tensor is the Kronecker product, with e_i⊗e_j at index i*dim(B) + j.  A
vector of the hom object [Y, Z] is a dim(Z)×dim(Y) matrix flattened
row-major, so currying is a pure reshape.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import (
    Backend,
    Base,
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


def _frozen(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.uint8) % 2
    a = a.astype(np.uint8)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def _dim(d) -> int:
    if isinstance(d, Base):
        return int(d.data)
    if isinstance(d, Unit):
        return 1
    if isinstance(d, Tensor):
        return _dim(d.left) * _dim(d.right)
    if isinstance(d, Hom):
        return _dim(d.source) * _dim(d.target)
    raise UnknownObject(f"not a GF(2) descriptor: {d!r}")


class GF2Backend(Backend):
    id = "gf2"
    terminal_unit = False

    def size(self, a: ObjectRef) -> int:
        """Dimension (not cardinality)."""
        self.check_object(a)
        return _dim(a.descriptor)

    dim = size

    def _mor(self, dom, cod, m) -> Morphism:
        m = _frozen(m)
        if m.shape != (self.dim(cod), self.dim(dom)):
            raise TypeMismatch(f"matrix shape {m.shape} does not fit {dom} -> {cod}")
        return Morphism(dom, cod, m)

    def identity(self, a):
        return self._mor(a, a, np.eye(self.dim(a), dtype=np.uint8))

    def compose(self, g, f):
        return self._mor(f.dom, g.cod, g.payload.astype(np.int64) @ f.payload.astype(np.int64))

    def tensor_mor(self, f, g):
        return self._mor(self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod),
                         np.kron(f.payload, g.payload))

    def swap(self, a, b):
        na, nb = self.dim(a), self.dim(b)
        m = np.zeros((na * nb, na * nb), dtype=np.uint8)
        for i in range(na):
            for j in range(nb):
                m[j * na + i, i * nb + j] = 1
        return self._mor(self.tensor_obj(a, b), self.tensor_obj(b, a), m)

    def lunitor(self, a):
        return self._mor(self.tensor_obj(self.unit(), a), a, np.eye(self.dim(a)))

    def lunitor_inv(self, a):
        return self._mor(a, self.tensor_obj(self.unit(), a), np.eye(self.dim(a)))

    def runitor(self, a):
        return self._mor(self.tensor_obj(a, self.unit()), a, np.eye(self.dim(a)))

    def runitor_inv(self, a):
        return self._mor(a, self.tensor_obj(a, self.unit()), np.eye(self.dim(a)))

    def associator(self, a, b, c):
        n = self.dim(a) * self.dim(b) * self.dim(c)
        return self._mor(self.tensor_obj(self.tensor_obj(a, b), c),
                         self.tensor_obj(a, self.tensor_obj(b, c)), np.eye(n))

    def associator_inv(self, a, b, c):
        n = self.dim(a) * self.dim(b) * self.dim(c)
        return self._mor(self.tensor_obj(a, self.tensor_obj(b, c)),
                         self.tensor_obj(self.tensor_obj(a, b), c), np.eye(n))

    def curry_left(self, f):
        y, x, z = f.dom.left(), f.dom.right(), f.cod
        dy, dx, dz = self.dim(y), self.dim(x), self.dim(z)
        # C[z*dy + y, x] = f[z, y*dx + x]
        return self._mor(x, self.hom_obj(y, z), f.payload.reshape(dz * dy, dx))

    def uncurry_left(self, g):
        y, z, x = g.cod.source(), g.cod.target(), g.dom
        dy, dx, dz = self.dim(y), self.dim(x), self.dim(z)
        return self._mor(self.tensor_obj(y, x), z, g.payload.reshape(dz, dy * dx))

    def eval_morphism(self, y, z):
        dy, dz = self.dim(y), self.dim(z)
        hom = dy * dz
        m = np.zeros((dz, dy * hom), dtype=np.uint8)
        for yi in range(dy):
            for zi in range(dz):
                m[zi, yi * hom + zi * dy + yi] = 1
        return self._mor(self.tensor_obj(y, self.hom_obj(y, z)), z, m)

    def point(self, a, element):
        """The vector ``element`` (a basis index or a bit sequence) as 1 → a."""
        d = self.dim(a)
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < d:
                raise TypeMismatch(f"basis index {element} outside dimension {d}")
            v = np.zeros((d, 1), dtype=np.uint8)
            v[element, 0] = 1
        else:
            v = np.asarray(element, dtype=np.uint8).reshape(d, 1)
        return self._mor(self.unit(), a, v)

    def apply(self, f, x):
        v = np.asarray(x, dtype=np.int64).reshape(-1)
        if v.shape != (self.dim(f.dom),):
            raise TypeMismatch(f"vector of length {v.size} does not fit {f.dom}")
        return tuple(int(b) for b in (f.payload.astype(np.int64) @ v) % 2)

    def first_difference(self, f, g):
        cols = np.flatnonzero((f.payload != g.payload).any(axis=0))
        if cols.size == 0:
            return None
        return f"e{int(cols[0])}"


GF2 = register_backend(GF2Backend())


def space(dim: int) -> ObjectRef:
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    return ObjectRef(GF2.id, Base(int(dim)))


def linear(dom: ObjectRef, cod: ObjectRef, matrix) -> Morphism:
    return GF2._mor(dom, cod, matrix)


def kron_tensor(f: Morphism, g: Morphism) -> Morphism:
    return GF2.tensor_mor(f, g)


def hom_object(y: ObjectRef, z: ObjectRef) -> ObjectRef:
    return GF2.hom_obj(y, z)


def group_algebra_monoid(m) -> tuple[ObjectRef, Morphism, Morphism]:
    """The monoid algebra GF(2)[m] as a monoid object (T, add, start)."""
    time = group_algebra_time_object(m)
    return time.obj, time.add, time.start


@lru_cache(maxsize=None)
def group_algebra_time_object(m) -> TimeObject:
    n = len(m.elements)
    idx = {e: i for i, e in enumerate(m.elements)}
    t = space(n)
    add = np.zeros((n, n * n), dtype=np.uint8)
    for s in m.elements:
        for u in m.elements:
            add[idx[m.add(s, u)], idx[s] * n + idx[u]] = 1
    start = np.zeros((n, 1), dtype=np.uint8)
    start[idx[m.unit], 0] = 1
    return TimeObject(m, t, linear(GF2.tensor_obj(t, t), t, add), linear(GF2.unit(), t, start))
