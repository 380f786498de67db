"""Backend-neutral closed symmetric monoidal machinery.

Objects are canonical structural terms scoped to a backend; morphisms carry a
backend payload (an index table for finite sets, a matrix for GF(2)).  All
generic constructions here (internal composition, hom functor on morphisms,
diagram checks) are written against the small primitive surface every backend
implements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any, Hashable, Sequence


class CategoryError(Exception):
    """Base class for ill-typed categorical operations."""


class TypeMismatch(CategoryError):
    pass


class BackendMismatch(CategoryError):
    pass


class UnknownObject(CategoryError):
    pass


# --------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Base:
    data: Hashable

    def __str__(self) -> str:
        if isinstance(self.data, tuple):
            return "{" + ",".join(map(str, self.data)) + "}"
        return f"V{self.data}"


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Tensor:
    left: Any
    right: Any

    def __str__(self) -> str:
        return f"({self.left}⊗{self.right})"


@dataclass(frozen=True)
class Hom:
    source: Any
    target: Any

    def __str__(self) -> str:
        return f"[{self.source},{self.target}]"


Descriptor = Base | Unit | Tensor | Hom


@dataclass(frozen=True)
class ObjectRef:
    backend_id: str
    descriptor: Descriptor

    @property
    def backend(self) -> "Backend":
        return get_backend(self.backend_id)

    def __str__(self) -> str:
        return str(self.descriptor)

    @property
    def is_tensor(self) -> bool:
        return isinstance(self.descriptor, Tensor)

    @property
    def is_hom(self) -> bool:
        return isinstance(self.descriptor, Hom)

    def left(self) -> "ObjectRef":
        if not isinstance(self.descriptor, Tensor):
            raise TypeMismatch(f"{self} is not a tensor object")
        return ObjectRef(self.backend_id, self.descriptor.left)

    def right(self) -> "ObjectRef":
        if not isinstance(self.descriptor, Tensor):
            raise TypeMismatch(f"{self} is not a tensor object")
        return ObjectRef(self.backend_id, self.descriptor.right)

    def source(self) -> "ObjectRef":
        if not isinstance(self.descriptor, Hom):
            raise TypeMismatch(f"{self} is not a hom object")
        return ObjectRef(self.backend_id, self.descriptor.source)

    def target(self) -> "ObjectRef":
        if not isinstance(self.descriptor, Hom):
            raise TypeMismatch(f"{self} is not a hom object")
        return ObjectRef(self.backend_id, self.descriptor.target)


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: ObjectRef
    cod: ObjectRef
    payload: Any = field(repr=False)

    @property
    def backend(self) -> "Backend":
        return self.dom.backend

    def __call__(self, x):
        return self.backend.apply(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.backend.first_difference(self, other) is None
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Morphism({self.dom} -> {self.cod})"


# --------------------------------------------------------------------------
# backends


class Backend:
    """Primitive surface of a closed symmetric monoidal backend.

    Subclasses implement the payload-level primitives; object construction and
    typing checks live here.
    """

    id: str = "abstract"
    terminal_unit: bool = False

    # objects
    def unit(self) -> ObjectRef:
        return ObjectRef(self.id, Unit())

    def tensor_obj(self, a: ObjectRef, b: ObjectRef) -> ObjectRef:
        _same_backend(self, a, b)
        return ObjectRef(self.id, Tensor(a.descriptor, b.descriptor))

    def hom_obj(self, y: ObjectRef, z: ObjectRef) -> ObjectRef:
        _same_backend(self, y, z)
        return ObjectRef(self.id, Hom(y.descriptor, z.descriptor))

    def check_object(self, a: ObjectRef) -> None:
        if a.backend_id != self.id:
            raise BackendMismatch(f"{a} belongs to backend {a.backend_id!r}, not {self.id!r}")

    # payload primitives, implemented per backend
    def size(self, a: ObjectRef) -> int:
        raise NotImplementedError

    def identity(self, a: ObjectRef) -> Morphism:
        raise NotImplementedError

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        raise NotImplementedError

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def swap(self, a: ObjectRef, b: ObjectRef) -> Morphism:
        raise NotImplementedError

    def lunitor(self, a: ObjectRef) -> Morphism:
        raise NotImplementedError

    def lunitor_inv(self, a: ObjectRef) -> Morphism:
        raise NotImplementedError

    def runitor(self, a: ObjectRef) -> Morphism:
        raise NotImplementedError

    def runitor_inv(self, a: ObjectRef) -> Morphism:
        raise NotImplementedError

    def associator(self, a: ObjectRef, b: ObjectRef, c: ObjectRef) -> Morphism:
        raise NotImplementedError

    def associator_inv(self, a: ObjectRef, b: ObjectRef, c: ObjectRef) -> Morphism:
        raise NotImplementedError

    def curry_left(self, f: Morphism) -> Morphism:
        raise NotImplementedError

    def uncurry_left(self, g: Morphism) -> Morphism:
        raise NotImplementedError

    def eval_morphism(self, y: ObjectRef, z: ObjectRef) -> Morphism:
        raise NotImplementedError

    def terminal(self, a: ObjectRef) -> Morphism:
        raise CategoryError(f"backend {self.id!r} has no terminal unit")

    def point(self, a: ObjectRef, element) -> Morphism:
        raise NotImplementedError

    def apply(self, f: Morphism, x):
        raise NotImplementedError

    def first_difference(self, f: Morphism, g: Morphism):
        """Return an input where ``f`` and ``g`` disagree, or None."""
        raise NotImplementedError


_BACKENDS: dict[str, Backend] = {}


def register_backend(backend: Backend) -> Backend:
    _BACKENDS[backend.id] = backend
    return backend


def get_backend(backend_id: str) -> Backend:
    try:
        return _BACKENDS[backend_id]
    except KeyError:
        raise BackendMismatch(f"unknown backend {backend_id!r}") from None


def _same_backend(backend: Backend, *objs: ObjectRef) -> None:
    for o in objs:
        if o.backend_id != backend.id:
            raise BackendMismatch(f"{o} is not an object of backend {backend.id!r}")


def _backend_of(*things) -> Backend:
    if len(things) == 2:
        a, b = (t if isinstance(t, ObjectRef) else t.dom for t in things)
        if a.backend_id == b.backend_id:
            return get_backend(a.backend_id)
    ids = {t.backend_id if isinstance(t, ObjectRef) else t.dom.backend_id for t in things}
    if len(ids) != 1:
        raise BackendMismatch(f"mixed backends: {sorted(ids)}")
    return get_backend(ids.pop())


# --------------------------------------------------------------------------
# generic operations


@lru_cache(maxsize=4096)
def identity(a: ObjectRef) -> Morphism:
    return a.backend.identity(a)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g∘f."""
    b = _backend_of(g, f)
    if f.cod != g.dom:
        raise TypeMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    return b.compose(g, f)


def compose_all(*fs: Morphism) -> Morphism:
    """Compose right to left: compose_all(h, g, f) = h∘g∘f."""
    if not fs:
        raise ValueError("compose_all needs at least one morphism")
    return reduce(compose, fs)


def tensor_obj(a: ObjectRef, b: ObjectRef) -> ObjectRef:
    return _backend_of(a, b).tensor_obj(a, b)


def hom_obj(y: ObjectRef, z: ObjectRef) -> ObjectRef:
    return _backend_of(y, z).hom_obj(y, z)


def tensor_mor(f: Morphism, g: Morphism) -> Morphism:
    return _backend_of(f, g).tensor_mor(f, g)


@lru_cache(maxsize=4096)
def swap(a: ObjectRef, b: ObjectRef) -> Morphism:
    return _backend_of(a, b).swap(a, b)


@lru_cache(maxsize=4096)
def lunitor(a: ObjectRef) -> Morphism:
    return a.backend.lunitor(a)


@lru_cache(maxsize=4096)
def lunitor_inv(a: ObjectRef) -> Morphism:
    return a.backend.lunitor_inv(a)


@lru_cache(maxsize=4096)
def runitor(a: ObjectRef) -> Morphism:
    return a.backend.runitor(a)


@lru_cache(maxsize=4096)
def runitor_inv(a: ObjectRef) -> Morphism:
    return a.backend.runitor_inv(a)


@lru_cache(maxsize=4096)
def associator(a: ObjectRef, b: ObjectRef, c: ObjectRef) -> Morphism:
    """(a⊗b)⊗c → a⊗(b⊗c)."""
    return _backend_of(a, b, c).associator(a, b, c)


@lru_cache(maxsize=4096)
def associator_inv(a: ObjectRef, b: ObjectRef, c: ObjectRef) -> Morphism:
    return _backend_of(a, b, c).associator_inv(a, b, c)


def curry_left(f: Morphism) -> Morphism:
    """Hom(Y⊗X, Z) → Hom(X, [Y,Z])."""
    if not f.dom.is_tensor:
        raise TypeMismatch(f"curry_left needs a tensor domain, got {f.dom}")
    return f.backend.curry_left(f)


def uncurry_left(g: Morphism) -> Morphism:
    """Hom(X, [Y,Z]) → Hom(Y⊗X, Z)."""
    if not g.cod.is_hom:
        raise TypeMismatch(f"uncurry_left needs a hom codomain, got {g.cod}")
    return g.backend.uncurry_left(g)


@lru_cache(maxsize=4096)
def eval_morphism(y: ObjectRef, z: ObjectRef) -> Morphism:
    """eval: Y⊗[Y,Z] → Z."""
    return _backend_of(y, z).eval_morphism(y, z)


def terminal(a: ObjectRef) -> Morphism:
    """The unique map a → 1 (terminal-unit backends only)."""
    return a.backend.terminal(a)


def point(a: ObjectRef, element) -> Morphism:
    """The global element 1 → a naming ``element``."""
    return a.backend.point(a, element)


def is_terminal_unit(backend: Backend | str) -> bool:
    if isinstance(backend, str):
        backend = get_backend(backend)
    return backend.terminal_unit


def name_of(f: Morphism) -> Morphism:
    """The point 1 → [dom f, cod f] corresponding to f."""
    return curry_left(compose(f, runitor(f.dom)))


@lru_cache(maxsize=4096)
def internal_compose(a: ObjectRef, b: ObjectRef, c: ObjectRef) -> Morphism:
    """∘: [B,C]⊗[A,B] → [A,C], the curry of the double evaluation.

    A⊗([B,C]⊗[A,B]) → A⊗([A,B]⊗[B,C]) → (A⊗[A,B])⊗[B,C] → B⊗[B,C] → C
    """
    bc, ab = hom_obj(b, c), hom_obj(a, b)
    double_eval = compose_all(
        eval_morphism(b, c),
        tensor_mor(eval_morphism(a, b), identity(bc)),
        associator_inv(a, ab, bc),
        tensor_mor(identity(a), swap(bc, ab)),
    )
    return curry_left(double_eval)


def hom_map(y: ObjectRef, f: Morphism) -> Morphism:
    """[Y,f]: [Y,Ω] → [Y,Ω'] by post-composition."""
    return curry_left(compose(f, eval_morphism(y, f.dom)))


# --------------------------------------------------------------------------
# diagram checking


@dataclass(frozen=True)
class DiagramPath:
    steps: tuple[Morphism, ...]

    def __init__(self, steps: Sequence[Morphism]):
        steps = tuple(steps)
        if not steps:
            raise ValueError("a diagram path must be nonempty")
        for f, g in zip(steps, steps[1:]):
            if f.cod != g.dom:
                raise TypeMismatch(f"path break: {f.cod} then {g.dom}")
        object.__setattr__(self, "steps", steps)

    @property
    def dom(self) -> ObjectRef:
        return self.steps[0].dom

    @property
    def cod(self) -> ObjectRef:
        return self.steps[-1].cod

    def composite(self) -> Morphism:
        """Steps are listed in the order they are traversed."""
        return reduce(lambda acc, g: compose(g, acc), self.steps[1:], self.steps[0])


@dataclass(frozen=True)
class LawReport:
    law_name: str
    holds: bool
    counterexample: Any = None
    parts: tuple["LawReport", ...] = ()
    # object the counterexample lives in, kept for rendering labels
    domain: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("holds must be true exactly when there is no counterexample")

    def __bool__(self) -> bool:
        return self.holds

    def failures(self) -> list["LawReport"]:
        if not self.parts:
            return [] if self.holds else [self]
        return [r for p in self.parts for r in p.failures()]


def morphisms_equal(f: Morphism, g: Morphism) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch(f"not parallel: {f.dom}->{f.cod} vs {g.dom}->{g.cod}")
    return _backend_of(f, g).first_difference(f, g) is None


def check_equal(name: str, f: Morphism, g: Morphism) -> LawReport:
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch(f"{name}: sides not parallel: {f.dom}->{f.cod} vs {g.dom}->{g.cod}")
    witness = _backend_of(f, g).first_difference(f, g)
    return LawReport(name, witness is None, witness, domain=f.dom)


def check_diagram(p1: DiagramPath | Sequence[Morphism], p2: DiagramPath | Sequence[Morphism],
                  name: str = "diagram") -> LawReport:
    if not isinstance(p1, DiagramPath):
        p1 = DiagramPath(p1)
    if not isinstance(p2, DiagramPath):
        p2 = DiagramPath(p2)
    if p1.dom != p2.dom or p1.cod != p2.cod:
        raise TypeMismatch(f"{name}: endpoints differ ({p1.dom}->{p1.cod} vs {p2.dom}->{p2.cod})")
    return check_equal(name, p1.composite(), p2.composite())


def all_of(name: str, reports: Sequence[LawReport]) -> LawReport:
    reports = tuple(reports)
    bad = next((r for r in reports if not r.holds), None)
    if bad is None:
        return LawReport(name, True, None, reports)
    return LawReport(name, False, bad.counterexample, reports, domain=bad.domain)


# --------------------------------------------------------------------------
# time objects


@dataclass(frozen=True)
class TimeObject:
    """A monoid object (T, add: T⊗T→T, start: 1→T) realized in a backend.

    Equality is by the underlying finite monoid and backend, never by
    isomorphism.
    """

    monoid: Any
    obj: ObjectRef
    add: Morphism = field(compare=False, repr=False)
    start: Morphism = field(compare=False, repr=False)

    @property
    def backend_id(self) -> str:
        return self.obj.backend_id


def time_object_laws(time: TimeObject) -> LawReport:
    """Associativity square and both unit triangles of the monoid object."""
    t, add, start = time.obj, time.add, time.start
    idt = identity(t)
    assoc = check_diagram(
        [tensor_mor(add, idt), add],
        [associator(t, t, t), tensor_mor(idt, add), add],
        "monoid associativity",
    )
    left = check_equal("monoid left unit", compose(add, tensor_mor(start, idt)), lunitor(t))
    right = check_equal("monoid right unit", compose(add, tensor_mor(idt, start)), runitor(t))
    return all_of("monoid object", [assoc, left, right])
