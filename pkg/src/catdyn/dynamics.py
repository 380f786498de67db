"""Flows, parametric endomorphism families, and semiconjugacies.

Conventions fixed here and relied on everywhere else:

* a flow Φ: T⊗Ω→Ω is a left action, Φ(add(s,t), x) = Φ(s, Φ(t, x));
* the sharp adjoint is Φ# = curry_left(Φ∘swap(Ω,T)): T → [Ω,Ω];
* the flat adjoint is Φ♭ = curry_left(Φ): Ω → [T,Ω].

Constructors never validate.  Validation is explicit and returns a
LawReport; operations that need a genuine action call :func:`require_flow`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .core import (
    LawReport,
    Morphism,
    ObjectRef,
    TimeObject,
    TypeMismatch,
    all_of,
    associator,
    check_equal,
    compose,
    compose_all,
    curry_left,
    eval_morphism,
    hom_obj,
    identity,
    internal_compose,
    lunitor,
    lunitor_inv,
    name_of,
    runitor_inv,
    swap,
    tensor_mor,
    tensor_obj,
)


class InvalidFlow(ValueError):
    def __init__(self, report: LawReport):
        self.report = report
        bad = report.failures()[0]
        super().__init__(f"{bad.law_name} fails at {bad.counterexample!r}")


class NotASemiconjugacy(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PreFlow:
    """A morphism T⊗Ω → Ω with no laws imposed."""

    time: TimeObject
    omega: ObjectRef
    phi: Morphism

    def __eq__(self, other) -> bool:
        if not isinstance(other, PreFlow):
            return NotImplemented
        return (self.time, self.omega) == (other.time, other.omega) and self.phi == other.phi

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def phi_sharp(self) -> Morphism:
        """Φ# = curry_left(Φ∘swap(Ω,T)), computed once per pre-flow."""
        return sharp(self.phi, self.omega)

    def __post_init__(self):
        expected = tensor_obj(self.time.obj, self.omega)
        if self.phi.dom != expected or self.phi.cod != self.omega:
            raise TypeMismatch(f"pre-flow must be {expected} -> {self.omega}, got "
                               f"{self.phi.dom} -> {self.phi.cod}")


class Flow(PreFlow):
    """A pre-flow intended as a left action; check with :func:`validate_flow`."""


@dataclass(frozen=True)
class ParametricDynamics:
    time: TimeObject
    omega: ObjectRef
    phi_sharp: Morphism

    def __post_init__(self):
        end = hom_obj(self.omega, self.omega)
        if self.phi_sharp.dom != self.time.obj or self.phi_sharp.cod != end:
            raise TypeMismatch(f"parametric form must be {self.time.obj} -> {end}")


@dataclass(frozen=True)
class Semiconjugacy:
    source: PreFlow
    target: PreFlow
    h: Morphism


# --------------------------------------------------------------------------
# validation


@lru_cache(maxsize=4096)
def _scaffold(time: TimeObject, omega: ObjectRef):
    t = time.obj
    id_o = identity(omega)
    return (
        tensor_mor(time.start, id_o),
        lunitor(omega),
        tensor_mor(time.add, id_o),
        associator(t, t, omega),
        identity(t),
    )


def flow_unit_law(p: PreFlow) -> LawReport:
    start_o, lam, _, _, _ = _scaffold(p.time, p.omega)
    return check_equal("flow unit law", compose(p.phi, start_o), lam)


def flow_composition_law(p: PreFlow) -> LawReport:
    """Φ∘(add⊗Ω) = Φ∘(T⊗Φ)∘α on (T⊗T)⊗Ω; witnesses are ((s, t), x)."""
    _, _, add_o, assoc, id_t = _scaffold(p.time, p.omega)
    lhs = compose(p.phi, add_o)
    rhs = compose_all(p.phi, tensor_mor(id_t, p.phi), assoc)
    return check_equal("flow composition law", lhs, rhs)


def validate_flow(p: PreFlow) -> LawReport:
    return all_of("left action", [flow_unit_law(p), flow_composition_law(p)])


def require_flow(p: PreFlow) -> Flow:
    report = validate_flow(p)
    if not report:
        raise InvalidFlow(report)
    return p if isinstance(p, Flow) else Flow(p.time, p.omega, p.phi)


def start_of(omega: ObjectRef) -> Morphism:
    """start_Ω: 1 → [Ω,Ω], the name of the identity."""
    return name_of(identity(omega))


def validate_parametric(p: ParametricDynamics) -> LawReport:
    unit = check_equal("parametric unit triangle", compose(p.phi_sharp, p.time.start),
                       start_of(p.omega))
    o = p.omega
    square = check_equal(
        "parametric composition square",
        compose(p.phi_sharp, p.time.add),
        compose(internal_compose(o, o, o), tensor_mor(p.phi_sharp, p.phi_sharp)),
    )
    return all_of("parametric left action", [unit, square])


# --------------------------------------------------------------------------
# the representation equivalences


def sharp(phi: Morphism, omega: ObjectRef) -> Morphism:
    t = phi.dom.left()
    return curry_left(compose(phi, swap(omega, t)))


def flow_to_parametric(f: PreFlow) -> ParametricDynamics:
    f = require_flow(f)
    return ParametricDynamics(f.time, f.omega, f.phi_sharp)


def parametric_to_flow(p: ParametricDynamics) -> Flow:
    """Φ = eval_{Ω,Ω}∘(Ω⊗Φ#)∘swap(T,Ω)."""
    report = validate_parametric(p)
    if not report:
        raise InvalidFlow(report)
    o, t = p.omega, p.time.obj
    phi = compose_all(eval_morphism(o, o), tensor_mor(identity(o), p.phi_sharp), swap(t, o))
    return Flow(p.time, o, phi)


# --------------------------------------------------------------------------
# semiconjugacies


def _check_same_time(src: PreFlow, tgt: PreFlow) -> None:
    if src.time != tgt.time:
        raise TypeMismatch("semiconjugacies are only defined between flows over the same time object")


def is_semiconjugacy(h: Morphism, src: PreFlow, tgt: PreFlow) -> LawReport:
    """h∘Ψ = Ψ'∘(T⊗h)."""
    _check_same_time(src, tgt)
    if h.dom != src.omega or h.cod != tgt.omega:
        raise TypeMismatch(f"h must be {src.omega} -> {tgt.omega}")
    return check_equal("semiconjugacy square", compose(h, src.phi),
                       compose(tgt.phi, tensor_mor(identity(src.time.obj), h)))


def make_semiconjugacy(h: Morphism, src: PreFlow, tgt: PreFlow) -> Semiconjugacy:
    report = is_semiconjugacy(h, src, tgt)
    if not report:
        raise NotASemiconjugacy(f"square fails at {report.counterexample!r}")
    return Semiconjugacy(src, tgt, h)


def sharp_of_morphism(h: Morphism) -> Morphism:
    """h#: 1 → [Ω,Ω']."""
    return name_of(h)


def enriched_morphism_check(h_sharp: Morphism, src: PreFlow, tgt: PreFlow) -> LawReport:
    """The enriched naturality hexagon, as two maps T → [Ω,Ω'].

    top:    T ≅ T⊗1 --Φ'#⊗h#--> [Ω',Ω']⊗[Ω,Ω'] --∘--> [Ω,Ω']
    bottom: T ≅ 1⊗T --h#⊗Φ#--> [Ω,Ω']⊗[Ω,Ω] --∘--> [Ω,Ω']
    """
    _check_same_time(src, tgt)
    o, o2, t = src.omega, tgt.omega, src.time.obj
    if h_sharp.cod != hom_obj(o, o2) or h_sharp.dom != t.backend.unit():
        raise TypeMismatch(f"h# must be 1 -> {hom_obj(o, o2)}")
    top = compose_all(internal_compose(o, o2, o2),
                      tensor_mor(tgt.phi_sharp, h_sharp), runitor_inv(t))
    bottom = compose_all(internal_compose(o, o, o2),
                         tensor_mor(h_sharp, src.phi_sharp), lunitor_inv(t))
    return check_equal("enriched naturality hexagon", top, bottom)


def compose_semiconjugacy(h2: Semiconjugacy, h1: Semiconjugacy) -> Semiconjugacy:
    if h1.target != h2.source:
        raise TypeMismatch("middle flows of the composite do not match")
    return Semiconjugacy(h1.source, h2.target, compose(h2.h, h1.h))


def sharp_composite(h2: Morphism, h1: Morphism) -> Morphism:
    """(h2∘h1)# assembled as ∘∘(h2#⊗h1#)∘λ⁻¹ on the unit."""
    one = h1.dom.backend.unit()
    return compose_all(internal_compose(h1.dom, h1.cod, h2.cod),
                       tensor_mor(sharp_of_morphism(h2), sharp_of_morphism(h1)),
                       lunitor_inv(one))
