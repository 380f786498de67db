"""Dynamics derived from a time object or a flow: shift, transfer, Koopman,
flat adjoints, orbits, and time-indexed evaluation.

Each operator is built as the curry of an explicit composite, so the
constructions work unchanged in every backend.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Morphism,
    ObjectRef,
    TimeObject,
    TypeMismatch,
    associator,
    associator_inv,
    compose,
    compose_all,
    curry_left,
    eval_morphism,
    hom_map,
    hom_obj,
    identity,
    lunitor_inv,
    point,
    runitor,
    runitor_inv,
    swap,
    tensor_mor,
)
from .dynamics import Flow, PreFlow, Semiconjugacy, require_flow


@dataclass(frozen=True)
class PathSpace:
    time: TimeObject
    omega: ObjectRef

    @property
    def object(self) -> ObjectRef:
        return hom_obj(self.time.obj, self.omega)


def path_space(time: TimeObject, omega: ObjectRef) -> PathSpace:
    return PathSpace(time, omega)


def shift_flow(time: TimeObject, omega: ObjectRef) -> Flow:
    """σ: T⊗[T,Ω] → [T,Ω] with σ(t, p)(s) = p(add(s, t)).

    Curry over the first factor of
    T⊗(T⊗P) → (T⊗T)⊗P --add⊗P--> T⊗P --eval--> Ω.
    """
    t = time.obj
    p = hom_obj(t, omega)
    body = compose_all(
        eval_morphism(t, omega),
        tensor_mor(time.add, identity(p)),
        associator_inv(t, t, p),
    )
    return Flow(time, p, curry_left(body))


def _transfer_body(f: PreFlow, x: ObjectRef) -> Morphism:
    # X⊗(T⊗[X,Ω]) → (X⊗T)⊗[X,Ω] → (T⊗X)⊗[X,Ω] → T⊗(X⊗[X,Ω]) → T⊗Ω → Ω
    t, o = f.time.obj, f.omega
    px = hom_obj(x, o)
    return compose_all(
        f.phi,
        tensor_mor(identity(t), eval_morphism(x, o)),
        associator(t, x, px),
        tensor_mor(swap(x, t), identity(px)),
        associator_inv(x, t, px),
    )


def transfer_on_patterns(f: PreFlow, x: ObjectRef) -> Flow:
    """Pointwise action on X-patterns: (t, p) ↦ Φ(t, -)∘p."""
    f = require_flow(f)
    return Flow(f.time, hom_obj(x, f.omega), curry_left(_transfer_body(f, x)))


def transfer_flow(f: PreFlow) -> Flow:
    return transfer_on_patterns(f, f.time.obj)


def koopman_preflow(f: PreFlow, x: ObjectRef) -> PreFlow:
    """U(t, g) = g∘Φ(t, -) on [Ω,X]; only a pre-flow in general.

    Curry over the first factor of
    Ω⊗(T⊗[Ω,X]) → (Ω⊗T)⊗[Ω,X] → (T⊗Ω)⊗[Ω,X] --Φ⊗id--> Ω⊗[Ω,X] --eval--> X.
    """
    f = require_flow(f)
    t, o = f.time.obj, f.omega
    g = hom_obj(o, x)
    body = compose_all(
        eval_morphism(o, x),
        tensor_mor(f.phi, identity(g)),
        tensor_mor(swap(o, t), identity(g)),
        associator_inv(o, t, g),
    )
    return PreFlow(f.time, g, curry_left(body))


def flat_adjoint(f: PreFlow) -> Morphism:
    """Φ♭: Ω → [T,Ω], each state to its path."""
    return curry_left(f.phi)


def eval_at_zero(time: TimeObject, omega: ObjectRef) -> Morphism:
    """[T,Ω] ≅ 1⊗[T,Ω] --start⊗id--> T⊗[T,Ω] --eval--> Ω."""
    p = hom_obj(time.obj, omega)
    return compose_all(eval_morphism(time.obj, omega),
                       tensor_mor(time.start, identity(p)), lunitor_inv(p))


def eval_at(time: TimeObject, omega: ObjectRef, t) -> Morphism:
    """Evaluation at ``t``: shift the path by t, then evaluate at the start."""
    if t not in getattr(time.monoid, "elements", ()):
        raise TypeMismatch(f"{t!r} is not an element of the time monoid")
    p = hom_obj(time.obj, omega)
    t_pt = point(time.obj, _time_point(time, t))
    return compose_all(eval_at_zero(time, omega), shift_flow(time, omega).phi,
                       tensor_mor(t_pt, identity(p)), lunitor_inv(p))


def _time_point(time: TimeObject, t):
    # finite sets name t by its label; the group algebra by its basis index
    if time.backend_id == "finset":
        return t
    return time.monoid.elements.index(t)


def orbit(f: PreFlow, omega_state: Morphism) -> Morphism:
    """The path traced out by a state ω: 1 → Ω, as a point 1 → [T,Ω].

    Orbit_ω = Φ∘(T⊗ω)∘ρ⁻¹: T → Ω, then its flat adjoint.
    """
    if omega_state.cod != f.omega or omega_state.dom != f.omega.backend.unit():
        raise TypeMismatch(f"{omega_state} is not a state of {f.omega}")
    t = f.time.obj
    orbit_map = compose_all(f.phi, tensor_mor(identity(t), omega_state), runitor_inv(t))
    return curry_left(compose(orbit_map, runitor(t)))


def shift_on_morphism(time: TimeObject, f: Morphism) -> Semiconjugacy:
    """[T,f] as a map of shift flows σ_Ω → σ_Ω'."""
    return Semiconjugacy(shift_flow(time, f.dom), shift_flow(time, f.cod), hom_map(time.obj, f))
