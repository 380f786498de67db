"""States, stationary states, and enriched stationary states.

Everything here needs the monoidal unit to be terminal, which is a backend
capability flag rather than something discovered at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CategoryError,
    LawReport,
    Morphism,
    ObjectRef,
    TypeMismatch,
    check_equal,
    compose,
    compose_all,
    eval_morphism,
    hom_obj,
    identity,
    internal_compose,
    is_terminal_unit,
    lunitor_inv,
    runitor,
    runitor_inv,
    tensor_mor,
    terminal,
)
from .dynamics import PreFlow


class NonTerminalUnit(CategoryError):
    pass


class TheoremViolation(AssertionError):
    pass


@dataclass(frozen=True)
class State:
    morphism: Morphism

    @property
    def element(self):
        from .finset import element_of

        return element_of(self.morphism)


@dataclass(frozen=True)
class EnrichedStationaryWitness:
    omega_star: Morphism  # 1 → [1,Ω]


def _require_terminal(o: ObjectRef) -> None:
    if not is_terminal_unit(o.backend):
        raise NonTerminalUnit(f"backend {o.backend_id!r} does not have a terminal unit")


def all_states(omega: ObjectRef) -> list[State]:
    _require_terminal(omega)
    b = omega.backend
    return [State(b.point(omega, x)) for x in b.carrier(omega)]


def all_witnesses(omega: ObjectRef) -> list[EnrichedStationaryWitness]:
    """Every candidate ω*: 1 → [1,Ω]."""
    _require_terminal(omega)
    b = omega.backend
    h = hom_obj(b.unit(), omega)
    return [EnrichedStationaryWitness(b.point(h, p)) for p in b.carrier(h)]


def is_stationary(f: PreFlow, omega: State) -> LawReport:
    """Φ∘(T⊗ω) = ω∘! as maps T⊗1 → Ω."""
    _require_terminal(f.omega)
    w = omega.morphism
    if w.cod != f.omega:
        raise TypeMismatch(f"{w} is not a state of {f.omega}")
    t = f.time.obj
    lhs = compose(f.phi, tensor_mor(identity(t), w))
    rhs = compose(w, terminal(lhs.dom))
    return check_equal("stationary square", lhs, rhs)


def _check_witness(f: PreFlow, w: EnrichedStationaryWitness) -> None:
    _require_terminal(f.omega)
    one = f.omega.backend.unit()
    if w.omega_star.dom != one or w.omega_star.cod != hom_obj(one, f.omega):
        raise TypeMismatch(f"ω* must be 1 -> {hom_obj(one, f.omega)}")


def _cone_top(f: PreFlow, w: EnrichedStationaryWitness) -> Morphism:
    # T ≅ T⊗1 --Φ#⊗ω*--> [Ω,Ω]⊗[1,Ω] --∘--> [1,Ω]
    t, o = f.time.obj, f.omega
    one = o.backend.unit()
    return compose_all(internal_compose(one, o, o),
                       tensor_mor(f.phi_sharp, w.omega_star), runitor_inv(t))


def cone_triangle(f: PreFlow, w: EnrichedStationaryWitness) -> LawReport:
    """∘∘(Φ#⊗ω*)∘ρ⁻¹ = ω*∘! as maps T → [1,Ω]."""
    _check_witness(f, w)
    t = f.time.obj
    return check_equal("enriched stationary triangle", _cone_top(f, w),
                       compose(w.omega_star, terminal(t)))


def cone_hexagon(f: PreFlow, w: EnrichedStationaryWitness) -> LawReport:
    """Same top path against T ≅ 1⊗T --ω*⊗!--> [1,Ω]⊗1 ≅ [1,Ω]."""
    _check_witness(f, w)
    t, o = f.time.obj, f.omega
    one = o.backend.unit()
    bottom = compose_all(runitor(hom_obj(one, o)),
                         tensor_mor(w.omega_star, terminal(t)), lunitor_inv(t))
    return check_equal("enriched stationary hexagon", _cone_top(f, w), bottom)


def is_enriched_stationary(f: PreFlow, w: EnrichedStationaryWitness) -> LawReport:
    tri, hexa = cone_triangle(f, w), cone_hexagon(f, w)
    if tri.holds != hexa.holds:
        raise TheoremViolation("triangle and hexagon forms of enriched stationarity disagree")
    return tri


def induced_state(w: EnrichedStationaryWitness) -> State:
    """ω = eval_{1,Ω}∘(1⊗ω*)∘λ⁻¹ on the unit."""
    o = w.omega_star.cod.target()
    one = o.backend.unit()
    return State(compose_all(eval_morphism(one, o),
                             tensor_mor(identity(one), w.omega_star), lunitor_inv(one)))


def stationary_states(f: PreFlow) -> list[State]:
    found = [s for s in all_states(f.omega) if is_stationary(f, s)]
    for w in all_witnesses(f.omega):
        if is_enriched_stationary(f, w):
            induced = induced_state(w).morphism
            if not any(s.morphism == induced for s in found):
                raise TheoremViolation("an enriched stationary state induced a non-stationary state")
    return found
