"""Equalizers of finite-set maps and the subshift of a flow.

The subshift E_Φ is the equalizer of the flat adjoints of the shift flow and
the transfer flow inside the path space [T,Ω]; its elements are exactly the
paths p with p(add(s,t)) = Φ(t, p(s)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Base,
    LawReport,
    Morphism,
    ObjectRef,
    TypeMismatch,
    all_of,
    check_equal,
    compose,
    hom_map,
    identity,
    tensor_mor,
)
from .derived import eval_at_zero, flat_adjoint, shift_flow, transfer_flow
from .dynamics import Flow, PreFlow, Semiconjugacy, is_semiconjugacy, require_flow
from .finset import FINSET, _frozen


class NotEqualizing(ValueError):
    pass


class NotApplicable(ValueError):
    pass


def _require_finset(*objs: ObjectRef) -> None:
    for o in objs:
        if o.backend_id != FINSET.id:
            raise TypeMismatch("equalizers are only provided in the finite-set backend")


@dataclass(frozen=True)
class Equalizer:
    """Subobject E ↪ X on which the pair (f, g) agrees, with q the inclusion."""

    object: ObjectRef
    inclusion: Morphism
    f: Morphism
    g: Morphism

    def factor(self, alpha: Morphism) -> Morphism:
        """The unique u with q∘u = alpha; raises if alpha does not equalize."""
        if alpha.cod != self.inclusion.cod:
            raise TypeMismatch(f"{alpha} does not land in {self.inclusion.cod}")
        witness = FINSET.first_difference(compose(self.f, alpha), compose(self.g, alpha))
        if witness is not None:
            raise NotEqualizing(f"f∘α and g∘α differ at {witness!r}")
        pos = {int(i): k for k, i in enumerate(self.inclusion.payload)}
        return Morphism(alpha.dom, self.object, _frozen([pos[int(i)] for i in alpha.payload]))


def equalizer(f: Morphism, g: Morphism) -> Equalizer:
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch("equalizer needs a parallel pair")
    _require_finset(f.dom)
    keep = np.flatnonzero(f.payload == g.payload)
    e = ObjectRef(FINSET.id, Base(tuple(FINSET.element_at(f.dom, i) for i in keep)))
    return Equalizer(e, Morphism(e, f.dom, _frozen(keep)), f, g)


def _intersect(F: PreFlow, G: PreFlow, eq: Equalizer, name: str) -> tuple[Flow, LawReport]:
    t = F.time.obj
    q = eq.inclusion
    tq = tensor_mor(identity(t), q)
    restricted = eq.factor(compose(F.phi, tq))
    squares = all_of(name, [
        check_equal(f"{name}: first square", compose(q, restricted), compose(F.phi, tq)),
        check_equal(f"{name}: second square", compose(q, restricted), compose(G.phi, tq)),
    ])
    return Flow(F.time, eq.object, restricted), squares


@dataclass(frozen=True)
class FlowEqualizer:
    equalizer: Equalizer
    flow: Flow
    squares: LawReport


def flow_equalizer(F: PreFlow, G: PreFlow) -> FlowEqualizer:
    """F∩G on the equalizer of F♭ and G♭."""
    if F.time != G.time or F.omega != G.omega:
        raise TypeMismatch("flow_equalizer needs flows over the same time and carrier")
    _require_finset(F.omega)
    eq = equalizer(flat_adjoint(F), flat_adjoint(G))
    flow, squares = _intersect(F, G, eq, "equalizer squares")
    return FlowEqualizer(eq, flow, squares)


@dataclass(frozen=True)
class SubshiftSystem:
    equalizer: Equalizer
    flow: Flow
    shift: Flow
    transfer: Flow
    squares: LawReport

    @property
    def inclusion(self) -> Morphism:
        return self.equalizer.inclusion

    @property
    def members(self) -> list:
        return FINSET.carrier(self.equalizer.object)


def subshift(f: PreFlow) -> SubshiftSystem:
    f = require_flow(f)
    _require_finset(f.omega)
    sigma = shift_flow(f.time, f.omega)
    tau = transfer_flow(f)
    eq = equalizer(flat_adjoint(sigma), flat_adjoint(tau))
    flow, squares = _intersect(sigma, tau, eq, "subshift squares")
    return SubshiftSystem(eq, flow, sigma, tau, squares)


def membership_scan(f: PreFlow) -> list:
    """Paths p with p(add(s,t)) = Φ(t, p(s)) for all s, t, by direct search."""
    m = f.time.monoid
    ts = list(m.elements)
    pos = {t: i for i, t in enumerate(ts)}
    out = []
    for p in FINSET.carrier(FINSET.hom_obj(f.time.obj, f.omega)):
        if all(p[pos[m.add(s, t)]] == f.phi((t, p[pos[s]])) for s in ts for t in ts):
            out.append(p)
    return out


@dataclass(frozen=True)
class SubshiftMap:
    morphism: Morphism
    squares: LawReport


def subshift_map(h: Semiconjugacy, source: SubshiftSystem | None = None,
                 target: SubshiftSystem | None = None) -> SubshiftMap:
    """E(h): E_Φ → E_Ψ factoring [T,h]∘q_Φ through q_Ψ."""
    if not is_semiconjugacy(h.h, h.source, h.target):
        raise TypeMismatch("h is not a semiconjugacy")
    src = source or subshift(h.source)
    tgt = target or subshift(h.target)
    t = h.source.time.obj
    lifted = compose(hom_map(t, h.h), src.inclusion)
    e_map = tgt.equalizer.factor(lifted)
    squares = all_of("subshift functor squares", [
        check_equal("E(h) inclusion square", compose(tgt.inclusion, e_map), lifted),
        check_equal("E(h) flow square", compose(e_map, src.flow.phi),
                    compose(tgt.flow.phi, tensor_mor(identity(t), e_map))),
    ])
    return SubshiftMap(e_map, squares)


def theorem6_iso(f: PreFlow, system: SubshiftSystem | None = None) -> tuple[Morphism | None, LawReport]:
    """For commutative time, Φ♭ factors through E_Φ as an isomorphism Ω ≅ E_Φ."""
    f = require_flow(f)
    if not f.time.monoid.is_commutative():
        raise NotApplicable("the time monoid is not commutative")
    system = system or subshift(f)
    q = system.inclusion
    flat = flat_adjoint(f)
    eq = system.equalizer
    equalizes = check_equal("Φ♭ equalizes the pair", compose(eq.f, flat), compose(eq.g, flat))
    if not equalizes:
        return None, equalizes
    iso = eq.factor(flat)
    back = compose(eval_at_zero(f.time, f.omega), q)
    report = all_of("Φ♭ is the equalizer", [
        equalizes,
        check_equal("left inverse to the flow", compose(eval_at_zero(f.time, f.omega), flat),
                    identity(f.omega)),
        check_equal("iso then inverse", compose(back, iso), identity(f.omega)),
        check_equal("inverse then iso", compose(iso, back), identity(eq.object)),
    ])
    return iso, report
