"""Exhaustive law sweeps over small systems.

Each function returns a :class:`SuiteResult` counting the individual checks
made and listing any discrepancies; an empty ``failures`` list means every
check passed.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import (
    associator,
    associator_inv,
    check_diagram,
    compose,
    compose_all,
    curry_left,
    eval_morphism,
    hom_obj,
    identity,
    lunitor,
    lunitor_inv,
    runitor,
    runitor_inv,
    swap,
    tensor_mor,
    tensor_obj,
    uncurry_left,
)
from .derived import eval_at_zero, flat_adjoint, shift_flow, transfer_flow
from .dynamics import (
    enriched_morphism_check,
    flow_to_parametric,
    is_semiconjugacy,
    parametric_to_flow,
    sharp_of_morphism,
    validate_flow,
    validate_parametric,
)
from .finset import FINSET, all_morphisms, finset
from .finvect import GF2, linear, space
from .states import (
    all_states,
    all_witnesses,
    cone_hexagon,
    cone_triangle,
    induced_state,
    is_stationary,
)
from .subshift import flow_equalizer, membership_scan, subshift, subshift_map, theorem6_iso
from .sweep import System, sweep_systems


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition, what) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(what)

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} discrepancies)"
        return f"{status}: {self.name}, {self.checks} checks"


@lru_cache(maxsize=None)
def cached_sweep(max_time: int = 3, max_states: int = 3) -> tuple[System, ...]:
    return tuple(sweep_systems(max_time, max_states))


def _finsets(max_size: int):
    return [finset("pqrs"[:n]) for n in range(max_size + 1)]


def _spaces(max_dim: int):
    return [space(n) for n in range(max_dim + 1)]


def _all_linear(a, b):
    n, m = GF2.size(a), GF2.size(b)
    for bits in itertools.product((0, 1), repeat=n * m):
        yield linear(a, b, np.array(bits, dtype=np.uint8).reshape(m, n))


def _basis_linear(a, b):
    n, m = GF2.size(a), GF2.size(b)
    for i, j in itertools.product(range(m), range(n)):
        e = np.zeros((m, n), dtype=np.uint8)
        e[i, j] = 1
        yield linear(a, b, e)


# --------------------------------------------------------------------------
# criterion 1: backend laws


def _tables(n: int, m: int) -> np.ndarray:
    """Every map {0..n-1} → {0..m-1} as rows of an index array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if m == 0:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64)


def _batched_finset_associativity(res: SuiteResult, sizes) -> None:
    # (h∘g)∘f against h∘(g∘f) with composition as payload indexing g[f]
    a, b, c, d = sizes
    F, G, H = _tables(a, b), _tables(b, c), _tables(c, d)
    if not (len(F) and len(G) and len(H)):
        return
    for h in H:
        hg = h[G]                      # (|G|, b)
        left = hg[:, F]                # (|G|, |F|, a)
        right = h[G[:, F]]             # (|G|, |F|, a)
        res.checks += len(G) * len(F)
        if not np.array_equal(left, right):
            res.failures.append(("finset associativity", sizes))


def backend_law_suite() -> SuiteResult:
    res = SuiteResult("backend law suite")
    fs4, fs3 = _finsets(4), _finsets(3)
    vs3, vs2 = _spaces(3), _spaces(2)

    # category laws: identities for every map, associativity for every triple
    for a, b in itertools.product(fs4, repeat=2):
        for f in all_morphisms(a, b):
            res.check(compose(identity(b), f) == f == compose(f, identity(a)), ("identity", f))
    for a, b, c, d in itertools.product(fs3, repeat=4):
        G = list(all_morphisms(b, c))
        H = list(all_morphisms(c, d))
        HG = {(i, j): compose(h, g) for (i, h), (j, g) in itertools.product(enumerate(H), enumerate(G))}
        for f in all_morphisms(a, b):
            GF = [compose(g, f) for g in G]
            for (i, h), (j, _) in itertools.product(enumerate(H), enumerate(G)):
                res.check(compose(HG[i, j], f) == compose(h, GF[j]), ("associativity", a, b, c, d))
    for sizes in itertools.product(range(5), repeat=4):
        if max(sizes) == 4:
            _batched_finset_associativity(res, sizes)

    for a, b in itertools.product(vs3, repeat=2):
        maps = _all_linear(a, b) if GF2.size(a) * GF2.size(b) <= 9 else ()
        for f in maps:
            res.check(compose(identity(b), f) == f == compose(f, identity(a)), ("gf2 identity", f))
    for a, b, c, d in itertools.product(vs2, repeat=4):
        G, H = list(_all_linear(b, c)), list(_all_linear(c, d))
        for f in _all_linear(a, b):
            for g, h in itertools.product(G, H):
                res.check(compose(compose(h, g), f) == compose(h, compose(g, f)), ("gf2 assoc", a, b, c, d))
    # composition is trilinear over GF(2), so basis matrices settle dimension 3 exactly
    for a, b, c, d in itertools.product(vs3, repeat=4):
        if 3 not in (GF2.size(a), GF2.size(b), GF2.size(c), GF2.size(d)):
            continue
        G, H = list(_basis_linear(b, c)), list(_basis_linear(c, d))
        for f in _basis_linear(a, b):
            for g, h in itertools.product(G, H):
                res.check(compose(compose(h, g), f) == compose(h, compose(g, f)), ("gf2 assoc", a, b, c, d))

    # bifunctoriality
    for a, b in itertools.product(fs4, repeat=2):
        res.check(tensor_mor(identity(a), identity(b)) == identity(tensor_obj(a, b)), ("id⊗id", a, b))
    ones_twos = _finsets(2)[1:]
    for a, b, c, x, y, z in itertools.product(ones_twos, repeat=6):
        for f, f2, g, g2 in itertools.product(all_morphisms(a, b), all_morphisms(b, c),
                                              all_morphisms(x, y), all_morphisms(y, z)):
            res.check(tensor_mor(compose(f2, f), compose(g2, g)) ==
                      compose(tensor_mor(f2, g2), tensor_mor(f, g)), ("interchange", a, b, c, x, y, z))
    for a, b in itertools.product(vs3, repeat=2):
        res.check(tensor_mor(identity(a), identity(b)) == identity(tensor_obj(a, b)), ("gf2 id⊗id", a, b))
    # the interchange law is multilinear over GF(2), so basis matrices cover every case
    for a, b, c, x, y, z in itertools.product(vs2[1:], repeat=6):
        for f, f2, g, g2 in itertools.product(_basis_linear(a, b), _basis_linear(b, c),
                                              _basis_linear(x, y), _basis_linear(y, z)):
            res.check(tensor_mor(compose(f2, f), compose(g2, g)) ==
                      compose(tensor_mor(f2, g2), tensor_mor(f, g)), ("gf2 interchange",))

    # coherence
    for objs in (fs4, vs3):
        one = objs[0].backend.unit()
        for a in objs:
            res.check(compose(lunitor(a), lunitor_inv(a)) == identity(a), ("λ iso", a))
            res.check(compose(lunitor_inv(a), lunitor(a)) == identity(tensor_obj(one, a)), ("λ iso", a))
            res.check(compose(runitor(a), runitor_inv(a)) == identity(a), ("ρ iso", a))
            res.check(compose(runitor_inv(a), runitor(a)) == identity(tensor_obj(a, one)), ("ρ iso", a))
        for a, b in itertools.product(objs, repeat=2):
            res.check(compose(swap(b, a), swap(a, b)) == identity(tensor_obj(a, b)), ("swap", a, b))
            res.check(check_diagram([associator(a, one, b), tensor_mor(identity(a), lunitor(b))],
                                    [tensor_mor(runitor(a), identity(b))]), ("triangle", a, b))
        for a, b, c in itertools.product(objs, repeat=3):
            abc = tensor_obj(tensor_obj(a, b), c)
            res.check(compose(associator_inv(a, b, c), associator(a, b, c)) == identity(abc), ("α iso",))
            res.check(check_diagram(
                [associator(a, b, c), swap(a, tensor_obj(b, c)), associator(b, c, a)],
                [tensor_mor(swap(a, b), identity(c)), associator(b, a, c),
                 tensor_mor(identity(b), swap(a, c))]), ("hexagon", a, b, c))
        for a, b, c, d in itertools.product(objs, repeat=4):
            res.check(check_diagram(
                [associator(tensor_obj(a, b), c, d), associator(a, b, tensor_obj(c, d))],
                [tensor_mor(associator(a, b, c), identity(d)), associator(a, tensor_obj(b, c), d),
                 tensor_mor(identity(a), associator(b, c, d))]), ("pentagon", a, b, c, d))

    # closed structure: roundtrips and the counit identity eval∘(Y⊗curry φ) = φ
    for y, x, z in itertools.product(fs4, repeat=3):
        dom = tensor_obj(y, x)
        if FINSET.size(dom) > 4:
            continue
        ev = eval_morphism(y, z)
        for phi in all_morphisms(dom, z):
            c = curry_left(phi)
            res.check(uncurry_left(c) == phi, ("uncurry∘curry", y, x, z))
            res.check(compose(ev, tensor_mor(identity(y), c)) == phi, ("counit", y, x, z))
        hz = hom_obj(y, z)
        if FINSET.size(hz) <= 4:
            for g in all_morphisms(x, hz):
                res.check(curry_left(uncurry_left(g)) == g, ("curry∘uncurry", y, x, z))
    for y, x, z in itertools.product(vs3, repeat=3):
        dom = tensor_obj(y, x)
        if GF2.size(dom) > 3:
            continue
        ev = eval_morphism(y, z)
        for phi in _all_linear(dom, z):
            c = curry_left(phi)
            res.check(uncurry_left(c) == phi, ("gf2 uncurry∘curry", y, x, z))
            res.check(compose(ev, tensor_mor(identity(y), c)) == phi, ("gf2 counit", y, x, z))
        hz = hom_obj(y, z)
        if GF2.size(hz) * GF2.size(x) <= 9:
            for g in _all_linear(x, hz):
                res.check(curry_left(uncurry_left(g)) == g, ("gf2 curry∘uncurry", y, x, z))
    return res


# --------------------------------------------------------------------------
# criterion 2: representation equivalence


def _by_time(systems):
    groups = defaultdict(list)
    for s in systems:
        groups[s.monoid].append(s.flow)
    return groups


def representation_suite(systems=None) -> SuiteResult:
    systems = systems if systems is not None else cached_sweep()
    res = SuiteResult("representation equivalence")
    res.notes["flows"] = len(systems)
    for s in systems:
        p = flow_to_parametric(s.flow)
        res.check(validate_parametric(p), ("parametric laws", s))
        back = parametric_to_flow(p)
        res.check(back == s.flow, ("flow roundtrip", s))
        res.check(flow_to_parametric(back).phi_sharp == p.phi_sharp, ("parametric roundtrip", s))
    pairs = 0
    for flows in _by_time(systems).values():
        for src, tgt in itertools.product(flows, repeat=2):
            pairs += 1
            for h in all_morphisms(src.omega, tgt.omega):
                square = bool(is_semiconjugacy(h, src, tgt))
                hexagon = bool(enriched_morphism_check(sharp_of_morphism(h), src, tgt))
                res.check(square == hexagon, ("square vs hexagon", src, tgt, h))
    res.notes["pairs"] = pairs
    return res


# --------------------------------------------------------------------------
# criterion 3: shift and transfer


def shift_transfer_suite(systems=None) -> SuiteResult:
    systems = systems if systems is not None else cached_sweep()
    res = SuiteResult("shift and transfer flows")
    for s in systems:
        f, time = s.flow, s.flow.time
        t, o = time.obj, f.omega
        ps = hom_obj(t, o)
        ev = eval_morphism(t, o)
        sigma = shift_flow(time, o)
        tau = transfer_flow(f)
        res.check(validate_flow(sigma), ("shift is a flow", s))
        res.check(validate_flow(tau), ("transfer is a flow", s))
        res.check(compose(ev, tensor_mor(identity(t), sigma.phi)) ==
                  compose_all(ev, tensor_mor(time.add, identity(ps)), associator_inv(t, t, ps)),
                  ("shift evaluation identity", s))
        res.check(compose(ev, tensor_mor(identity(t), tau.phi)) ==
                  compose_all(f.phi, tensor_mor(identity(t), ev), associator(t, t, ps),
                              tensor_mor(swap(t, t), identity(ps)), associator_inv(t, t, ps)),
                  ("transfer evaluation identity", s))
    return res


# --------------------------------------------------------------------------
# criterion 4: equalizers, subshifts, functoriality


def subshift_suite(systems=None) -> SuiteResult:
    systems = systems if systems is not None else cached_sweep()
    res = SuiteResult("equalizers and subshifts")
    shifts = {}
    sizes = defaultdict(set)
    for s in systems:
        f = s.flow
        sub = subshift(f)
        shifts[id(f)] = sub
        res.check(sub.squares, ("subshift squares", s))
        res.check(validate_flow(sub.flow), ("subshift flow", s))
        res.check(sub.members == membership_scan(f), ("membership oracle", s))
        sizes[(s.monoid.is_commutative(), FINSET.size(f.omega))].add(len(sub.members))
    res.notes["subshift sizes by (commutative, |Ω|)"] = {k: sorted(v) for k, v in sorted(sizes.items())}
    groups = _by_time(systems)
    for flows in groups.values():
        for F, G in itertools.product(flows, repeat=2):
            if F.omega != G.omega:
                continue
            fe = flow_equalizer(F, G)
            res.check(fe.squares, ("equalizer squares", F, G))
            res.check(validate_flow(fe.flow), ("F∩G flow", F, G))
    # E(id) = id and E(h2∘h1) = E(h2)∘E(h1) along every composable chain
    from .dynamics import Semiconjugacy

    chains = 0
    for flows in groups.values():
        semis = defaultdict(list)
        for src, tgt in itertools.product(flows, repeat=2):
            for h in all_morphisms(src.omega, tgt.omega):
                if is_semiconjugacy(h, src, tgt):
                    semis[id(src)].append((tgt, h))
        e_maps = {}

        def e_of(src, tgt, h):
            key = (id(src), id(tgt), h.payload.tobytes())
            if key not in e_maps:
                m = subshift_map(Semiconjugacy(src, tgt, h), shifts[id(src)], shifts[id(tgt)])
                res.check(m.squares, ("E(h) squares", src, tgt))
                e_maps[key] = m.morphism
            return e_maps[key]

        for f in flows:
            e_id = e_of(f, f, identity(f.omega))
            res.check(e_id == identity(shifts[id(f)].equalizer.object), ("E(id)", f))
            for mid, h1 in semis[id(f)]:
                for tgt, h2 in semis[id(mid)]:
                    chains += 1
                    res.check(e_of(f, tgt, compose(h2, h1)) == compose(e_of(mid, tgt, h2), e_of(f, mid, h1)),
                              ("E(h2∘h1)", f, mid, tgt))
    res.notes["composable chains"] = chains
    return res


# --------------------------------------------------------------------------
# criterion 5


def commutative_iso_suite(systems=None) -> SuiteResult:
    systems = systems if systems is not None else cached_sweep()
    res = SuiteResult("subshift isomorphism for commutative time")
    for s in systems:
        if not s.monoid.is_commutative():
            continue
        f = s.flow
        sub = subshift(f)
        iso, report = theorem6_iso(f, sub)
        res.check(iso is not None and report, ("iso", s))
        res.check(len(sub.members) == FINSET.size(f.omega), ("|E| = |Ω|", s))
        res.check(compose(eval_at_zero(f.time, f.omega), flat_adjoint(f)) == identity(f.omega),
                  ("left inverse", s))
    return res


# --------------------------------------------------------------------------
# criterion 6


def stationary_suite(systems=None) -> SuiteResult:
    systems = systems if systems is not None else cached_sweep()
    res = SuiteResult("stationary states")
    converse = [0, 0]
    for s in systems:
        f = s.flow
        stationary = set()
        for st in all_states(f.omega):
            x = st.element
            categorical = bool(is_stationary(f, st))
            oracle = all(f.phi((t, x)) == x for t in s.monoid.elements)
            res.check(categorical == oracle, ("stationary oracle", s, x))
            if categorical:
                stationary.add(x)
        induced_ok = set()
        for w in all_witnesses(f.omega):
            tri, hexa = bool(cone_triangle(f, w)), bool(cone_hexagon(f, w))
            res.check(tri == hexa, ("triangle vs hexagon", s))
            x = induced_state(w).element
            if tri:
                res.check(x in stationary, ("enriched ⇒ stationary", s, x))
                induced_ok.add(x)
        # the converse is recorded, never asserted
        converse[0] += len(stationary)
        converse[1] += len(stationary & induced_ok)
    res.notes["stationary states also enriched-stationary"] = f"{converse[1]}/{converse[0]}"
    return res


# --------------------------------------------------------------------------
# observations: recorded, never asserted


def koopman_observation(systems=None, n_obs: int = 2) -> dict:
    """How often the Koopman pre-flow on [Ω,X] is a left action, split by commutativity of T."""
    from .derived import koopman_preflow

    systems = systems if systems is not None else cached_sweep()
    x = finset(str(i) for i in range(n_obs))
    tally = {True: [0, 0], False: [0, 0]}
    for s in systems:
        key = s.monoid.is_commutative()
        tally[key][1] += 1
        tally[key][0] += bool(validate_flow(koopman_preflow(s.flow, x)))
    return {"commutative": tuple(tally[True]), "noncommutative": tuple(tally[False])}
