"""Exhaustive enumeration of small systems for law sweeps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import Morphism, TimeObject
from .dynamics import Flow, PreFlow, validate_flow
from .finset import FiniteMonoid, MonoidError, _frozen, finset, product, size


@lru_cache(maxsize=None)
def monoids_of_order(n: int) -> tuple[FiniteMonoid, ...]:
    """All monoids on {"0", ..., str(n-1)} with unit "0", one per isomorphism class.

    Brute force over every table; the first table in canonical order of each
    isomorphism class is kept.
    """
    els = tuple(str(i) for i in range(n))
    rest = els[1:]
    seen: set = set()
    found = []
    for images in itertools.product(els, repeat=len(rest) ** 2):
        tbl = {}
        for s in els:
            tbl[("0", s)] = s
            tbl[(s, "0")] = s
        for (s, t), v in zip(itertools.product(rest, rest), images):
            tbl[(s, t)] = v
        try:
            m = FiniteMonoid(els, tbl, "0")
        except MonoidError:
            continue
        if m.add_table in seen:
            continue
        found.append(m)
        for perm in itertools.permutations(rest):
            rename = dict(zip(rest, perm), **{"0": "0"})
            inv = {v: k for k, v in rename.items()}
            seen.add(tuple(tuple(rename[m.add(inv[s], inv[t])] for t in els) for s in els))
    return tuple(found)


def all_monoids(max_order: int) -> list[FiniteMonoid]:
    return [m for n in range(1, max_order + 1) for m in monoids_of_order(n)]


def all_preflows(time: TimeObject, n_states: int) -> Iterator[PreFlow]:
    """Every map T⊗Ω → Ω for Ω = {x0, ...}, in canonical order."""
    omega = finset(f"x{i}" for i in range(n_states))
    dom = product(time.obj, omega)
    for images in itertools.product(range(n_states), repeat=size(dom)):
        yield PreFlow(time, omega, Morphism(dom, omega, _frozen(images)))


def all_flows(time: TimeObject, n_states: int) -> list[Flow]:
    """The valid flows among :func:`all_preflows`, filtered by validate_flow."""
    return [Flow(p.time, p.omega, p.phi) for p in all_preflows(time, n_states) if validate_flow(p)]


@dataclass(frozen=True, eq=False)
class System:
    monoid: FiniteMonoid
    flow: Flow


def sweep_systems(max_time: int = 3, max_states: int = 3) -> list[System]:
    out = []
    for m in all_monoids(max_time):
        time = m.as_time_object()
        for k in range(max_states + 1):
            out.extend(System(m, f) for f in all_flows(time, k))
    return out


def action_table(f: PreFlow) -> np.ndarray:
    """Φ as a |T|×|Ω| array of state indices."""
    return np.asarray(f.phi.payload).reshape(size(f.time.obj), size(f.omega))
