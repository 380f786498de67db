"""Small named systems used in tests, scripts, and documentation."""

from __future__ import annotations

from .core import ObjectRef
from .dynamics import Flow, PreFlow
from .finset import (
    FiniteMonoid,
    cyclic_group,
    finset,
    max_monoid,
    morphism,
    product,
)

ABC = ("a", "b", "c")


def rot(k: int, omega: ObjectRef | None = None):
    """Rotation by k on {a,b,c} (a→b→c→a for k = 1)."""
    omega = omega or finset(ABC)
    return morphism(omega, omega, lambda x: ABC[(ABC.index(x) + k) % 3])


def z3_rotation() -> Flow:
    """Z₃ acting on {a,b,c} by Φ(t,x) = rot^t(x)."""
    time = cyclic_group(3).as_time_object()
    omega = finset(ABC)
    phi = morphism(product(time.obj, omega), omega,
                   lambda tx: ABC[(ABC.index(tx[1]) + int(tx[0])) % 3])
    return Flow(time, omega, phi)


def identity_flow(m: FiniteMonoid, omega: ObjectRef) -> Flow:
    time = m.as_time_object()
    return Flow(time, omega, morphism(product(time.obj, omega), omega, lambda tx: tx[1]))


def max_idempotent() -> Flow:
    """({0,1}, max) on {0,1,2}: time 1 applies f with f(0)=0, f(1)=0, f(2)=2."""
    time = max_monoid(2).as_time_object()
    omega = finset(("0", "1", "2"))
    f = {"0": "0", "1": "0", "2": "2"}
    phi = morphism(product(time.obj, omega), omega,
                   lambda tx: tx[1] if tx[0] == "0" else f[tx[1]])
    return Flow(time, omega, phi)


def rescaled_rotation() -> PreFlow:
    """Φ(t,x) = rot^(t²)(x) on Z₃: well typed, not a left action."""
    time = cyclic_group(3).as_time_object()
    omega = finset(ABC)
    phi = morphism(product(time.obj, omega), omega,
                   lambda tx: ABC[(ABC.index(tx[1]) + int(tx[0]) ** 2) % 3])
    return PreFlow(time, omega, phi)
