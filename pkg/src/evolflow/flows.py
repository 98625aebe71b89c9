"""Global flows Phi(t, A) = A exp(t X) on matrix Lie groups.

A Flow pairs a generator X with a declared ambient group whose Lie
algebra must contain X; its flow lines are the orbits of base points,
each one a structure-matrix curve staying in the base point's connected
component.  The module also integrates the time-dependent problem
A' = A X(t) with fixed classical 4th-order steps, and evaluates the
closed-form solution A0 exp(integral of X) available when X(t) commutes
with its integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from ._stepper import checked_generator, rk4_step
from .errors import CommutatorTooLarge, NotInAlgebra, NotInGroup
from .lie import Group, algebra_of, in_algebra, in_group
from .matcore import as_matrix, expm, frob_norm


@dataclass(frozen=True)
class Flow:
    """The global flow of the left-invariant field with value X at identity."""

    X: np.ndarray = field(repr=False)
    group: Group

    def __post_init__(self):
        X = as_matrix(self.X, name="generator")
        object.__setattr__(self, "X", X)
        rep = in_algebra(X, algebra_of(self.group))
        if not rep.belongs:
            raise NotInAlgebra(
                f"generator is not in the {self.group.kind} Lie algebra "
                f"(residual {rep.residual:.3e})"
            )

    @property
    def n(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step one-step method configuration: step h over [0, horizon]."""

    h: float
    horizon: float

    def __post_init__(self):
        if not 0.0 < self.h <= self.horizon:
            raise ValueError("need 0 < h <= horizon")


@dataclass(frozen=True)
class FlowLine:
    """A sampled orbit; the first sample is always (0, base)."""

    base: np.ndarray = field(repr=False)
    samples: tuple = field(repr=False)

    def times(self) -> list:
        return [t for t, _ in self.samples]

    def final(self) -> np.ndarray:
        return self.samples[-1][1]


def flow_apply(flow: Flow, t: float, A, tol: float = 1e-9) -> np.ndarray:
    """Phi(t, A) = A exp(t X) for a base point A of the declared group."""
    A = as_matrix(A, name="base point")
    rep = in_group(A, flow.group, tol)
    if not rep.belongs:
        raise NotInGroup(f"base point fails {flow.group.kind} membership (residual {rep.residual:.3e})")
    return A @ expm(t * flow.X)


class FlowAxiomsReport(NamedTuple):
    passed: bool
    identity_residual: float
    composition_residual: float
    tol: float


def flow_axioms(flow: Flow, bases, grid, tol: float = 1e-9) -> FlowAxiomsReport:
    """Check Phi(0, A) = A and Phi(s, Phi(t, A)) = Phi(s+t, A) on the grid."""
    ident = comp = 0.0
    ts = [float(t) for t in grid]
    for A in bases:
        ident = max(ident, frob_norm(flow_apply(flow, 0.0, A, tol) - as_matrix(A)))
        for s in ts:
            for t in ts:
                inner = flow_apply(flow, t, A, tol)
                r = frob_norm(flow_apply(flow, s, inner, tol) - flow_apply(flow, s + t, A, tol))
                comp = max(comp, r)
    return FlowAxiomsReport(ident <= tol and comp <= tol, ident, comp, tol)


def flow_line(flow: Flow, A, grid, tol: float = 1e-9) -> FlowLine:
    """Sample the orbit of A; the sample at t = 0 always comes first."""
    A = as_matrix(A, name="base point")
    rep = in_group(A, flow.group, tol)
    if not rep.belongs:
        raise NotInGroup(f"base point fails {flow.group.kind} membership (residual {rep.residual:.3e})")
    samples = [(0.0, A.copy())]
    for t in grid:
        t = float(t)
        if t == 0.0:
            continue
        samples.append((t, A @ expm(t * flow.X)))
    return FlowLine(A, tuple(samples))


def integrate_right(Xfun: Callable, A0, cfg: IntegratorConfig) -> FlowLine:
    """Solve A' = A X(t), A(0) = A0 with fixed classical 4th-order steps.

    Samples every h up to the horizon (the final step may be short so the
    last sample lands exactly on the horizon).  For constant X the global
    error against A0 exp(T X) is O(h^4).
    """
    A0 = as_matrix(A0, name="A0")
    gen = checked_generator(Xfun, A0.shape[0])
    samples = [(0.0, A0.copy())]
    A = A0
    t = 0.0
    k = 0
    while t < cfg.horizon - 1e-12:
        k += 1
        nxt = min(k * cfg.h, cfg.horizon)
        A = rk4_step(A, t, nxt - t, gen)
        t = nxt
        samples.append((t, A))
    return FlowLine(A0, tuple(samples))


def _simpson_matrix(gen, t: float, nodes: int) -> np.ndarray:
    # composite Simpson rule with an odd number of equispaced nodes
    xs = np.linspace(0.0, t, nodes)
    h = (t - 0.0) / (nodes - 1)
    w = np.ones(nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    acc = w[0] * gen(xs[0])
    for i in range(1, nodes):
        acc = acc + w[i] * gen(xs[i])
    return (h / 3.0) * acc


def commuting_magnus(Xfun: Callable, A0, t: float, tol: float = 1e-8) -> np.ndarray:
    """A0 exp(integral_0^t X) when X(t) commutes with its integral.

    The integral is a composite Simpson rule starting from 129 nodes,
    doubling the resolution until the quadrature changes by at most 1e-11
    (capped at 8193 nodes).  If the commutator of X(t) with the integral
    exceeds tol relative to the factor norms, the closed form does not
    apply and CommutatorTooLarge is raised; higher-order corrections are
    deliberately not attempted.
    """
    A0 = as_matrix(A0, name="A0")
    gen = checked_generator(Xfun, A0.shape[0])
    nodes = 129
    omega = _simpson_matrix(gen, t, nodes)
    while nodes < 8193:
        nodes = 2 * nodes - 1
        refined = _simpson_matrix(gen, t, nodes)
        done = frob_norm(refined - omega) <= 1e-11
        omega = refined
        if done:
            break
    Xt = gen(t)
    defect = frob_norm(Xt @ omega - omega @ Xt)
    if defect > tol * frob_norm(Xt) * frob_norm(omega):
        raise CommutatorTooLarge(
            f"generator does not commute with its integral (defect {defect:.3e})",
            defect,
        )
    return A0 @ expm(omega)
