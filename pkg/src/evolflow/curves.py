"""Differentiable structure-matrix curves t -> A(t).

Each curve is one continuous evolution algebra: freezing it at a time t
gives the structure matrix of that slice.  Closed-form variants carry
exact analytic derivatives; the Numeric variant integrates A' = A X(t)
once at construction and pays with finite-difference derivatives.

Scalar coefficients of the closed-form variants come from a fixed catalog
(polynomials, and sin/cos/exp/cosh/sinh of an affine argument) so that
their derivatives are exact rather than numerical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import lie
from ._stepper import checked_generator, rk4_step
from .errors import DimensionMismatch, HorizonExceeded, WrongVariant
from .matcore import (
    SINGULAR_TOL,
    _scaled_abs_det,
    as_matrix,
    expm,
    frob_norm,
    inv,
    is_real,
    spectral_radius_estimate,
)

# ---------------------------------------------------------------------------
# scalar-function catalog

AFFINE_ARG_KINDS = ("sin", "cos", "exp", "cosh", "sinh")

_VALUE = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "cosh": math.cosh,
    "sinh": math.sinh,
}
# d/du of each kind, evaluated at the affine argument u = scale*t + shift
_SLOPE = {
    "sin": math.cos,
    "cos": lambda u: -math.sin(u),
    "exp": math.exp,
    "cosh": math.sinh,
    "sinh": math.cosh,
}


class ScalarFunction:
    """A differentiable scalar coefficient from the fixed catalog."""

    def value(self, t: float) -> float:
        raise NotImplementedError

    def derivative(self, t: float) -> float:
        raise NotImplementedError

    def __call__(self, t: float) -> float:
        return self.value(t)


@dataclass(frozen=True)
class Poly(ScalarFunction):
    """Polynomial c0 + c1*t + c2*t**2 + ..."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def value(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self, t: float) -> float:
        acc = 0.0
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * t + k * self.coeffs[k]
        return acc


@dataclass(frozen=True)
class AffineArg(ScalarFunction):
    """kind(scale*t + shift) for kind in sin/cos/exp/cosh/sinh."""

    kind: str
    scale: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if self.kind not in AFFINE_ARG_KINDS:
            raise ValueError(f"unknown scalar function kind {self.kind!r}")
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "shift", float(self.shift))

    def value(self, t: float) -> float:
        return _VALUE[self.kind](self.scale * t + self.shift)

    def derivative(self, t: float) -> float:
        return self.scale * _SLOPE[self.kind](self.scale * t + self.shift)


def constant(c: float) -> Poly:
    return Poly((c,))


def as_scalar_function(f) -> ScalarFunction:
    """Coerce a catalog function or a plain number to a ScalarFunction."""
    if isinstance(f, ScalarFunction):
        return f
    if isinstance(f, (int, float)):
        return Poly((float(f),))
    raise TypeError(f"not a scalar function or number: {f!r}")


class MatrixFunction:
    """Time-dependent generator of the form sum_k f_k(t) * M_k.

    The f_k come from the scalar catalog, so the function is exactly
    differentiable and JSON-serializable.  Instances are callable.
    """

    def __init__(self, terms: Sequence[tuple]):
        if not terms:
            raise ValueError("matrix function needs at least one term")
        parsed = []
        n = None
        for f, M in terms:
            M = as_matrix(M, name="matrix function term")
            if n is None:
                n = M.shape[0]
            elif M.shape[0] != n:
                raise ValueError("matrix function terms have inconsistent dimensions")
            parsed.append((as_scalar_function(f), M))
        self.terms = tuple(parsed)
        self.n = n

    def __call__(self, t: float) -> np.ndarray:
        acc = self.terms[0][0].value(t) * self.terms[0][1]
        for f, M in self.terms[1:]:
            acc = acc + f.value(t) * M
        return acc


# ---------------------------------------------------------------------------
# curve variants


class Curve:
    """Base class: a differentiable curve of square structure matrices."""

    @property
    def n(self) -> int:
        raise NotImplementedError

    def value(self, t: float) -> np.ndarray:
        """Structure matrix A(t)."""
        raise NotImplementedError

    def derivative(self, t: float) -> np.ndarray:
        """dA/dt at time t."""
        raise NotImplementedError

    def velocity_at_origin(self) -> np.ndarray:
        """The velocity vector A'(0)."""
        return self.derivative(0.0)


@dataclass(frozen=True)
class Constant(Curve):
    """A(t) = A for all t (a time-invariant algebra)."""

    A: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))

    @property
    def n(self):
        return self.A.shape[0]

    def value(self, t):
        return self.A.copy()

    def derivative(self, t):
        return np.zeros_like(self.A)


@dataclass(frozen=True)
class AffineLine(Curve):
    """A(t) = I + t*A."""

    A: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))

    @property
    def n(self):
        return self.A.shape[0]

    def value(self, t):
        return np.eye(self.n, dtype=self.A.dtype) + t * self.A

    def derivative(self, t):
        return self.A.copy()


@dataclass(frozen=True)
class ExpLine(Curve):
    """A(t) = A0 exp(t X): the solution of A' = A X with A(0) = A0."""

    A0: np.ndarray = field(repr=False)
    X: np.ndarray = field(repr=False)

    def __post_init__(self):
        A0 = as_matrix(self.A0, name="A0")
        X = as_matrix(self.X, name="X")
        if A0.shape != X.shape:
            raise DimensionMismatch("A0 and X must have the same dimension")
        object.__setattr__(self, "A0", A0)
        object.__setattr__(self, "X", X)

    @property
    def n(self):
        return self.A0.shape[0]

    def value(self, t):
        return self.A0 @ expm(t * self.X)

    def derivative(self, t):
        return self.A0 @ expm(t * self.X) @ self.X


@dataclass(frozen=True)
class TangentInduced(Curve):
    """Curve through a tangent vector: A(t) = B exp(t X) with X = B^{-1} V.

    Then A(0) = B and A'(0) = V, realizing the tangent-bundle element
    (B, V) as a curve in the connected component of B.
    """

    B: np.ndarray = field(repr=False)
    V: np.ndarray = field(repr=False)
    X: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        B = as_matrix(self.B, name="B")
        V = as_matrix(self.V, name="V")
        if B.shape != V.shape:
            raise DimensionMismatch("B and V must have the same dimension")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "X", inv(B) @ V)

    @property
    def n(self):
        return self.B.shape[0]

    def value(self, t):
        return self.B @ expm(t * self.X)

    def derivative(self, t):
        return self.B @ expm(t * self.X) @ self.X


@dataclass(frozen=True)
class So2(Curve):
    """The rotation one-parameter subgroup [[cos t, sin t], [-sin t, cos t]]."""

    @property
    def n(self):
        return 2

    def value(self, t):
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, s], [-s, c]])

    def derivative(self, t):
        c, s = math.cos(t), math.sin(t)
        return np.array([[-s, c], [-c, -s]])


@dataclass(frozen=True)
class Lorentz11(Curve):
    """A_i exp(t X) with X = [[0,1],[1,0]]: one curve per O(1,1) component.

    i = 1 is the Lorentz boost [[cosh t, sinh t], [sinh t, cosh t]] itself;
    i = 2, 3, 4 prepend the reflections -I, diag(1,-1), diag(-1,1).
    """

    i: int = 1

    def __post_init__(self):
        if self.i not in (1, 2, 3, 4):
            raise ValueError("component index must be in 1..4")

    @property
    def n(self):
        return 2

    def value(self, t):
        return lie.o11_element(self.i, t)

    def derivative(self, t):
        c, s = math.cosh(t), math.sinh(t)
        return lie.o11_factor(self.i) @ np.array([[s, c], [c, s]])


def _heis(alpha: float, beta: float, delta: float) -> np.ndarray:
    return np.array([[1.0, alpha, beta], [0.0, 1.0, delta], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class Heisenberg(Curve):
    """Upper unitriangular curve [[1, a(t), b(t)], [0, 1, d(t)], [0, 0, 1]]."""

    alpha: ScalarFunction
    beta: ScalarFunction
    delta: ScalarFunction

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            object.__setattr__(self, name, as_scalar_function(getattr(self, name)))

    @property
    def n(self):
        return 3

    def value(self, t):
        return _heis(self.alpha.value(t), self.beta.value(t), self.delta.value(t))

    def derivative(self, t):
        D = np.zeros((3, 3))
        D[0, 1] = self.alpha.derivative(t)
        D[0, 2] = self.beta.derivative(t)
        D[1, 2] = self.delta.derivative(t)
        return D


@dataclass(frozen=True)
class HeisenbergExp(Curve):
    """exp of the strictly-upper generator path: A(a(t), b(t) + a(t)c(t)/2, c(t))."""

    a: ScalarFunction
    b: ScalarFunction
    c: ScalarFunction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_scalar_function(getattr(self, name)))

    @property
    def n(self):
        return 3

    def value(self, t):
        a, b, c = self.a.value(t), self.b.value(t), self.c.value(t)
        return _heis(a, b + 0.5 * a * c, c)

    def derivative(self, t):
        a, c = self.a.value(t), self.c.value(t)
        da, db, dc = self.a.derivative(t), self.b.derivative(t), self.c.derivative(t)
        D = np.zeros((3, 3))
        D[0, 1] = da
        D[0, 2] = db + 0.5 * (da * c + a * dc)
        D[1, 2] = dc
        return D


@dataclass(frozen=True)
class Sl2Iwasawa(Curve):
    """Iwasawa-factorized SL2(R) curve: rotation(a(t)) diag(e^b, e^-b) shear(d(t))."""

    alpha: ScalarFunction
    beta: ScalarFunction
    delta: ScalarFunction

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            object.__setattr__(self, name, as_scalar_function(getattr(self, name)))

    @property
    def n(self):
        return 2

    def value(self, t):
        return lie.sl2_iwasawa(self.alpha.value(t), self.beta.value(t), self.delta.value(t))

    def derivative(self, t):
        a, b, d = self.alpha.value(t), self.beta.value(t), self.delta.value(t)
        da, db, dd = self.alpha.derivative(t), self.beta.derivative(t), self.delta.derivative(t)
        ca, sa = math.cos(a), math.sin(a)
        R = np.array([[ca, -sa], [sa, ca]])
        Rdot = da * np.array([[-sa, -ca], [ca, -sa]])
        D = np.diag([math.exp(b), math.exp(-b)])
        Ddot = db * np.diag([math.exp(b), -math.exp(-b)])
        N = np.array([[1.0, d], [0.0, 1.0]])
        Ndot = dd * np.array([[0.0, 1.0], [0.0, 0.0]])
        return Rdot @ D @ N + R @ Ddot @ N + R @ D @ Ndot


@dataclass(frozen=True)
class FlipFlop(Curve):
    """Transition semigroup of the two-state flip-flop with intensity lam.

    A(t) has entries (1 +- exp(-2 lam t))/2; its velocity at the origin is
    the rate matrix [[-lam, lam], [lam, -lam]].  Entries leave [0, 1] for
    t < 0 although the curve itself extends to all of R.
    """

    lam: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError("flip-flop intensity must be positive")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n(self):
        return 2

    def value(self, t):
        e = math.exp(-2.0 * self.lam * t)
        p, q = 0.5 * (1.0 + e), 0.5 * (1.0 - e)
        return np.array([[p, q], [q, p]])

    def derivative(self, t):
        g = self.lam * math.exp(-2.0 * self.lam * t)
        return np.array([[-g, g], [g, -g]])


@dataclass(frozen=True, eq=False)
class Numeric(Curve):
    """Curve defined by A' = A X(t), A(0) = A0, on the horizon [-T, T].

    A dense trajectory table at spacing h is integrated once at
    construction (classical 4th-order steps, both time directions) and is
    read-only afterwards; evaluation takes one partial step off the
    nearest stored node.  Derivatives are central differences with step
    1e-5.  Evaluation outside the horizon raises HorizonExceeded.
    """

    A0: np.ndarray = field(repr=False)
    generator: Callable = field(repr=False)
    h: float = 1e-3
    horizon: float = 2.0

    def __post_init__(self):
        A0 = as_matrix(self.A0, name="A0")
        object.__setattr__(self, "A0", A0)
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "horizon", float(self.horizon))
        if not 0.0 < self.h <= self.horizon:
            raise ValueError("need 0 < h <= horizon")
        spec = self.generator if isinstance(self.generator, MatrixFunction) else None
        object.__setattr__(self, "generator_spec", spec)
        gen = checked_generator(self.generator, A0.shape[0])
        object.__setattr__(self, "_gen", gen)
        fwd_t, fwd_m = self._march(gen, +1.0)
        bwd_t, bwd_m = self._march(gen, -1.0)
        ts = np.array(bwd_t[::-1] + fwd_t[1:])
        object.__setattr__(self, "_ts", ts)
        object.__setattr__(self, "_table", bwd_m[::-1] + fwd_m[1:])

    def _march(self, gen, direction):
        ts, ms = [0.0], [self.A0]
        t, A = 0.0, self.A0
        step = direction * self.h
        while direction * t < self.horizon - 1e-12:
            dt = step
            if direction * (t + dt) > self.horizon:
                dt = direction * self.horizon - t  # short final step
            A = rk4_step(A, t, dt, gen)
            t = t + dt
            ts.append(t)
            ms.append(A)
        return ts, ms

    @property
    def n(self):
        return self.A0.shape[0]

    def value(self, t):
        if abs(t) > self.horizon + 1e-12:
            raise HorizonExceeded(f"t={t} outside integrated horizon [-{self.horizon}, {self.horizon}]")
        idx = int(np.searchsorted(self._ts, t, side="right")) - 1
        idx = min(max(idx, 0), len(self._ts) - 1)
        dt = t - self._ts[idx]
        A = self._table[idx]
        if dt == 0.0:
            return A.copy()
        return rk4_step(A, self._ts[idx], dt, self._gen)

    def derivative(self, t, fd_step: float = 1e-5):
        if abs(t) + fd_step > self.horizon + 1e-12:
            raise HorizonExceeded(f"central difference at t={t} leaves the horizon")
        return (self.value(t + fd_step) - self.value(t - fd_step)) / (2.0 * fd_step)


# ---------------------------------------------------------------------------
# curve checks


class SubgroupReport(NamedTuple):
    passed: bool
    identity_residual: float
    homomorphism_residual: float
    tol: float


def check_one_parameter_subgroup(curve: Curve, grid, tol: float = 1e-9) -> SubgroupReport:
    """Verify A(0) = I and A(s+t) = A(s) A(t) over all grid pairs."""
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("grid must be nonempty")
    n = curve.n
    id_res = frob_norm(curve.value(0.0) - np.eye(n))
    values = {t: curve.value(t) for t in grid}
    hom = 0.0
    for s in grid:
        for t in grid:
            r = frob_norm(curve.value(s + t) - values[s] @ values[t])
            hom = max(hom, r)
    return SubgroupReport(id_res <= tol and hom <= tol, id_res, hom, tol)


class OdeReport(NamedTuple):
    passed: bool
    max_residual: float
    tol: float


def check_ode(curve: Curve, X, grid, tol: float = 1e-9) -> OdeReport:
    """Residual of A'(t) = A(t) X over the grid."""
    X = as_matrix(X, name="X")
    worst = 0.0
    for t in grid:
        worst = max(worst, frob_norm(curve.derivative(t) - curve.value(t) @ X))
    return OdeReport(worst <= tol, worst, tol)


class PerfectnessSample(NamedTuple):
    t: float
    abs_det: float
    sign: int | None  # sign of det for real values; None for complex


class PerfectnessProfile(NamedTuple):
    samples: tuple
    all_perfect: bool
    sign_constant: bool | None
    passed: bool


def perfectness_profile(curve: Curve, grid) -> PerfectnessProfile:
    """Per-sample determinant magnitude and sign along the curve.

    A sample is perfect when its scaled determinant clears SINGULAR_TOL.
    For real curves the report also says whether the determinant sign is
    constant (it must be along any real curve of nonsingular matrices).
    """
    samples = []
    perfect_flags = []
    for t in grid:
        A = curve.value(t)
        d = np.linalg.det(A)
        nonsing = _scaled_abs_det(A) > SINGULAR_TOL
        perfect_flags.append(nonsing)
        if is_real(A, 0.0):
            sign = int(np.sign(d.real)) if nonsing else 0
        else:
            sign = None
        samples.append(PerfectnessSample(float(t), float(abs(d)), sign))
    all_perfect = all(perfect_flags)
    signs = [s.sign for s in samples]
    if any(s is None for s in signs):
        sign_constant = None
    else:
        sign_constant = len(set(signs)) == 1 and signs[0] != 0
    passed = all_perfect and sign_constant is not False
    return PerfectnessProfile(tuple(samples), all_perfect, sign_constant, passed)


def nonsingularity_interval(curve: Curve) -> float:
    """Radius r with I + t*A invertible for |t| < r, for an AffineLine curve.

    Returns inf when the spectral-radius estimate is zero (nilpotent A).
    Raises WrongVariant for any other curve variant.
    """
    if not isinstance(curve, AffineLine):
        raise WrongVariant("nonsingularity_interval applies to AffineLine curves only")
    rho = spectral_radius_estimate(curve.A)
    if rho <= 1e-12:
        return math.inf
    return 1.0 / rho
