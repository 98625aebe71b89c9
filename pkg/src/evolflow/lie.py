"""Matrix Lie group and Lie algebra membership, with closed-form charts.

Membership is tolerance-based: every predicate returns the norm of a
defect (orthogonality defect, |det - 1|, row-sum defect, ...) together
with the boolean decision `residual <= tol`, and, for real nonsingular
input, the connected-component sign of the determinant.

Real-only groups and algebras fold any imaginary mass into the defect, so
complex matrices are rejected with an informative residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotStochastic, SingularMatrix
from .matcore import SINGULAR_TOL, as_matrix, frob_norm, is_nonsingular, is_real

_GROUP_KINDS = (
    "gl", "sl", "o", "so", "u", "su",
    "stochastic", "gds", "lorentz11", "o11", "heis3", "affine",
)
_ALGEBRA_KINDS = ("gl", "sl", "so", "u", "su", "rate", "omega0", "heis3", "lor11")

_FIXED_GROUP_DIM = {"lorentz11": 2, "o11": 2, "heis3": 3}
_FIXED_ALGEBRA_DIM = {"lor11": 2, "heis3": 3}


@dataclass(frozen=True)
class Group:
    """Identifier of a matrix Lie group; `s` is the row/column sum for gds."""

    kind: str
    n: int
    s: float = 1.0

    def __post_init__(self):
        if self.kind not in _GROUP_KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        fixed = _FIXED_GROUP_DIM.get(self.kind)
        if fixed is not None and self.n != fixed:
            raise ValueError(f"group {self.kind} has fixed dimension {fixed}")
        if self.n < 1:
            raise ValueError("group dimension must be positive")

    @classmethod
    def gl(cls, n):
        return cls("gl", n)

    @classmethod
    def sl(cls, n):
        return cls("sl", n)

    @classmethod
    def o(cls, n):
        return cls("o", n)

    @classmethod
    def so(cls, n):
        return cls("so", n)

    @classmethod
    def u(cls, n):
        return cls("u", n)

    @classmethod
    def su(cls, n):
        return cls("su", n)

    @classmethod
    def stochastic(cls, n):
        return cls("stochastic", n)

    @classmethod
    def gen_doubly_stochastic(cls, n, s=1.0):
        return cls("gds", n, float(s))

    @classmethod
    def lorentz11(cls):
        return cls("lorentz11", 2)

    @classmethod
    def o11(cls):
        return cls("o11", 2)

    @classmethod
    def heisenberg3(cls):
        return cls("heis3", 3)

    @classmethod
    def affine(cls, n):
        return cls("affine", n)

    @classmethod
    def from_name(cls, name, n, s=1.0):
        name = name.lower()
        if name == "gds":
            return cls.gen_doubly_stochastic(n, s)
        if name in _FIXED_GROUP_DIM:
            return cls(name, _FIXED_GROUP_DIM[name])
        return cls(name, n)


@dataclass(frozen=True)
class Algebra:
    """Identifier of a Lie (sub)algebra from the catalog."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in _ALGEBRA_KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        fixed = _FIXED_ALGEBRA_DIM.get(self.kind)
        if fixed is not None and self.n != fixed:
            raise ValueError(f"algebra {self.kind} has fixed dimension {fixed}")
        if self.n < 1:
            raise ValueError("algebra dimension must be positive")

    @classmethod
    def gl(cls, n):
        return cls("gl", n)

    @classmethod
    def sl(cls, n):
        return cls("sl", n)

    @classmethod
    def so(cls, n):
        return cls("so", n)

    @classmethod
    def u(cls, n):
        return cls("u", n)

    @classmethod
    def su(cls, n):
        return cls("su", n)

    @classmethod
    def rate(cls, n):
        return cls("rate", n)

    @classmethod
    def omega0(cls, n):
        return cls("omega0", n)

    @classmethod
    def heis3(cls):
        return cls("heis3", 3)

    @classmethod
    def lor11(cls):
        return cls("lor11", 2)

    @classmethod
    def from_name(cls, name, n):
        name = name.lower()
        if name in _FIXED_ALGEBRA_DIM:
            return cls(name, _FIXED_ALGEBRA_DIM[name])
        return cls(name, n)


@dataclass(frozen=True)
class MembershipReport:
    belongs: bool
    residual: float
    component: int | None = None


def algebra_of(group: Group) -> Algebra:
    """The catalog Lie algebra whose exponentials land in `group`."""
    mapping = {
        "gl": "gl",
        "sl": "sl",
        "o": "so",
        "so": "so",
        "u": "u",
        "su": "su",
        "stochastic": "rate",
        "lorentz11": "lor11",
        "o11": "lor11",
        "heis3": "heis3",
    }
    if group.kind == "gds":
        if group.s != 1.0:
            raise ValueError("only the s=1 generalized doubly stochastic group has a catalog algebra")
        return Algebra.omega0(group.n)
    if group.kind not in mapping:
        raise ValueError(f"no catalog algebra for group kind {group.kind!r}")
    return Algebra(mapping[group.kind], group.n)


def _imag_mass(M: np.ndarray) -> float:
    return float(np.linalg.norm(M.imag)) if np.iscomplexobj(M) else 0.0


def _group_residual(M: np.ndarray, group: Group) -> float:
    n = group.n
    eye = np.eye(n)
    kind = group.kind
    if kind == "gl":
        return 0.0 if is_nonsingular(M) else math.inf
    if kind == "sl":
        return float(abs(np.linalg.det(M) - 1.0))
    if kind == "o":
        return max(_imag_mass(M), frob_norm(M.real.T @ M.real - eye))
    if kind == "so":
        orth = frob_norm(M.real.T @ M.real - eye)
        return max(_imag_mass(M), orth, float(abs(np.linalg.det(M.real) - 1.0)))
    if kind == "u":
        return frob_norm(M.conj().T @ M - eye)
    if kind == "su":
        return max(frob_norm(M.conj().T @ M - eye), float(abs(np.linalg.det(M) - 1.0)))
    if kind == "stochastic":
        if not is_nonsingular(M):
            return math.inf
        rows = float(np.max(np.abs(M.real.sum(axis=1) - 1.0)))
        return max(_imag_mass(M), rows)
    if kind == "gds":
        if not is_nonsingular(M):
            return math.inf
        rows = float(np.max(np.abs(M.real.sum(axis=1) - group.s)))
        cols = float(np.max(np.abs(M.real.sum(axis=0) - group.s)))
        return max(_imag_mass(M), rows, cols)
    if kind == "lorentz11":
        A = M.real
        return max(
            _imag_mass(M),
            float(abs(A[0, 0] - A[1, 1])),
            float(abs(A[0, 1] - A[1, 0])),
            float(abs(A[0, 0] ** 2 - A[0, 1] ** 2 - 1.0)),
            max(0.0, 1.0 - float(A[0, 0])),
        )
    if kind == "o11":
        J = np.diag([1.0, -1.0])
        return max(_imag_mass(M), frob_norm(M.real.T @ J @ M.real - J))
    if kind == "heis3":
        A = M.real
        proj = np.triu(A, 1) + np.eye(3)
        return max(_imag_mass(M), frob_norm(A - proj))
    if kind == "affine":
        last = np.zeros(n, dtype=M.dtype)
        last[-1] = 1.0
        defect = float(np.linalg.norm(M[:, -1] - last))
        if n > 1 and not is_nonsingular(M[: n - 1, : n - 1]):
            return math.inf
        return defect
    raise AssertionError(kind)


def in_group(M, group: Group, tol: float = 1e-9) -> MembershipReport:
    """Membership of M in the group, with the defect norm as residual."""
    M = as_matrix(M)
    if M.shape[0] != group.n:
        raise DimensionMismatch(f"matrix is {M.shape[0]}x{M.shape[0]}, group fixes n={group.n}")
    residual = _group_residual(M, group)
    component = None
    if is_real(M, 0.0):
        d = float(np.linalg.det(M.real))
        if is_nonsingular(M):
            component = 1 if d > 0 else -1
    return MembershipReport(bool(residual <= tol), float(residual), component)


def _algebra_residual(X: np.ndarray, algebra: Algebra) -> float:
    kind = algebra.kind
    if kind == "gl":
        return 0.0
    if kind == "sl":
        return float(abs(np.trace(X)))
    if kind == "so":
        return max(_imag_mass(X), frob_norm(X.real + X.real.T))
    if kind == "u":
        return frob_norm(X + X.conj().T)
    if kind == "su":
        return max(frob_norm(X + X.conj().T), float(abs(np.trace(X))))
    if kind == "rate":
        A = X.real
        off = A - np.diag(np.diag(A))
        neg = max(0.0, -float(off.min()))
        rows = float(np.max(np.abs(A.sum(axis=1))))
        return max(_imag_mass(X), neg, rows)
    if kind == "omega0":
        A = X.real
        rows = float(np.max(np.abs(A.sum(axis=1))))
        cols = float(np.max(np.abs(A.sum(axis=0))))
        return max(_imag_mass(X), rows, cols)
    if kind == "heis3":
        A = X.real
        return max(_imag_mass(X), frob_norm(A - np.triu(A, 1)))
    if kind == "lor11":
        A = X.real
        return max(
            _imag_mass(X),
            float(abs(A[0, 0])),
            float(abs(A[1, 1])),
            float(abs(A[0, 1] - A[1, 0])),
        )
    raise AssertionError(kind)


def in_algebra(X, algebra: Algebra, tol: float = 1e-9) -> MembershipReport:
    """Membership of X in the Lie algebra, with the defect norm as residual."""
    X = as_matrix(X)
    if X.shape[0] != algebra.n:
        raise DimensionMismatch(f"matrix is {X.shape[0]}x{X.shape[0]}, algebra fixes n={algebra.n}")
    residual = _algebra_residual(X, algebra)
    return MembershipReport(bool(residual <= tol), float(residual))


def connected_component_sign(M) -> int:
    """Sign of det(M) for real nonsingular M: which GL_n(R) component it is in."""
    M = as_matrix(M)
    if not is_real(M, 0.0):
        raise ValueError("connected components by determinant sign need a real matrix")
    if not is_nonsingular(M, SINGULAR_TOL):
        raise SingularMatrix("determinant too close to zero to classify a component")
    return 1 if float(np.linalg.det(M.real)) > 0 else -1


def heisenberg_exp(a: float, b: float, c: float) -> np.ndarray:
    """Exponential of the Heisenberg generator [[0,a,b],[0,0,c],[0,0,0]].

    The generator is nilpotent of index 3, so the series terminates and the
    result is the unitriangular matrix with entries (a, b + a*c/2, c).
    """
    return np.array([
        [1.0, a, b + 0.5 * a * c],
        [0.0, 1.0, c],
        [0.0, 0.0, 1.0],
    ])


def sl2_iwasawa(alpha: float, beta: float, delta: float) -> np.ndarray:
    """Iwasawa-factorized SL2(R) element: rotation, diagonal, unipotent shear.

    The factors are the exponentials of the basis E21 - E12, E11 - E22 and
    E12; the determinant is 1 for every parameter triple.
    """
    ca, sa = math.cos(alpha), math.sin(alpha)
    R = np.array([[ca, -sa], [sa, ca]])
    D = np.diag([math.exp(beta), math.exp(-beta)])
    N = np.array([[1.0, delta], [0.0, 1.0]])
    return R @ D @ N


_O11_FACTORS = {
    1: np.eye(2),
    2: -np.eye(2),
    3: np.diag([1.0, -1.0]),
    4: np.diag([-1.0, 1.0]),
}


def o11_factor(i: int) -> np.ndarray:
    """Coset representative A_i of the i-th connected component of O(1,1)."""
    if i not in _O11_FACTORS:
        raise ValueError("component index must be in 1..4")
    return _O11_FACTORS[i].copy()


def o11_element(i: int, t: float) -> np.ndarray:
    """A_i times the boost [[cosh t, sinh t], [sinh t, cosh t]].

    The four curves occupy the four components of O(1,1), classified by
    the pair (sign of det, sign of the (1,1) entry).
    """
    c, s = math.cosh(t), math.sinh(t)
    return o11_factor(i) @ np.array([[c, s], [s, c]])


def stochastic_affine_embed(M, tol: float = 1e-9) -> np.ndarray:
    """Conjugate a stochastic-group element to its affine normal form.

    Uses the basis (e_1, ..., e_{n-1}, ones): since M maps the all-ones
    vector to itself, the conjugate Q^{-1} M Q has last column e_n.  The
    map is multiplicative, realizing S(n, R) inside the affine pattern.
    Raises NotStochastic when M fails the S(n, R) membership check.
    """
    M = as_matrix(M)
    n = M.shape[0]
    rep = in_group(M, Group.stochastic(n), tol)
    if not rep.belongs:
        raise NotStochastic(f"not in the stochastic group (residual {rep.residual:.3e})")
    Q = np.eye(n)
    Q[:, -1] = 1.0
    return np.linalg.solve(Q, M.real @ Q)
