"""Dense real/complex matrix kernel.

Matrices throughout the library are plain numpy arrays, square, with finite
entries, dtype float64 for real data and complex128 otherwise.  Ordinary
arithmetic (products, sums, scaling, transposes, traces) is numpy's own;
this module adds the pieces everything else is built on: validation, the
matrix exponential, determinant-based nonsingularity decisions, and a
guaranteed upper estimate of the spectral radius.

All functions are pure and never mutate their arguments.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NonFiniteInput, SingularMatrix

# A matrix counts as numerically singular when the determinant of its
# entry-normalized copy (largest |entry| scaled to 1) falls at or below this.
SINGULAR_TOL = 1e-12

# Order-13 diagonal Pade approximant of exp.  _PADE13_THETA is the largest
# 1-norm for which the approximant alone stays at double-precision accuracy;
# larger inputs are halved k times first and the result squared k times.
_PADE13_THETA = 5.371920351148152
_PADE13_B = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and coerce `a` to a square float64/complex128 array.

    Raises DimensionMismatch for non-square input and NonFiniteInput when
    any entry is NaN or infinite.
    """
    M = np.asarray(a)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"{name} must be square, got shape {M.shape}")
    if np.iscomplexobj(M):
        M = M.astype(np.complex128, copy=False)
    else:
        M = M.astype(np.float64, copy=False)
    if not np.all(np.isfinite(M)):
        raise NonFiniteInput(f"{name} has non-finite entries")
    return M


def as_vector(a, n: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate a length-n coordinate vector (float64 or complex128)."""
    x = np.asarray(a)
    if x.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {x.shape}")
    if n is not None and x.shape[0] != n:
        raise DimensionMismatch(f"{name} has length {x.shape[0]}, expected {n}")
    if np.iscomplexobj(x):
        x = x.astype(np.complex128, copy=False)
    else:
        x = x.astype(np.float64, copy=False)
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput(f"{name} has non-finite entries")
    return x


def is_real(M, tol: float = 0.0) -> bool:
    """True when every imaginary part is at most `tol` in magnitude."""
    M = np.asarray(M)
    if not np.iscomplexobj(M):
        return True
    return bool(np.max(np.abs(M.imag)) <= tol)


def frob_norm(M) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(M)))


def one_norm(M) -> float:
    """Induced 1-norm (maximum absolute column sum)."""
    return float(np.abs(np.asarray(M)).sum(axis=0).max())


def expm(X) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Pade(13,13) core.

    The input 1-norm decides the number k of halvings so that
    ||X / 2**k|| <= _PADE13_THETA; the approximant is then squared k times.
    Relative accuracy against the truncated-series oracle is ~1e-15 on
    well-conditioned inputs.
    """
    X = as_matrix(X)
    n = X.shape[0]
    eye = np.eye(n, dtype=X.dtype)
    nrm = one_norm(X)
    if nrm == 0.0:
        return eye.copy()
    squarings = 0
    if nrm > _PADE13_THETA:
        squarings = int(np.ceil(np.log2(nrm / _PADE13_THETA)))
    A = X / (2.0**squarings)
    b = _PADE13_B
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * eye)
    V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
         + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * eye)
    E = np.linalg.solve(V - U, V + U)
    for _ in range(squarings):
        E = E @ E
    return E


def det(M):
    """Determinant via pivoted LU elimination.

    Returns a float for real input, complex otherwise.
    """
    M = as_matrix(M)
    d = np.linalg.det(M)
    return complex(d) if np.iscomplexobj(M) else float(d)


def _scaled_abs_det(M: np.ndarray) -> float:
    # |det| of the entry-normalized matrix; scale-invariant singularity gauge.
    scale = np.max(np.abs(M))
    if scale == 0.0:
        return 0.0
    return float(abs(np.linalg.det(M / scale)))


def is_nonsingular(M, tol: float = SINGULAR_TOL) -> bool:
    """Decide invertibility on the entry-normalized determinant.

    Near-singular matrices (scaled |det| <= tol) are classified singular.
    """
    return _scaled_abs_det(as_matrix(M)) > tol


def inv(M) -> np.ndarray:
    """Inverse of a matrix that passes `is_nonsingular`.

    Raises SingularMatrix otherwise.  Satisfies M @ inv(M) = I to ~1e-10
    on reasonably conditioned inputs.
    """
    M = as_matrix(M)
    if not is_nonsingular(M):
        raise SingularMatrix("matrix is singular or too close to singular to invert")
    return np.linalg.solve(M, np.eye(M.shape[0], dtype=M.dtype))


def spectral_radius_estimate(M, squarings: int = 8) -> float:
    """Upper estimate of the spectral radius via repeated squaring.

    Returns ||M**(2**k)||**(1/2**k) in the 1-norm after k squarings
    (default 8, i.e. the 256th power, renormalized in log space to avoid
    overflow).  The value always lies between rho(M) and ||M||, so 1 over
    it is a safe nonsingularity radius for I + t*M.
    """
    M = as_matrix(M)
    nu = one_norm(M)
    if nu == 0.0:
        return 0.0
    B = M / nu
    log_scale = float(np.log(nu))  # log ||M**(2**k)||, maintained per squaring
    for k in range(1, squarings + 1):
        B = B @ B
        c = one_norm(B)
        if c == 0.0:
            return 0.0
        B = B / c
        log_scale = 2.0 * log_scale + float(np.log(c))
        # invariant: M**(2**k) = exp(log_scale) * B with ||B|| = 1
    return float(np.exp(log_scale / 2.0**squarings))
