"""Closed-form charts: the Heisenberg group and Iwasawa-factorized SL2(R).

Both groups admit explicit coordinates in which exponentials (or products
of exponentials) have closed forms, so whole families of algebra curves
can be written down with exact derivatives.
"""

import numpy as np

from evolflow import (
    AffineArg,
    Heisenberg,
    HeisenbergExp,
    Poly,
    Sl2Iwasawa,
    expm,
    heisenberg_exp,
    sl2_iwasawa,
)

# exp of the strictly upper triangular generator X(a,b,c) is exactly the
# unitriangular matrix with coordinates (a, b + ac/2, c): the series stops
# after the X^2 term.
a, b, c = 1.0, 0.0, 1.0
X = np.array([[0.0, a, b], [0.0, 0.0, c], [0.0, 0.0, 0.0]])
print("exp(X(1,0,1)) =")
print(expm(X))
print("chart value   =")
print(heisenberg_exp(a, b, c))

# The chart is a bijection: coordinates read straight off the matrix.
A = heisenberg_exp(0.3, -1.2, 2.0)
a2, c2 = A[0, 1], A[1, 2]
b2 = A[0, 2] - 0.5 * a2 * c2
print("\nround trip of (0.3, -1.2, 2.0):", (a2, b2, c2))

# Any differentiable coordinate functions give a curve in the group.
# Derivatives are exact because the coefficients come from a catalog.
curve = Heisenberg(AffineArg("sin"), Poly((0.0, 1.0)), AffineArg("cosh", 0.5))
print("\nHeisenberg curve at t=1:")
print(curve.value(1.0))
print("its exact derivative:")
print(curve.derivative(1.0))

# Exp-coordinates and group coordinates differ by the b + ac/2 shift.
lhs = HeisenbergExp(1.3, -0.4, 2.2)
rhs = Heisenberg(1.3, -0.4 + 0.5 * 1.3 * 2.2, 2.2)
print("\nexp-coordinates equal shifted group coordinates:",
      np.array_equal(lhs.value(0.7), rhs.value(0.7)))

# SL2(R): the exponential map is not onto (traces below -2 are missed),
# but every element factors as rotation * diagonal * shear.
M = sl2_iwasawa(2.8, 1.0, -0.5)
print("\nan SL2 element with trace", f"{np.trace(M):.3f}", "and det",
      f"{np.linalg.det(M):.15f}")

curve = Sl2Iwasawa(AffineArg("sin", 0.8), Poly((0.0, 0.4)), AffineArg("cos"))
t = 1.2
fd = (curve.value(t + 1e-6) - curve.value(t - 1e-6)) / 2e-6
print("SL2 curve derivative vs finite difference:",
      f"{np.linalg.norm(curve.derivative(t) - fd):.2e}")
