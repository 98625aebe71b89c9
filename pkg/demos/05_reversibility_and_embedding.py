"""Reversible chains, truncation, and the stochastic-to-affine embedding.

Birth-death chains satisfy detailed balance with the product-formula
stationary distribution; restricting such a chain to a window of states
keeps it reversible.  Separately, every stochastic-group element is an
affine map in disguise: conjugating by (e_1, ..., e_{n-1}, ones) pins the
last column to e_n.
"""

import numpy as np

from evolflow import (
    Group,
    StationaryDistribution,
    birth_death_rate,
    detailed_balance,
    in_group,
    semigroup_at,
    stochastic_affine_embed,
    truncate_reversible,
    validate_rate,
)

# A five-state birth-death chain.
births = [1.0, 2.0, 0.5, 1.5]
deaths = [0.7, 1.1, 2.0, 0.9]
rate = birth_death_rate(births, deaths)
print("birth-death generator:")
print(rate.Q)

# pi_{i+1} / pi_i = births_i / deaths_i gives the reversible distribution.
pi = np.ones(5)
for i in range(4):
    pi[i + 1] = pi[i] * births[i] / deaths[i]
pi /= pi.sum()
stationary = StationaryDistribution(pi)
print("\nstationary distribution:", np.round(pi, 4))
print("detailed balance:", detailed_balance(rate, stationary, 1e-12))

# Truncate to the first three states: still a generator, still reversible
# for the renormalized restriction (balance is a pairwise condition).
window = [0, 1, 2]
sub = truncate_reversible(rate, window)
print("\ntruncated generator:")
print(sub.Q)
print("still reversible:",
      detailed_balance(sub, stationary.restrict(window), 1e-12).passed)

# A cycle with one-way rates breaks detailed balance even with uniform pi.
cycle = np.zeros((3, 3))
cycle[0, 1] = cycle[1, 2] = cycle[2, 0] = 1.0
np.fill_diagonal(cycle, -cycle.sum(axis=1))
rep = detailed_balance(validate_rate(cycle), StationaryDistribution(np.ones(3) / 3))
print("\nthree-cycle balance defect:", rep.defect, "passed:", rep.passed)

# Transition matrices are stochastic-group elements; conjugation exposes
# the affine normal form (last column e_n), and the map respects products.
A = semigroup_at(rate, 0.8).matrix
E = stochastic_affine_embed(A)
print("\nembedded transition matrix (last column is e_5):")
print(np.round(E, 4))
print("affine pattern membership:", in_group(E, Group.affine(5)).belongs)

B = semigroup_at(rate, 0.4).matrix
lhs = stochastic_affine_embed(A @ B)
rhs = stochastic_affine_embed(A) @ stochastic_affine_embed(B)
print("multiplicativity defect:", f"{np.linalg.norm(lhs - rhs):.2e}")
