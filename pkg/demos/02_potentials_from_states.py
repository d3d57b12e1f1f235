"""
Designing potentials around a chosen state
==========================================

The explicit route to quasi-exact solvability runs the usual task
backwards: pick the wavefunction first, then solve for the potentials
that make it an exact bound state.  For the first-order Dirac pair the
answer is a pointwise formula; no equation ever needs to be solved.
"""

import numpy as np

from qedirac import (
    CentrifugalTerm,
    make_grid,
    parse,
    potentials_from_ansatz,
    riccati_potential,
    sample_expression,
    screened_model,
)

grid = make_grid(1e-6, 40.0, 4000, "geometric")

# Take the screened model's closed-form pair (f0, g0) as the target state
# and ask which (V, W) make it exact at E0.  Up to differentiation error
# the answer must be the model's own potentials.
system, state, _ = screened_model(
    eps=1, t=0.5, lam=1.0, h=0.2, mu=1.2, kappa=1.0, grid=grid
)
V, W = potentials_from_ansatz(
    state.f, state.g, CentrifugalTerm(1.0).sample(grid), system.M, state.E
)
interior = slice(2, -2)
err_V = np.max(
    np.abs(V.values - system.V.values)[interior]
    / (1.0 + np.abs(system.V.values[interior]))
)
err_W = np.max(
    np.abs(W.values - system.W.values)[interior]
    / (1.0 + np.abs(system.W.values[interior]))
)
print("recovered V relative error:", err_V)
print("recovered W relative error:", err_W)

# The same idea one derivative lower: from a log-derivative F = u'/u the
# Schroedinger potential is V = E0 - l(l+1)/r^2 + F^2 + F'.  Feeding the
# hydrogen ground-state log-derivative returns the Coulomb potential.
sgrid = make_grid(0.5, 8.0, 801, "uniform")
F = sample_expression(parse("1/r - 0.5"), sgrid)
V_coulomb = riccati_potential(F, -0.25, 0)
print(
    "riccati Coulomb error:",
    np.max(np.abs(V_coulomb.values + 1.0 / sgrid.r) * sgrid.r),
)

# A Gaussian profile (F = -r/2) gives back the harmonic well r^2/4.
F_h = sample_expression(parse("-0.5*r"), sgrid)
V_harmonic = riccati_potential(F_h, 0.5, 0)
print(
    "riccati harmonic error:",
    np.max(np.abs(V_harmonic.values - sgrid.r**2 / 4.0)),
)
