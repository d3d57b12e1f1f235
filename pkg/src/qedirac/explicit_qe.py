"""Direct construction of potentials from a tentative bound state.

Given nodeless spinor samples (f0, g0), a centrifugal term U and target
constants (M0, E0), the Dirac pair can be solved algebraically for the
unique potentials (V, W) that make (f0, g0, E0) an exact solution:

    W = -M0 - [ (f0' - U f0)/g0 + (g0' + U g0)/f0 ] / 2
    V = -E0 + [ (f0' - U f0)/g0 - (g0' + U g0)/f0 ] / 2

The non-relativistic analogue reconstructs a Schroedinger potential from
a radial logarithmic derivative F = u'/u:

    V = E0 - ell(ell+1)/r^2 + F^2 + F'
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ZeroNodeError
from .grid import RadialFunction, derivative

__all__ = ["potentials_from_ansatz", "riccati_potential"]

_TINY = 1e-300


def potentials_from_ansatz(
    f0: RadialFunction,
    g0: RadialFunction,
    U: RadialFunction,
    M0: float,
    E0: float,
) -> tuple[RadialFunction, RadialFunction]:
    """Solve for (V, W) such that (f0, g0, E0) solves the system exactly.

    The ansatz must be nodeless: both components are divided by, so any
    sample with magnitude below 1e-300 is rejected.

    Raises
    ------
    ZeroNodeError
        Naming the first node where |f0| or |g0| < 1e-300.
    DomainError
        If the three functions do not share one grid.
    """
    if not (f0.grid is g0.grid is U.grid):
        raise DomainError("f0, g0, U must share one grid")
    for name, F in (("f0", f0), ("g0", g0)):
        small = np.flatnonzero(np.abs(F.values) < _TINY)
        if small.size:
            node = int(small[0])
            raise ZeroNodeError(
                f"{name} vanishes at node {node} (r = {F.grid.r[node]:.6g}); "
                "the ansatz must be nodeless",
                node,
            )
    df = derivative(f0).values
    dg = derivative(g0).values
    u = U.values
    lhs_f = (df - u * f0.values) / g0.values  # equals -(M0 + W) + (E0 + V)
    lhs_g = (dg + u * g0.values) / f0.values  # equals -(M0 + W) - (E0 + V)
    W = RadialFunction(f0.grid, -M0 - 0.5 * (lhs_f + lhs_g))
    V = RadialFunction(f0.grid, -E0 + 0.5 * (lhs_f - lhs_g))
    return V, W


def riccati_potential(F: RadialFunction, E0: float, ell: int) -> RadialFunction:
    """Non-relativistic potential with u = exp(integral of F) as eigenstate.

    Returns V = E0 - ell(ell+1)/r^2 + F^2 + F', the potential whose radial
    Schroedinger problem at angular momentum ell has energy E0 with
    logarithmic derivative F.
    """
    dF = derivative(F).values
    r = F.grid.r
    values = E0 - ell * (ell + 1) / (r * r) + F.values * F.values + dF
    return RadialFunction(F.grid, values)
