"""Bound-state doublets: two energies sharing one potential pair.

A doublet is a pair of states at energies E1 and E2 = E1 + delta whose
systems share the same U, V, W and mass M.  Writing the ratio logs of the
two branches as

    Xi1 = b - a,   Xi2 = b + a        (a, b free shape functions,
                                       a(r_min) = b(r_min) = 0)

the shared-potential requirement reduces to one pointwise-linear 2x2
system for (Y1, Y2), whose closed solution is

    Y1 + Y2 = delta*cosh(b)/sinh(a) - a'*cosh(a)/sinh(a)
    Y1 - Y2 = delta*sinh(b)/cosh(a) + (b' - 2U)*sinh(a)/cosh(a)

with Z1 = (b'-a')/2, Z2 = (a'+b')/2.  :func:`doublet_pointwise_oracle`
solves the underlying 2x2 system directly (in extended precision) as a
brute-force reference; :func:`doublet_systems` reconstructs both
potential pairs and reports how far they are from identical.

The closed forms are odd under the double reflection
(b, U) -> (-b, -U): it exchanges the two branches via
(Y1, Y2, Z1, Z2) -> (Y2, Y1, -Z2, -Z1), which at the spinor level swaps
upper and lower components between the branches.  The arithmetic here is
arranged so that this holds bit-for-bit, not merely to round-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateShapeError, DomainError, SingularSystemError
from .expr import Expression, sample_expression
from .grid import (
    RadialFunction,
    RadialGrid,
    cumulative_integral_highorder,
    derivative,
)
from .implicit_qe import (
    LogDerivatives,
    RadialInput,
    _integrate_spinors,
    _sample_input,
    reconstruct_potentials,
)
from .models import CentrifugalTerm, DiracSystem, SpinorSolution

__all__ = [
    "DoubletShape",
    "doublet_logderivatives",
    "doublet_pointwise_oracle",
    "doublet_systems",
    "nonrel_doublet_residual",
]

_SINH_FLOOR = 1e-12
_ORIGIN_TOL = 1e-3


@dataclass(frozen=True)
class DoubletShape:
    """Free functions a(r), b(r), energy split delta, base energy, mass.

    Both shape functions must vanish at r_min (they are running
    integrals of log-derivative differences starting there), and a must
    be nonzero at every interior node: sinh(a) is divided by.
    """

    a: Expression
    b: Expression
    delta: float
    E1: float
    M: float

    def __post_init__(self):
        for name in ("delta", "E1", "M"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")

    @property
    def E2(self) -> float:
        return self.E1 + self.delta


def _sample_shape_raw(
    d: DoubletShape, grid: RadialGrid
) -> tuple[np.ndarray, np.ndarray]:
    a_s = sample_expression(d.a, grid).values
    b_s = sample_expression(d.b, grid).values
    for name, s in (("a", a_s), ("b", b_s)):
        tol = _ORIGIN_TOL * max(1.0, float(np.max(np.abs(s))))
        if abs(s[0]) > tol:
            raise DomainError(
                f"{name}(r_min) = {s[0]:.6g} but shape functions must vanish "
                "at r_min (they are integrals from r_min)"
            )
    return a_s, b_s


def _sample_shape(d: DoubletShape, grid: RadialGrid) -> tuple[np.ndarray, np.ndarray]:
    a_s, b_s = _sample_shape_raw(d, grid)
    sha = np.sinh(a_s)
    degenerate = [i for i in np.flatnonzero(np.abs(sha) < _SINH_FLOOR) if i > 0]
    if abs(sha[0]) < 1e-30:
        degenerate.insert(0, 0)
    if degenerate:
        raise DegenerateShapeError(
            "sinh(a) vanishes on the grid; the closed doublet forms divide by it",
            [int(i) for i in degenerate],
        )
    return a_s, b_s


def doublet_logderivatives(
    d: DoubletShape, U: RadialInput, grid: RadialGrid
) -> tuple[RadialFunction, RadialFunction, RadialFunction, RadialFunction]:
    """Closed-form (Y1, Y2, Z1, Z2) of the doublet branches.

    Raises
    ------
    DegenerateShapeError
        Naming nodes where |sinh a| < 1e-12 (the forms are genuinely
        singular at a = 0; no regularization is attempted).
    DomainError
        If a or b fails to vanish at r_min.
    """
    u, _ = _sample_input(U, grid)
    a_s, b_s = _sample_shape(d, grid)
    da = derivative(RadialFunction(grid, a_s)).values
    db = derivative(RadialFunction(grid, b_s)).values
    # These exact arithmetic forms keep the (b, U) -> (-b, -U) reflection
    # bitwise: each term is either even in (b, U) or an exact negation.
    Z1 = 0.5 * (db - da)
    Z2 = 0.5 * (da + db)
    sha, cha = np.sinh(a_s), np.cosh(a_s)
    shb, chb = np.sinh(b_s), np.cosh(b_s)
    sum_y = (d.delta * chb - da * cha) / sha
    diff_y = d.delta * shb / cha + (db - 2.0 * u) * sha / cha
    Y1 = 0.5 * (sum_y + diff_y)
    Y2 = 0.5 * (sum_y - diff_y)
    return (
        RadialFunction(grid, Y1),
        RadialFunction(grid, Y2),
        RadialFunction(grid, Z1),
        RadialFunction(grid, Z2),
    )


def doublet_pointwise_oracle(
    d: DoubletShape, U: RadialInput, grid: RadialGrid
) -> tuple[RadialFunction, RadialFunction]:
    """Brute-force (Y1, Y2): solve the shared-potential 2x2 system per node.

    Equating the potential reconstructions of the two branches (energies
    E1 and E1+delta, shared V, W, M) gives, at every node,

        sinh(Xi1) Y1 - sinh(Xi2) Y2 = -delta - cosh(Xi1)(Z1-U) + cosh(Xi2)(Z2-U)
        cosh(Xi1) Y1 - cosh(Xi2) Y2 = sinh(Xi2)(Z2-U) - sinh(Xi1)(Z1-U)

    solved here by Cramer's rule in extended precision (the determinant
    sinh(2a) is small near r_min, where float64 would lose digits).

    Raises
    ------
    SingularSystemError
        Naming nodes where |sinh 2a| < 1e-12.
    """
    u, _ = _sample_input(U, grid)
    a_s, b_s = _sample_shape_raw(d, grid)
    da = derivative(RadialFunction(grid, a_s)).values
    db = derivative(RadialFunction(grid, b_s)).values

    ld = np.longdouble
    a_l, b_l, u_l = a_s.astype(ld), b_s.astype(ld), u.astype(ld)
    z1 = ld(0.5) * (db.astype(ld) - da.astype(ld))
    z2 = ld(0.5) * (da.astype(ld) + db.astype(ld))
    xi1 = b_l - a_l
    xi2 = b_l + a_l
    det = np.sinh(ld(2.0) * a_l)  # = sinh(Xi2 - Xi1)
    singular = np.flatnonzero(np.abs(det) < _SINH_FLOOR)
    if singular.size:
        raise SingularSystemError(
            "sinh(2a) vanishes on the grid; the pointwise system is singular",
            singular.tolist(),
        )
    sh1, ch1 = np.sinh(xi1), np.cosh(xi1)
    sh2, ch2 = np.sinh(xi2), np.cosh(xi2)
    zu1 = z1 - u_l
    zu2 = z2 - u_l
    rhs1 = -ld(d.delta) - ch1 * zu1 + ch2 * zu2
    rhs2 = sh2 * zu2 - sh1 * zu1
    # Cramer for [[sh1, -sh2], [ch1, -ch2]] (y1, y2)^T = (rhs1, rhs2)^T
    # with det(matrix) = -sh1*ch2 + sh2*ch1 = sinh(xi2 - xi1) = det above.
    y1 = (sh2 * rhs2 - ch2 * rhs1) / det
    y2 = (sh1 * rhs2 - ch1 * rhs1) / det
    return (
        RadialFunction(grid, y1.astype(np.float64)),
        RadialFunction(grid, y2.astype(np.float64)),
    )


def doublet_systems(
    d: DoubletShape, U: RadialInput, grid: RadialGrid
) -> tuple[DiracSystem, SpinorSolution, SpinorSolution, float]:
    """Build the shared system and both branch states; report the mismatch.

    Each branch's ratio log is re-integrated from its Z by high-order
    quadrature, and (V, W) is reconstructed per branch — branch 1 with
    (E1, M), branch 2 with (E1+delta, M).  The returned system carries
    the branch-1 potentials.  ``mismatch`` is the max over nodes of

        (|V1-V2| + |W1-W2|) / (1 + |V1| + |V2| + |W1| + |W2|),

    the per-node relative disagreement of the two reconstructions (the
    potentials grow exponentially with the shape functions, so an
    absolute bound would be meaningless); for exact doublet shapes it is
    limited by derivative/quadrature truncation only.
    """
    u, u_fn = _sample_input(U, grid)
    a_s, b_s = _sample_shape(d, grid)
    Y1, Y2, Z1, Z2 = doublet_logderivatives(d, U, grid)

    branches = []
    for Yi, Zi, xi_seed, Ei in (
        (Y1, Z1, float(b_s[0] - a_s[0]), d.E1),
        (Y2, Z2, float(b_s[0] + a_s[0]), d.E2),
    ):
        Xi = cumulative_integral_highorder(
            RadialFunction(grid, 2.0 * Zi.values), seed=xi_seed
        )
        logs = LogDerivatives(
            RadialFunction(grid, Yi.values + Zi.values),
            RadialFunction(grid, Yi.values - Zi.values),
            Yi,
            Zi,
            Xi,
            xi_seed,
        )
        Vi, Wi = reconstruct_potentials(logs, U, Ei, d.M)
        sol = _integrate_spinors(
            grid, logs.F.values, logs.G.values, xi_seed, Ei
        )
        branches.append((logs, Vi, Wi, sol))

    (_, V1, W1, sol1), (_, V2, W2, sol2) = branches
    num = np.abs(V1.values - V2.values) + np.abs(W1.values - W2.values)
    den = (
        1.0
        + np.abs(V1.values)
        + np.abs(V2.values)
        + np.abs(W1.values)
        + np.abs(W2.values)
    )
    mismatch = float(np.max(num / den))

    system = DiracSystem(
        RadialFunction(grid, u),
        V1,
        W1,
        d.M,
        u_fn=U if not isinstance(U, RadialFunction) else None,
        kappa=U.kappa if isinstance(U, CentrifugalTerm) else None,
    )
    return system, sol1, sol2, mismatch


def nonrel_doublet_residual(
    F1: RadialFunction, F2: RadialFunction, E1: float, E2: float
) -> RadialFunction:
    """Non-relativistic shared-potential condition for two log-derivatives.

    Two radial Schroedinger states with log-derivatives F1, F2 share one
    potential exactly when

        (F1 - F2)' + (F1 - F2)(F1 + F2) - (E2 - E1) = 0

    pointwise; this returns that left-hand side.
    """
    if F1.grid is not F2.grid:
        raise DomainError("F1 and F2 must share one grid")
    diff = F1.values - F2.values
    total = F1.values + F2.values
    ddiff = derivative(RadialFunction(F1.grid, diff)).values
    return RadialFunction(F1.grid, ddiff + diff * total - (E2 - E1))
