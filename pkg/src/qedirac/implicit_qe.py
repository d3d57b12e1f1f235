"""Implicit construction of solvable systems from log-derivative data.

Instead of guessing a spinor, the implicit route parametrizes the
logarithmic derivatives F = f'/f, G = g'/g through their half-sum
Y = (F+G)/2 and half-difference Z = (F-G)/2, together with the running
component-ratio log

    Xi(r) = ln(f/g) = xi0 + 2 * integral of Z from r_min.

Any exact bound state obeys the pointwise algebraic constraint

    (E+V)^2 + Y^2 = (M+W)^2 + (U-Z)^2,

and conversely every parametrization that enforces it yields a solvable
system.  Two such parametrizations are implemented:

* trigonometric: E+V = R cos A, M+W = R cos B, Y = R sin A,
  U-Z = R sin B with C = -(A+B)/2, Z = C'/sin 2C, R = (U-Z)/sin B, and
  the branch fixed so that tan C = exp(Xi) > 0;
* hyperbolic: Z = U + S sinh(T+Xi), Y = -S cosh(T+Xi),
  E+V = S sinh T, M+W = S cosh T, with Xi integrated from the ODE
  Xi' = 2U + 2S sinh(T+Xi) by classical fourth-order Runge-Kutta.

Each pipeline rebuilds the spinors from F and G, splits the sums E+V and
M+W into constants plus decaying potentials by a tail-mean convention
(:func:`split_energy`), and records residual diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (
    BlowUpError,
    BranchSingularityError,
    DomainError,
    IntegrationOverflowError,
    NegativeRatioError,
    NonFiniteError,
    NumericalError,
    SingularSampleError,
    TailNotFlatError,
    ZeroNodeError,
)
from .expr import Expression, sample_expression
from .grid import (
    RadialFunction,
    RadialGrid,
    cumulative_integral,
    definite_integral,
    derivative,
)
from .models import CentrifugalTerm, DiracSystem, SpinorSolution

__all__ = [
    "LogDerivatives",
    "TrigParametrization",
    "HyperbolicParametrization",
    "QEResult",
    "log_derivatives",
    "constraint_residual",
    "split_energy",
    "trig_pipeline",
    "hyperbolic_pipeline",
    "reconstruct_potentials",
]

_XI_HORIZON = 700.0  # |Xi| beyond which sinh/cosh(Xi) overflow float64
_BRANCH_FLOOR = 1e-8

RadialInput = Union[RadialFunction, CentrifugalTerm, Expression, Callable]


@dataclass(frozen=True, eq=False)
class LogDerivatives:
    """Log-derivative bundle F, G, Y, Z and the ratio log Xi.

    Xi[0] = xi0 = ln(f/g) at r_min.  When produced by
    :func:`log_derivatives`, Xi is the trapezoid cumulative integral of
    2Z; pipeline outputs carry the more accurate ODE-integrated Xi.  The
    two agree to integration truncation order.
    """

    F: RadialFunction
    G: RadialFunction
    Y: RadialFunction
    Z: RadialFunction
    Xi: RadialFunction
    xi0: float

    def __post_init__(self):
        g = self.F.grid
        if not (self.G.grid is g and self.Y.grid is g and self.Z.grid is g and self.Xi.grid is g):
            raise DomainError("F, G, Y, Z, Xi must share one grid")

    @property
    def grid(self) -> RadialGrid:
        return self.F.grid


@dataclass(frozen=True)
class TrigParametrization:
    """Angle functions A(r), B(r) of the trigonometric representation.

    The branch constant is fixed by the functions themselves:
    xi0 = ln tan C(r_min) with C = -(A+B)/2.  Supplying ``xi0`` is
    optional and only cross-checked against that value.
    """

    A: Expression
    B: Expression
    xi0: Optional[float] = None


@dataclass(frozen=True)
class HyperbolicParametrization:
    """Amplitude S(r), shift T(r), and ratio-log seed xi0 = ln(f/g)(r_min)."""

    S: Expression
    T: Expression
    xi0: float = 0.0


@dataclass(frozen=True, eq=False)
class QEResult:
    """Output of a construction pipeline.

    ``diagnostics`` is a read-only mapping with keys:

    - ``dirac_residual`` — first-order-pair residual norm of the spinors,
    - ``constraint_residual`` — max pointwise algebraic-constraint
      residual, normalized by 1 + the sum of its four squared terms,
    - ``tail_deviation_energy`` / ``tail_deviation_mass`` — sample std of
      E+V and M+W over the tail window,
    - ``tail_fraction`` — width of that window,
    - ``split_source`` — "tail-mean" or "hint" (caller-supplied E, M).
    """

    system: DiracSystem
    solution: SpinorSolution
    logs: LogDerivatives
    diagnostics: Mapping[str, object]

    def __post_init__(self):
        g = self.system.grid
        if not (self.solution.grid is g and self.logs.grid is g):
            raise DomainError("system, solution, logs must share one grid")

    @property
    def grid(self) -> RadialGrid:
        return self.system.grid


# --- helpers ----------------------------------------------------------------


def _nonzero_or_raise(name: str, F: RadialFunction):
    small = np.flatnonzero(np.abs(F.values) < 1e-300)
    if small.size:
        node = int(small[0])
        raise ZeroNodeError(
            f"{name} vanishes at node {node} (r = {F.grid.r[node]:.6g})", node
        )


def _sample_input(U: RadialInput, grid: RadialGrid) -> tuple[np.ndarray, Callable]:
    """Node samples of U plus a callable usable at off-node abscissae."""
    if isinstance(U, CentrifugalTerm):
        return U.sample(grid).values, U
    if isinstance(U, Expression):
        return sample_expression(U, grid).values, U
    if isinstance(U, RadialFunction):
        if U.grid is not grid:
            raise DomainError("U is sampled on a different grid")
        return U.values, CubicSpline(grid.r, U.values)
    if callable(U):
        vals = np.broadcast_to(
            np.asarray(U(grid.r), dtype=np.float64), grid.r.shape
        ).astype(np.float64)
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            raise SingularSampleError("U is singular on the grid", bad.tolist())
        return vals, U
    raise DomainError(f"cannot interpret {type(U).__name__} as a radial function")


def _midpoint_values(fn: Callable, rm: np.ndarray, what: str) -> np.ndarray:
    vals = np.broadcast_to(np.asarray(fn(rm), dtype=np.float64), rm.shape).astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        raise SingularSampleError(
            f"{what} is singular at inter-node abscissae (left node indices listed)",
            bad.tolist(),
        )
    return vals


def _tail_stats(values: np.ndarray, tail_fraction: float) -> tuple[float, float]:
    if not (0.0 < tail_fraction < 0.5):
        raise DomainError(f"tail_fraction must be in (0, 0.5), got {tail_fraction}")
    k = max(2, int(round(tail_fraction * values.size)))
    tail = values[-k:]
    return float(tail.mean()), float(tail.std(ddof=1))


def _split_sums(
    grid: RadialGrid,
    eplusv: np.ndarray,
    mplusw: np.ndarray,
    energy: Optional[float],
    mass: Optional[float],
    tail_fraction: float,
) -> tuple[float, RadialFunction, float, RadialFunction, float, float, str]:
    mean_e, dev_e = _tail_stats(eplusv, tail_fraction)
    mean_m, dev_m = _tail_stats(mplusw, tail_fraction)
    hinted = energy is not None or mass is not None
    if energy is None:
        if dev_e >= 1e-6 * (1.0 + abs(mean_e)):
            raise TailNotFlatError(
                f"E+V is not flat over the last {tail_fraction:.0%} of nodes "
                f"(std {dev_e:.3e}); pass the energy explicitly if it is known",
                dev_e,
            )
        energy = mean_e
    if mass is None:
        if dev_m >= 1e-6 * (1.0 + abs(mean_m)):
            raise TailNotFlatError(
                f"M+W is not flat over the last {tail_fraction:.0%} of nodes "
                f"(std {dev_m:.3e}); pass the mass explicitly if it is known",
                dev_m,
            )
        mass = mean_m
    V = RadialFunction(grid, eplusv - energy)
    W = RadialFunction(grid, mplusw - mass)
    return float(energy), V, float(mass), W, dev_e, dev_m, ("hint" if hinted else "tail-mean")


def _integrate_spinors(
    grid: RadialGrid, F: np.ndarray, G: np.ndarray, ln_ratio: float, E: float
) -> SpinorSolution:
    """Spinors from log-derivatives, unit-normalized, overflow-shifted.

    The component ratio f/g at r_min equals exp(ln_ratio); the log is
    split evenly between the components so that swapping (F, G) and
    negating ln_ratio swaps (f, g) bit-for-bit.
    """
    Lf = cumulative_integral(RadialFunction(grid, F), 0.0).values + 0.5 * ln_ratio
    Lg = cumulative_integral(RadialFunction(grid, G), 0.0).values - 0.5 * ln_ratio
    shift = max(float(Lf.max()), float(Lg.max()))
    with np.errstate(under="ignore"):
        f = np.exp(Lf - shift)
        g = np.exp(Lg - shift)
    norm = definite_integral(RadialFunction(grid, f * f + g * g))
    if not (math.isfinite(norm) and norm > 0.0):
        raise NumericalError(
            "spinor amplitudes underflow everywhere; cannot normalize"
        )
    s = 1.0 / math.sqrt(norm)
    return SpinorSolution(
        RadialFunction(grid, f * s), RadialFunction(grid, g * s), E
    )


def _diagnostics(
    system: DiracSystem,
    sol: SpinorSolution,
    logs: LogDerivatives,
    dev_e: float,
    dev_m: float,
    tail_fraction: float,
    source: str,
) -> Mapping[str, object]:
    from .solver import residual_norm  # one-way: solver never imports this module

    raw = constraint_residual(system, sol.E, logs).values
    scale = (
        1.0
        + (sol.E + system.V.values) ** 2
        + logs.Y.values ** 2
        + (system.M + system.W.values) ** 2
        + (system.U.values - logs.Z.values) ** 2
    )
    return MappingProxyType(
        {
            "dirac_residual": float(residual_norm(system, sol)),
            "constraint_residual": float(np.max(np.abs(raw) / scale)),
            "tail_deviation_energy": dev_e,
            "tail_deviation_mass": dev_m,
            "tail_fraction": tail_fraction,
            "split_source": source,
        }
    )


# --- operations -------------------------------------------------------------


def log_derivatives(sol: SpinorSolution) -> LogDerivatives:
    """F = f'/f, G = g'/g, their half-sum/difference, and Xi.

    Raises
    ------
    ZeroNodeError
        If f or g vanishes at any node (log-derivatives divide by them).
    NegativeRatioError
        If f/g at r_min is not positive: Xi = ln(f/g) needs a positive
        ratio; negative sectors map onto positive ones by flipping the
        sign of one component (and of E, V, M, W accordingly).
    """
    _nonzero_or_raise("f", sol.f)
    _nonzero_or_raise("g", sol.g)
    ratio0 = sol.f.values[0] / sol.g.values[0]
    if not (ratio0 > 0.0):
        raise NegativeRatioError(
            f"f/g at r_min is {ratio0:.6g}; the ratio log Xi = ln(f/g) "
            "requires a positive ratio"
        )
    grid = sol.grid
    F = derivative(sol.f).values / sol.f.values
    G = derivative(sol.g).values / sol.g.values
    Y = 0.5 * (F + G)
    Z = 0.5 * (F - G)
    xi0 = math.log(ratio0)
    Xi = xi0 + 2.0 * cumulative_integral(RadialFunction(grid, Z), 0.0).values
    return LogDerivatives(
        RadialFunction(grid, F),
        RadialFunction(grid, G),
        RadialFunction(grid, Y),
        RadialFunction(grid, Z),
        RadialFunction(grid, Xi),
        xi0,
    )


def constraint_residual(
    system: DiracSystem, E: float, logs: LogDerivatives
) -> RadialFunction:
    """Pointwise value of (E+V)^2 + Y^2 - (M+W)^2 - (U-Z)^2."""
    if system.grid is not logs.grid:
        raise DomainError("system and logs must share one grid")
    ev = E + system.V.values
    mw = system.M + system.W.values
    uz = system.U.values - logs.Z.values
    res = ev * ev + logs.Y.values ** 2 - mw * mw - uz * uz
    return RadialFunction(system.grid, res)


def split_energy(
    EplusV: RadialFunction, MplusW: RadialFunction, tail_fraction: float = 0.1
) -> tuple[float, RadialFunction, float, RadialFunction]:
    """Split the sums E+V and M+W into constants and decaying potentials.

    E is the mean of E+V over the last ``tail_fraction`` of nodes,
    accepted only if the sample standard deviation there is below
    1e-6 * (1 + |E|); likewise M.  Returns (E, V, M, W).

    Raises
    ------
    TailNotFlatError
        Carrying the measured deviation, if either tail fails the gate.
    """
    if EplusV.grid is not MplusW.grid:
        raise DomainError("E+V and M+W must share one grid")
    E, V, M, W, _, _, _ = _split_sums(
        EplusV.grid, EplusV.values, MplusW.values, None, None, tail_fraction
    )
    return E, V, M, W


def _branch_nodes(values: np.ndarray) -> list[int]:
    """Nodes violating a sin-branch condition: small values or crossings."""
    bad = set(np.flatnonzero(np.abs(values) < _BRANCH_FLOOR).tolist())
    crossings = np.flatnonzero(values[:-1] * values[1:] < 0.0)
    bad.update(crossings.tolist())
    bad.update((crossings + 1).tolist())
    return sorted(bad)


def trig_pipeline(
    p: TrigParametrization,
    U: RadialInput,
    grid: RadialGrid,
    *,
    energy: Optional[float] = None,
    mass: Optional[float] = None,
    tail_fraction: float = 0.1,
) -> QEResult:
    """Build a solvable system from angle functions A(r), B(r).

    With C = -(A+B)/2 the pipeline computes Z = C'/sin 2C,
    R = (U-Z)/sin B, then E+V = R cos A, M+W = R cos B, Y = R sin A.
    Spinors are rebuilt from F = Y+Z and G = Y-Z with component ratio
    f/g = tan C at r_min; E and M are split off by the tail convention
    unless ``energy``/``mass`` are supplied.

    Raises
    ------
    BranchSingularityError
        If sin 2C or sin B falls below 1e-8 or changes sign anywhere on
        the grid (the representation cannot cross branch boundaries).
    NegativeRatioError
        If tan C(r_min) <= 0: the branch convention requires
        tan C = exp(Xi) > 0.
    TailNotFlatError
        If the E/M split gate fails and no hint was given.
    """
    u_nodes, _ = _sample_input(U, grid)
    A = sample_expression(p.A, grid).values
    B = sample_expression(p.B, grid).values
    C = -0.5 * (A + B)
    sin2C = np.sin(2.0 * C)
    sinB = np.sin(B)
    bad = _branch_nodes(sin2C)
    if bad:
        raise BranchSingularityError(
            "sin 2C vanishes or changes sign on the grid; choose A, B "
            "that keep C inside one branch",
            bad,
        )
    bad = _branch_nodes(sinB)
    if bad:
        raise BranchSingularityError(
            "sin B vanishes or changes sign on the grid", bad
        )
    tanC0 = math.tan(C[0])
    if not (tanC0 > 0.0):
        raise NegativeRatioError(
            f"tan C(r_min) = {tanC0:.6g}; the branch convention requires "
            "tan C = exp(Xi) > 0 (shift A+B by a multiple of 2*pi)"
        )
    xi0 = math.log(tanC0)
    if p.xi0 is not None and abs(p.xi0 - xi0) > 1e-6 * (1.0 + abs(xi0)):
        raise DomainError(
            f"xi0 = {p.xi0} conflicts with ln tan C(r_min) = {xi0:.12g}; "
            "the angle functions fix the ratio constant"
        )

    dC = derivative(RadialFunction(grid, C)).values
    Z = dC / sin2C
    R = (u_nodes - Z) / sinB
    eplusv = R * np.cos(A)
    mplusw = R * np.cos(B)
    Y = R * np.sin(A)
    E, V, M, W, dev_e, dev_m, source = _split_sums(
        grid, eplusv, mplusw, energy, mass, tail_fraction
    )

    F = Y + Z
    G = Y - Z
    sol = _integrate_spinors(grid, F, G, xi0, E)
    Xi = xi0 + 2.0 * cumulative_integral(RadialFunction(grid, Z), 0.0).values
    logs = LogDerivatives(
        RadialFunction(grid, F),
        RadialFunction(grid, G),
        RadialFunction(grid, Y),
        RadialFunction(grid, Z),
        RadialFunction(grid, Xi),
        xi0,
    )
    system = DiracSystem(
        RadialFunction(grid, u_nodes),
        V,
        W,
        M,
        u_fn=U if not isinstance(U, RadialFunction) else None,
        kappa=U.kappa if isinstance(U, CentrifugalTerm) else None,
    )
    diag = _diagnostics(system, sol, logs, dev_e, dev_m, tail_fraction, source)
    return QEResult(system, sol, logs, diag)


def _rk4_xi(
    r: np.ndarray,
    u_n: np.ndarray,
    s_n: np.ndarray,
    t_n: np.ndarray,
    u_m: np.ndarray,
    s_m: np.ndarray,
    t_m: np.ndarray,
    xi0: float,
) -> np.ndarray:
    """Classical RK4 for Xi' = 2U + 2S sinh(T+Xi), node to node."""

    def rhs(u: float, s: float, t: float, x: float) -> float:
        a = t + x
        if abs(a) > _XI_HORIZON:
            return math.inf
        return 2.0 * u + 2.0 * s * math.sinh(a)

    n = r.size
    xi = np.empty(n)
    xi[0] = xi0
    for i in range(n - 1):
        h = r[i + 1] - r[i]
        x0 = xi[i]
        k1 = rhs(u_n[i], s_n[i], t_n[i], x0)
        k2 = rhs(u_m[i], s_m[i], t_m[i], x0 + 0.5 * h * k1)
        k3 = rhs(u_m[i], s_m[i], t_m[i], x0 + 0.5 * h * k2)
        k4 = rhs(u_n[i + 1], s_n[i + 1], t_n[i + 1], x0 + h * k3)
        x1 = x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not math.isfinite(x1) or abs(x1) > _XI_HORIZON:
            raise BlowUpError(
                f"Xi exceeds the overflow horizon {_XI_HORIZON:g} at node "
                f"{i + 1} (r = {r[i + 1]:.6g}); the ratio log diverges"
            )
        xi[i + 1] = x1
    return xi


def hyperbolic_pipeline(
    p: HyperbolicParametrization,
    U: RadialInput,
    grid: RadialGrid,
    *,
    energy: Optional[float] = None,
    mass: Optional[float] = None,
    tail_fraction: float = 0.1,
) -> QEResult:
    """Build a solvable system from amplitude S(r) and shift T(r).

    Integrates Xi' = 2U + 2S sinh(T+Xi) from Xi(r_min) = xi0 by
    classical fourth-order Runge-Kutta (functions evaluated at the
    half-step abscissae, not interpolated), then sets
    Z = U + S sinh(T+Xi), Y = -S cosh(T+Xi), E+V = S sinh T,
    M+W = S cosh T.  Spinors are rebuilt with ratio f/g = exp(xi0) at
    r_min; E/M split as in :func:`trig_pipeline`.

    Raises
    ------
    BlowUpError
        If |Xi| exceeds 700 before r_max.
    TailNotFlatError
        If the E/M split gate fails and no hint was given.
    """
    u_nodes, u_fn = _sample_input(U, grid)
    S_n = sample_expression(p.S, grid).values
    T_n = sample_expression(p.T, grid).values
    rm = 0.5 * (grid.r[:-1] + grid.r[1:])
    u_mid = _midpoint_values(u_fn, rm, "U")
    s_mid = _midpoint_values(p.S, rm, "S")
    t_mid = _midpoint_values(p.T, rm, "T")

    xi = _rk4_xi(grid.r, u_nodes, S_n, T_n, u_mid, s_mid, t_mid, float(p.xi0))

    arg = T_n + xi
    Z = u_nodes + S_n * np.sinh(arg)
    Y = -S_n * np.cosh(arg)
    eplusv = S_n * np.sinh(T_n)
    mplusw = S_n * np.cosh(T_n)
    E, V, M, W, dev_e, dev_m, source = _split_sums(
        grid, eplusv, mplusw, energy, mass, tail_fraction
    )

    F = Y + Z
    G = Y - Z
    sol = _integrate_spinors(grid, F, G, float(p.xi0), E)
    logs = LogDerivatives(
        RadialFunction(grid, F),
        RadialFunction(grid, G),
        RadialFunction(grid, Y),
        RadialFunction(grid, Z),
        RadialFunction(grid, xi),
        float(p.xi0),
    )
    system = DiracSystem(
        RadialFunction(grid, u_nodes),
        V,
        W,
        M,
        u_fn=U if not isinstance(U, RadialFunction) else None,
        kappa=U.kappa if isinstance(U, CentrifugalTerm) else None,
    )
    diag = _diagnostics(system, sol, logs, dev_e, dev_m, tail_fraction, source)
    return QEResult(system, sol, logs, diag)


def reconstruct_potentials(
    logs: LogDerivatives, U: RadialInput, E: float, M: float
) -> tuple[RadialFunction, RadialFunction]:
    """Recover (V, W) from log-derivative data by the hyperbolic inversion.

    E+V = cosh Xi * (Z-U) + sinh Xi * Y;
    M+W = -sinh Xi * (Z-U) - cosh Xi * Y; the given E, M are subtracted.

    Raises
    ------
    IntegrationOverflowError
        If |Xi| exceeds 700 anywhere (cosh/sinh overflow).
    """
    grid = logs.grid
    u_nodes, _ = _sample_input(U, grid)
    xi = logs.Xi.values
    big = np.flatnonzero(np.abs(xi) > _XI_HORIZON)
    if big.size:
        raise IntegrationOverflowError(
            f"|Xi| exceeds {_XI_HORIZON:g} at {big.size} nodes (first: node "
            f"{int(big[0])}, r = {grid.r[int(big[0])]:.6g})"
        )
    ch = np.cosh(xi)
    sh = np.sinh(xi)
    zu = logs.Z.values - u_nodes
    y = logs.Y.values
    V = RadialFunction(grid, ch * zu + sh * y - E)
    W = RadialFunction(grid, -sh * zu - ch * y - M)
    return V, W
