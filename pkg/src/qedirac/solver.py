"""Independent verification of candidate bound states by shooting.

Nothing here reuses construction-side quantities: the first-order pair

    f' = U f - (M + W - E - V) g
    g' = -(M + W + E + V) f - U g

is integrated outward from the small-r power-law behavior and inward
from the decaying large-r behavior, and an energy is accepted exactly
when the two halves are linearly dependent at a matching node (vanishing
Wronskian-like determinant D(E)).  Residual operations measure how well
a candidate (f, g, E) satisfies the pair on the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (
    DomainError,
    IntegrationOverflowError,
    MaxIterationsError,
    NonDecayingTailError,
    NonRegularError,
    NoSignChangeError,
)
from .grid import RadialFunction, derivative
from .models import DiracSystem, SpinorSolution

__all__ = [
    "ShootingConfig",
    "dirac_rhs",
    "indicial_start",
    "matching_determinant",
    "find_eigenvalue",
    "residual_rows",
    "residual_norm",
    "energy_scan",
]


@dataclass(frozen=True)
class ShootingConfig:
    """Search window and numerical knobs for the shooting verifier.

    ``match_index = None`` selects the matching node automatically (the
    node where a trial outward integration is largest, excluding the
    spurious growth zone near r_max).  ``tail_tol`` gates how small
    |V|, |W| must be at r_max, relative to 1 + |E|, for the constant
    -coefficient inward start to be meaningful; the start-ratio error it
    admits decays like exp(-2*lambda*(r_max - r_match)) and is far below
    e_tol for any reasonable domain.
    """

    e_bracket: tuple[float, float]
    match_index: Optional[int] = None
    e_tol: float = 1e-10
    max_iter: int = 200
    tail_tol: float = 0.1

    def __post_init__(self):
        lo, hi = self.e_bracket
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"bad energy bracket {self.e_bracket}")
        if not (self.e_tol > 0.0):
            raise DomainError(f"e_tol must be positive, got {self.e_tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")
        if not (self.tail_tol > 0.0):
            raise DomainError(f"tail_tol must be positive, got {self.tail_tol}")
        if self.match_index is not None and self.match_index < 0:
            raise DomainError(f"match_index must be >= 0, got {self.match_index}")


# --- pointwise right-hand side ----------------------------------------------


def _evaluators(system: DiracSystem):
    """Callables (u, v, w)(r): closed forms when present, cubic otherwise."""
    r = system.grid.r

    def make(fn, samples):
        if fn is not None:
            return fn
        return CubicSpline(r, samples)

    return (
        make(system.u_fn, system.U.values),
        make(system.v_fn, system.V.values),
        make(system.w_fn, system.W.values),
    )


def dirac_rhs(
    system: DiracSystem, E: float, r: float, f: float, g: float
) -> tuple[float, float]:
    """(f', g') of the first-order pair at radius r.

    Potentials are taken from the system's closed forms when available
    and cubic interpolation of the grid samples otherwise.
    """
    if not (r > 0.0):
        raise DomainError(f"r must be positive, got {r}")
    u_of, v_of, w_of = _evaluators(system)
    u, v, w = float(u_of(r)), float(v_of(r)), float(w_of(r))
    M = system.M
    df = u * f - (M + w - E - v) * g
    dg = -(M + w + E + v) * f - u * g
    return df, dg


def indicial_start(kappa: float, alpha: float, beta: float) -> tuple[float, float]:
    """Small-r exponent and component ratio for U ~ kappa/r, V ~ alpha/r,
    W ~ beta/r.

    Returns (mu, ratio) with mu = sqrt(kappa^2 + beta^2 - alpha^2) and
    ratio = g/f as r -> 0.

    Raises
    ------
    NonRegularError
        If kappa^2 + beta^2 - alpha^2 <= 0 (no power-law regular
        solution exists).
    """
    rad = kappa * kappa + beta * beta - alpha * alpha
    if rad <= 0.0:
        raise NonRegularError(
            f"kappa^2 + beta^2 - alpha^2 = {rad:.6g} <= 0: no regular "
            "power-law behavior at the origin"
        )
    mu = math.sqrt(rad)
    scale = 1.0 + abs(alpha) + abs(beta)
    if abs(beta - alpha) > 1e-14 * scale:
        ratio = (kappa - mu) / (beta - alpha)
    elif abs(mu + kappa) > 1e-14 * (1.0 + abs(mu)):
        ratio = -(beta + alpha) / (mu + kappa)
    else:
        raise NonRegularError(
            "indicial system is degenerate (beta = alpha and mu = -kappa)"
        )
    return mu, ratio


# --- transfer-matrix RK4 ------------------------------------------------------


def _coefficient_tables(system: DiracSystem, E: float):
    """RK4 transfer matrices for every grid interval at energy E.

    The pair is linear in (f, g), so a classical RK4 step is a 2x2
    matrix depending only on the coefficients at the step's three
    abscissae.  Returns (T_out, T_in): stacks of shape (n-1, 2, 2) for
    steps i -> i+1 and i+1 -> i.
    """
    grid = system.grid
    r = grid.r
    rm = 0.5 * (r[:-1] + r[1:])
    u_of, v_of, w_of = _evaluators(system)

    def table(fn, rs):
        vals = np.broadcast_to(np.asarray(fn(rs), dtype=np.float64), rs.shape)
        return vals.astype(np.float64)

    M = system.M

    def amat(rs):
        u = table(u_of, rs)
        v = table(v_of, rs)
        w = table(w_of, rs)
        a11 = u
        a12 = -(M + w - E - v)
        a21 = -(M + w + E + v)
        a22 = -u
        return np.stack(
            [np.stack([a11, a12], -1), np.stack([a21, a22], -1)], -2
        )  # (m, 2, 2)

    A_n = amat(r)
    A_m = amat(rm)
    h = (r[1:] - r[:-1])[:, None, None]

    def step(a_start, a_mid, a_end, h):
        eye = np.eye(2)
        m1 = a_start
        m2 = a_mid + 0.5 * h * (a_mid @ m1)
        m3 = a_mid + 0.5 * h * (a_mid @ m2)
        m4 = a_end + h * (a_end @ m3)
        return eye + (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4)

    T_out = step(A_n[:-1], A_m, A_n[1:], h)
    T_in = step(A_n[1:], A_m, A_n[:-1], -h)
    return T_out, T_in


def _propagate(T, i0, i1, f0, g0, want_log):
    """Apply per-interval transfer matrices from node i0 to node i1.

    Renormalizes to unit max-amplitude every step; returns (f, g) at i1
    and, when requested, the cumulative log-amplitude at every visited
    node (log of the true amplitude divided by the renormalized one).
    """
    f, g = float(f0), float(g0)
    logs = [0.0] if want_log else None
    amp = 0.0
    outward = i1 > i0
    rng = range(i0, i1) if outward else range(i0 - 1, i1 - 1, -1)
    for i in rng:
        t = T[i]
        f, g = t[0, 0] * f + t[0, 1] * g, t[1, 0] * f + t[1, 1] * g
        m = max(abs(f), abs(g))
        if m == 0.0 or not math.isfinite(m):
            raise IntegrationOverflowError(
                f"renormalization failed at node {i + (1 if outward else 0)}: "
                f"amplitude {m}"
            )
        f /= m
        g /= m
        amp += math.log(m)
        if want_log:
            logs.append(amp)
    return f, g, logs


def _origin_data(system: DiracSystem) -> tuple[float, float, float]:
    """(kappa, alpha, beta) near r = 0, from metadata or extrapolation.

    Without metadata, kappa is read off exactly as r0*U(r0) and alpha,
    beta by linear extrapolation of r*V, r*W to r = 0 from the first two
    nodes.
    """
    r = system.grid.r
    kappa = system.kappa
    if kappa is None:
        kappa = float(r[0] * system.U.values[0])

    def limit(samples, given):
        if given is not None:
            return given
        y0 = r[0] * samples[0]
        y1 = r[1] * samples[1]
        return float((y0 * r[1] - y1 * r[0]) / (r[1] - r[0]))

    alpha = limit(system.V.values, system.alpha)
    beta = limit(system.W.values, system.beta)
    return kappa, alpha, beta


def _check_tail(system: DiracSystem, E: float, tail_tol: float):
    vtail = abs(float(system.V.values[-1]))
    wtail = abs(float(system.W.values[-1]))
    bound = tail_tol * (1.0 + abs(E))
    if max(vtail, wtail) > bound:
        raise NonDecayingTailError(
            f"|V(r_max)| = {vtail:.3g}, |W(r_max)| = {wtail:.3g} exceed "
            f"{bound:.3g}; the asymptotic inward start needs decaying "
            "potentials (raise r_max or tail_tol)"
        )


def _auto_match(T_out, system, ratio) -> int:
    """Node where a trial outward solution peaks, avoiding the end zone.

    Beyond the classical turning point the outward solution picks up the
    growing mode, so the raw amplitude maximum can sit at r_max; in that
    case the last local maximum before the final monotone rise is used.
    """
    n = system.grid.n
    _, _, logs = _propagate(T_out, 0, n - 1, 1.0, ratio, True)
    L = np.asarray(logs)
    i = int(np.argmax(L))
    guard = max(3, n // 20)
    if i < n - guard:
        return i
    interior = L[: n - guard]
    peaks = np.flatnonzero(
        (interior[1:-1] >= interior[:-2]) & (interior[1:-1] >= interior[2:])
    )
    if peaks.size:
        return int(peaks[-1]) + 1
    return n // 2


def _determinant(system, E, cfg, tables=None) -> float:
    _check_tail(system, E, cfg.tail_tol)
    kappa, alpha, beta = _origin_data(system)
    _, ratio0 = indicial_start(kappa, alpha, beta)
    T_out, T_in = tables if tables is not None else _coefficient_tables(system, E)
    n = system.grid.n
    m = cfg.match_index
    if m is None:
        m = _auto_match(T_out, system, ratio0)
    if not (0 < m < n - 1):
        raise DomainError(f"match index {m} must be interior to the grid")

    M = system.M
    lam = math.sqrt(M * M - E * E)
    ratio_in = lam / (M - E)

    f_out, g_out, _ = _propagate(T_out, 0, m, 1.0, ratio0, False)
    f_in, g_in, _ = _propagate(T_in, n - 1, m, 1.0, ratio_in, False)
    a_out = math.hypot(f_out, g_out)
    a_in = math.hypot(f_in, g_in)
    return (f_out / a_out) * (g_in / a_in) - (g_out / a_out) * (f_in / a_in)


def _validate_bracket(system: DiracSystem, cfg: ShootingConfig):
    M = system.M
    if M <= 0.0:
        raise DomainError(
            f"shooting requires M > 0 (got {M}); map the negative-mass "
            "sector onto M > 0 by negating g, E, V, M, W"
        )
    lo, hi = cfg.e_bracket
    if not (-M < lo < hi < M):
        raise DomainError(
            f"energy bracket {cfg.e_bracket} must lie inside (-M, M) = "
            f"({-M:.6g}, {M:.6g}) for a decaying bound state"
        )


def matching_determinant(system: DiracSystem, E: float, cfg: ShootingConfig) -> float:
    """Two-sided shooting determinant D(E).

    Integrates outward from the indicial start at r_min and inward from
    the decaying asymptotic at r_max (both by RK4 with per-step
    renormalization) and returns f_out*g_in - g_out*f_in at the matching
    node, each half normalized to unit amplitude there.  D changes sign
    at bound-state energies.

    Raises
    ------
    NonDecayingTailError
        If |V| or |W| at r_max exceeds tail_tol*(1+|E|).
    NonRegularError
        If no power-law start exists at the origin.
    IntegrationOverflowError
        If renormalization breaks down.
    """
    _validate_bracket(system, cfg)
    lo, hi = cfg.e_bracket
    if not (lo <= E <= hi):
        raise DomainError(f"E = {E} outside the configured bracket {cfg.e_bracket}")
    return _determinant(system, E, cfg)


def find_eigenvalue(system: DiracSystem, cfg: ShootingConfig) -> float:
    """Bisect D(E) to a bound-state energy within e_tol.

    The automatic matching node, when requested, is resolved once at the
    bracket midpoint and then held fixed so that D is a continuous
    function of E during the search.

    Raises
    ------
    NoSignChangeError
        If D has the same sign at both bracket ends.
    MaxIterationsError
        If the bracket fails to shrink below e_tol in max_iter steps.
    """
    _validate_bracket(system, cfg)
    lo, hi = cfg.e_bracket
    if cfg.match_index is None:
        mid_tables = _coefficient_tables(system, 0.5 * (lo + hi))
        kappa, alpha, beta = _origin_data(system)
        _, ratio0 = indicial_start(kappa, alpha, beta)
        T_out, _ = mid_tables
        cfg = replace(cfg, match_index=_auto_match(T_out, system, ratio0))

    d_lo = _determinant(system, lo, cfg)
    d_hi = _determinant(system, hi, cfg)
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if math.copysign(1.0, d_lo) == math.copysign(1.0, d_hi):
        raise NoSignChangeError(
            f"D({lo:.6g}) = {d_lo:.3g} and D({hi:.6g}) = {d_hi:.3g} have "
            "the same sign; no bound state bracketed"
        )
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < cfg.e_tol:
            return mid
        d_mid = _determinant(system, mid, cfg)
        if d_mid == 0.0:
            return mid
        if math.copysign(1.0, d_mid) == math.copysign(1.0, d_lo):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    raise MaxIterationsError(
        f"bracket width {hi - lo:.3g} still above e_tol = {cfg.e_tol} "
        f"after {cfg.max_iter} bisection steps"
    )


# --- residuals ----------------------------------------------------------------


def residual_rows(
    system: DiracSystem, sol: SpinorSolution
) -> tuple[RadialFunction, RadialFunction]:
    """Pointwise residuals of the two rows of the first-order pair.

    res1 = f' - U f + (M+W - (E+V)) g,  res2 = g' + U g + (M+W + (E+V)) f,
    with derivatives from the grid's finite-difference stencils.
    """
    if system.grid is not sol.grid:
        raise DomainError("system and solution must share one grid")
    fv, gv = sol.f.values, sol.g.values
    df = derivative(sol.f).values
    dg = derivative(sol.g).values
    u = system.U.values
    epv = sol.E + system.V.values
    mpw = system.M + system.W.values
    res1 = df - u * fv + (mpw - epv) * gv
    res2 = dg + u * gv + (mpw + epv) * fv
    return RadialFunction(system.grid, res1), RadialFunction(system.grid, res2)


def residual_norm(system: DiracSystem, sol: SpinorSolution) -> float:
    """Max interior residual of the pair, normalized by the spinor scale.

    max over interior nodes (two clipped at each end, where the
    one-sided stencils live) of |res1| + |res2|, divided by
    max(max|f|, max|g|).
    """
    res1, res2 = residual_rows(system, sol)
    total = np.abs(res1.values) + np.abs(res2.values)
    scale = max(
        float(np.max(np.abs(sol.f.values))), float(np.max(np.abs(sol.g.values)))
    )
    return float(np.max(total[2:-2]) / scale)


def energy_scan(
    system: DiracSystem, E_grid: Sequence[float], cfg: ShootingConfig
) -> list[tuple[float, float]]:
    """D(E) over a set of energies; failed points carry D = nan.

    Each evaluation is independent (the matching node is re-resolved per
    point when automatic); errors at individual energies are recorded as
    nan rather than aborting the scan.
    """
    out = []
    for E in E_grid:
        E = float(E)
        try:
            if not (-system.M < E < system.M):
                raise DomainError(f"E = {E} outside (-M, M)")
            d = _determinant(system, E, cfg)
        except Exception:
            d = math.nan
        out.append((E, d))
    return out
