"""Operator data for the two-component radial Dirac system and the
screened-Coulomb bound-state family.

The system solved throughout the package is the coupled first-order pair

    f'(r) = U(r) f - [M + W(r) - E - V(r)] g
    g'(r) = -[M + W(r) + E + V(r)] f - U(r) g

with centrifugal term U = kappa/r, vector potential V (enters with the
energy E) and scalar potential W (enters with the mass M).

:func:`screened_model` builds a family of systems with one bound state in
closed form: spinor components proportional to r^mu (1+hr) e^(-lambda r),
Coulombic potentials alpha/r, beta/r plus screening corrections
proportional to 1/(1+hr), and energy E = -eps*lambda*sinh(t).  At h = 0
it degenerates to the exactly solvable Coulomb case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .grid import RadialGrid, RadialFunction, definite_integral

__all__ = [
    "CentrifugalTerm",
    "DiracSystem",
    "SpinorSolution",
    "CouplingSet",
    "kappa_from_quantum_numbers",
    "mu_from_couplings",
    "coulomb_couplings",
    "screened_model",
]


@dataclass(frozen=True)
class CentrifugalTerm:
    """The 1/r coefficient U(r) = kappa/r.

    ``kappa`` may be given directly, or derived from quantum numbers via
    :func:`kappa_from_quantum_numbers`, in which case the provenance
    triple (ell, q_abs, sign) is stored.  ``ell = -1`` encodes the
    marginal kappa = 0 sector, which is accepted but not special-cased.
    """

    kappa: float
    ell: Optional[int] = None
    q_abs: Optional[float] = None
    sign: Optional[int] = None

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise DomainError(f"kappa must be finite, got {self.kappa}")
        if self.ell is not None:
            if self.ell < -1:
                raise DomainError(f"ell must be >= -1, got {self.ell}")
            if self.q_abs is None or self.sign is None:
                raise DomainError("provenance requires all of ell, q_abs, sign")
            want = self.sign * math.sqrt(
                (self.ell + 1) * (self.ell + 1 + 2.0 * self.q_abs)
            )
            if abs(self.kappa - want) > 1e-12 * (1.0 + abs(want)):
                raise DomainError(
                    f"kappa={self.kappa} inconsistent with "
                    f"(ell={self.ell}, q_abs={self.q_abs}, sign={self.sign})"
                )

    def __call__(self, r):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.kappa / np.asarray(r, dtype=np.float64)

    def sample(self, grid: RadialGrid) -> RadialFunction:
        return RadialFunction(grid, self.kappa / grid.r)


@dataclass(frozen=True, eq=False)
class DiracSystem:
    """Operator data (U, V, W, M) of the radial Dirac pair on one grid.

    The optional closed-form callables and origin couplings are metadata
    used by the shooting verifier: when present it evaluates potentials
    at off-node abscissae exactly instead of interpolating, and starts
    its outward integration from the exact small-r behavior
    V ~ alpha/r, W ~ beta/r, U ~ kappa/r.
    """

    U: RadialFunction
    V: RadialFunction
    W: RadialFunction
    M: float
    u_fn: Optional[Callable] = field(default=None, repr=False, kw_only=True)
    v_fn: Optional[Callable] = field(default=None, repr=False, kw_only=True)
    w_fn: Optional[Callable] = field(default=None, repr=False, kw_only=True)
    kappa: Optional[float] = field(default=None, kw_only=True)
    alpha: Optional[float] = field(default=None, kw_only=True)
    beta: Optional[float] = field(default=None, kw_only=True)

    def __post_init__(self):
        if not (self.U.grid is self.V.grid is self.W.grid):
            raise DomainError("U, V, W must share one grid")
        if not math.isfinite(self.M):
            raise DomainError(f"mass must be finite, got {self.M}")

    @property
    def grid(self) -> RadialGrid:
        return self.U.grid


@dataclass(frozen=True, eq=False)
class SpinorSolution:
    """Candidate bound state: upper/lower components f, g and energy E."""

    f: RadialFunction
    g: RadialFunction
    E: float

    def __post_init__(self):
        if self.f.grid is not self.g.grid:
            raise DomainError("f and g must share one grid")
        if not np.any(self.f.values) or not np.any(self.g.values):
            raise DomainError("spinor components must not be identically zero")
        if not math.isfinite(self.E):
            raise DomainError(f"energy must be finite, got {self.E}")

    @property
    def grid(self) -> RadialGrid:
        return self.f.grid


@dataclass(frozen=True)
class CouplingSet:
    """Couplings of the (screened-)Coulomb family.

    V = alpha/r + alpha_s/(1+hr), W = beta/r + beta_s/(1+hr); the spinor
    shape is r^mu (1+hr) e^(-lam*r) with component ratio p/q = pq_ratio.
    """

    alpha: float
    beta: float
    alpha_s: float
    beta_s: float
    h: float
    lam: float
    mu: float
    eps: int
    t: float
    pq_ratio: float


def _check_eps(eps: int) -> int:
    if eps not in (-1, 1):
        raise DomainError(f"eps must be +1 or -1, got {eps}")
    return int(eps)


def kappa_from_quantum_numbers(ell: int, q_abs: float, sign: int) -> CentrifugalTerm:
    """Centrifugal strength kappa = sign*sqrt((ell+1)(ell+1+2*q_abs)).

    ``q_abs`` is the magnitude of the monopole charge parameter; at
    q_abs = 0 this reduces to kappa = +-(ell+1).  ``ell = -1`` gives the
    marginal kappa = 0 sector.
    """
    if int(ell) != ell or ell < -1:
        raise DomainError(f"ell must be an integer >= -1, got {ell}")
    if q_abs < 0:
        raise DomainError(f"q_abs must be >= 0, got {q_abs}")
    if sign not in (-1, 1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    ell = int(ell)
    kappa = sign * math.sqrt((ell + 1) * (ell + 1 + 2.0 * q_abs))
    return CentrifugalTerm(kappa=kappa, ell=ell, q_abs=float(q_abs), sign=int(sign))


def mu_from_couplings(kappa: float, alpha: float, beta: float) -> float:
    """Threshold exponent mu = sqrt(kappa^2 + beta^2 - alpha^2).

    Inverse of the identity mu^2 - kappa^2 = beta^2 - alpha^2 satisfied
    by :func:`coulomb_couplings` outputs.
    """
    rad = kappa * kappa + beta * beta - alpha * alpha
    if rad <= 0.0:
        raise DomainError(
            f"kappa^2 + beta^2 - alpha^2 = {rad} must be positive for a "
            "regular threshold exponent"
        )
    return math.sqrt(rad)


def coulomb_couplings(eps: int, t: float, mu: float, kappa: float) -> tuple[float, float]:
    """Map (eps, t, mu, kappa) to the Coulombic couplings (beta, alpha).

    (beta, alpha) = [[-cosh t, sinh t], [sinh t, -cosh t]] . (eps*mu, eps*kappa).
    The matrix has determinant +1, and the outputs satisfy
    mu^2 - kappa^2 = beta^2 - alpha^2 identically.
    """
    eps = _check_eps(eps)
    ch, sh = math.cosh(t), math.sinh(t)
    beta = -ch * (eps * mu) + sh * (eps * kappa)
    alpha = sh * (eps * mu) - ch * (eps * kappa)
    return beta, alpha


def screened_model(
    eps: int,
    t: float,
    lam: float,
    h: float,
    mu: float,
    kappa: CentrifugalTerm | float,
    grid: RadialGrid,
) -> tuple[DiracSystem, SpinorSolution, CouplingSet]:
    """Build the screened-Coulomb system together with its closed-form state.

    Returns the system (U = kappa/r, V = alpha/r + alpha_s/(1+hr),
    W = beta/r + beta_s/(1+hr), M = eps*lam*cosh t), its bound state
    (f = p*phi, g = q*phi with phi = r^mu (1+hr) e^(-lam r), p/q = eps*e^t,
    normalized so that the integral of f^2+g^2 over the grid is 1), and
    the coupling set.  E = -eps*lam*sinh t, so M^2 - E^2 = lam^2 and
    E/M = -tanh t.  h = 0 gives the unscreened Coulomb limit
    (alpha_s = beta_s = 0).
    """
    eps = _check_eps(eps)
    if not (lam > 0.0):
        raise DomainError(f"lam must be positive, got {lam}")
    if h < 0.0:
        raise DomainError(f"h must be >= 0, got {h}")
    if not (mu > 0.0):
        raise DomainError(f"mu must be positive, got {mu}")
    if not isinstance(kappa, CentrifugalTerm):
        kappa = CentrifugalTerm(kappa=float(kappa))
    k = kappa.kappa

    E = -eps * lam * math.sinh(t)
    M = eps * lam * math.cosh(t)
    beta, alpha = coulomb_couplings(eps, t, mu, k)
    alpha_s = eps * h * math.sinh(t)
    beta_s = -eps * h * math.cosh(t)

    def v_fn(r, alpha=alpha, alpha_s=alpha_s, h=h):
        r = np.asarray(r, dtype=np.float64)
        return alpha / r + alpha_s / (1.0 + h * r)

    def w_fn(r, beta=beta, beta_s=beta_s, h=h):
        r = np.asarray(r, dtype=np.float64)
        return beta / r + beta_s / (1.0 + h * r)

    r = grid.r
    U = kappa.sample(grid)
    V = RadialFunction(grid, v_fn(r))
    W = RadialFunction(grid, w_fn(r))
    system = DiracSystem(
        U, V, W, M,
        u_fn=kappa, v_fn=v_fn, w_fn=w_fn,
        kappa=k, alpha=alpha, beta=beta,
    )

    phi = r**mu * (1.0 + h * r) * np.exp(-lam * r)
    norm = definite_integral(RadialFunction(grid, phi * phi))
    q = 1.0 / math.sqrt((math.exp(2.0 * t) + 1.0) * norm)
    p = eps * math.exp(t) * q
    solution = SpinorSolution(
        RadialFunction(grid, p * phi), RadialFunction(grid, q * phi), E
    )

    couplings = CouplingSet(
        alpha=alpha, beta=beta, alpha_s=alpha_s, beta_s=beta_s,
        h=float(h), lam=float(lam), mu=float(mu), eps=eps, t=float(t),
        pq_ratio=eps * math.exp(t),
    )
    return system, solution, couplings
