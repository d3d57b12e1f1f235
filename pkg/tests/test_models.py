import math

import numpy as np
import pytest

from qedirac.errors import DomainError
from qedirac.grid import RadialFunction, definite_integral, make_grid
from qedirac.models import (
    CentrifugalTerm,
    coulomb_couplings,
    kappa_from_quantum_numbers,
    mu_from_couplings,
    screened_model,
)
from qedirac.solver import residual_norm

from conftest import REFERENCE_PARAMS


# --- centrifugal term ---------------------------------------------------------

def test_kappa_from_quantum_numbers_values():
    u = kappa_from_quantum_numbers(0, 0, 1)
    assert isinstance(u, CentrifugalTerm)
    assert u.kappa == 1.0
    assert kappa_from_quantum_numbers(0, 0, -1).kappa == -1.0
    assert kappa_from_quantum_numbers(1, 0, 1).kappa == 2.0
    # kappa = sign * sqrt((ell+1)(ell+1+2q)) need not be an integer
    got = kappa_from_quantum_numbers(1, 2, -1).kappa
    assert got == pytest.approx(-math.sqrt(2.0 * 6.0), rel=1e-15)


def test_kappa_from_quantum_numbers_keeps_provenance():
    u = kappa_from_quantum_numbers(2, 1, -1)
    assert (u.ell, u.q_abs, u.sign) == (2, 1, -1)


@pytest.mark.parametrize("args", [(-2, 0, 1), (0.5, 0, 1), (0, -1, 1), (0, 0, 0), (0, 0, 2)])
def test_kappa_from_quantum_numbers_rejects_bad_input(args):
    with pytest.raises(DomainError):
        kappa_from_quantum_numbers(*args)


def test_ell_minus_one_is_allowed():
    assert kappa_from_quantum_numbers(-1, 3, 1).kappa == 0.0


def test_centrifugal_term_is_callable_and_sampleable():
    u = CentrifugalTerm(2.0)
    assert u(4.0) == 0.5
    g = make_grid(0.5, 8.0, 20, "uniform")
    assert np.array_equal(u.sample(g).values, 2.0 / g.r)


def test_centrifugal_term_rejects_inconsistent_provenance():
    CentrifugalTerm(2.0, ell=1, q_abs=0, sign=1)  # consistent
    with pytest.raises(DomainError):
        CentrifugalTerm(5.0, ell=0, q_abs=0, sign=1)


def test_centrifugal_partial_provenance_rejected():
    with pytest.raises(DomainError):
        CentrifugalTerm(1.0, ell=0)


# --- coupling algebra ---------------------------------------------------------

def test_coulomb_couplings_identity():
    rng = np.random.default_rng(11)
    for _ in range(200):
        eps = 1 if rng.random() < 0.5 else -1
        t = rng.uniform(-2.0, 2.0)
        mu = rng.uniform(0.1, 3.0)
        kappa = rng.uniform(-3.0, 3.0)
        beta, alpha = coulomb_couplings(eps, t, mu, kappa)
        # the linear map is a hyperbolic rotation: mu^2 - kappa^2 = beta^2 - alpha^2
        lhs = mu * mu - kappa * kappa
        rhs = beta * beta - alpha * alpha
        assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs))


def test_mu_from_couplings_inverts_coulomb_couplings():
    rng = np.random.default_rng(12)
    for _ in range(200):
        eps = 1 if rng.random() < 0.5 else -1
        t = rng.uniform(-2.0, 2.0)
        mu = rng.uniform(0.1, 3.0)
        kappa = rng.uniform(-3.0, 3.0)
        beta, alpha = coulomb_couplings(eps, t, mu, kappa)
        back = mu_from_couplings(kappa, alpha, beta)
        assert abs(back - mu) <= 1e-12 * (1.0 + mu)


def test_mu_from_couplings_rejects_supercritical():
    # kappa^2 + beta^2 - alpha^2 < 0 has no real indicial exponent
    with pytest.raises(DomainError):
        mu_from_couplings(0.5, 2.0, 0.1)


# --- screened model -----------------------------------------------------------

def test_screened_model_validations(default_grid):
    u = CentrifugalTerm(1.0)
    with pytest.raises(DomainError):
        screened_model(eps=2, t=0.5, lam=1.0, h=0.2, mu=1.2, kappa=u, grid=default_grid)
    with pytest.raises(DomainError):
        screened_model(eps=1, t=0.5, lam=-1.0, h=0.2, mu=1.2, kappa=u, grid=default_grid)
    with pytest.raises(DomainError):
        screened_model(eps=1, t=0.5, lam=1.0, h=-0.1, mu=1.2, kappa=u, grid=default_grid)
    with pytest.raises(DomainError):
        screened_model(eps=1, t=0.5, lam=1.0, h=0.2, mu=0.0, kappa=u, grid=default_grid)


def test_reference_energy_and_mass(reference_model):
    system, sol, couplings = reference_model
    t, lam = REFERENCE_PARAMS["t"], REFERENCE_PARAMS["lam"]
    assert sol.E == pytest.approx(-lam * math.sinh(t), rel=1e-15)
    assert system.M == pytest.approx(lam * math.cosh(t), rel=1e-15)
    assert sol.E == pytest.approx(-0.5210953054937474, rel=1e-15)
    assert system.M == pytest.approx(1.1276259652063807, rel=1e-15)


def test_reference_couplings(reference_model):
    _, _, c = reference_model
    assert c.alpha == pytest.approx(-0.5023115986138839, rel=1e-15)
    assert c.beta == pytest.approx(-0.8320558527539094, rel=1e-15)
    assert c.alpha_s == pytest.approx(0.10421906109874948, rel=1e-15)
    assert c.beta_s == pytest.approx(-0.22552519304127616, rel=1e-15)
    assert c.pq_ratio == pytest.approx(math.exp(0.5), rel=1e-15)


def test_screened_spinors_are_normalized(reference_model, default_grid):
    _, sol, _ = reference_model
    density = RadialFunction(default_grid, sol.f.values**2 + sol.g.values**2)
    assert definite_integral(density) == pytest.approx(1.0, abs=1e-9)


def test_screened_solution_satisfies_dirac_system(reference_model):
    system, sol, _ = reference_model
    assert residual_norm(system, sol) < 1e-9


def test_unscreened_limit_has_zero_screening_couplings(default_grid):
    system, sol, c = screened_model(
        eps=1, t=0.5, lam=1.0, h=0.0, mu=1.2,
        kappa=CentrifugalTerm(1.0), grid=default_grid,
    )
    assert c.alpha_s == 0.0
    assert c.beta_s == -0.0
    assert residual_norm(system, sol) < 1e-9


def test_system_carries_callable_metadata(reference_model, default_grid):
    system, _, c = reference_model
    assert system.kappa == 1.0
    assert system.alpha == c.alpha and system.beta == c.beta
    r0 = float(default_grid.r[100])
    assert system.u_fn(r0) == pytest.approx(1.0 / r0, rel=1e-15)
    assert system.v_fn(r0) == pytest.approx(system.V.values[100], rel=1e-12)
    assert system.w_fn(r0) == pytest.approx(system.W.values[100], rel=1e-12)
