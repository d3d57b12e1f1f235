import math

import numpy as np
import pytest

from qedirac.doublets import (
    DoubletShape,
    doublet_logderivatives,
    doublet_pointwise_oracle,
    doublet_systems,
    nonrel_doublet_residual,
)
from qedirac.errors import DegenerateShapeError, DomainError, SingularSystemError
from qedirac.expr import parse, sample_expression
from qedirac.grid import make_grid
from qedirac.models import CentrifugalTerm


@pytest.fixture(scope="module")
def medium_grid():
    return make_grid(1e-6, 40.0, 1500, "geometric")


@pytest.fixture(scope="module")
def sample_shape():
    return DoubletShape(parse("r/(1+r)"), parse("0.3*r"), 0.7, -0.4, 1.0)


def test_energies_differ_by_delta(sample_shape):
    assert sample_shape.E2 == sample_shape.E1 + sample_shape.delta


def test_closed_forms_agree_with_pointwise_solve(medium_grid, sample_shape):
    U = CentrifugalTerm(1.0)
    Y1, Y2, _, _ = doublet_logderivatives(sample_shape, U, medium_grid)
    O1, O2 = doublet_pointwise_oracle(sample_shape, U, medium_grid)
    for closed, solved in ((Y1, O1), (Y2, O2)):
        gap = np.abs(closed.values - solved.values) / (1.0 + np.abs(solved.values))
        assert np.max(gap) < 1e-11


def test_half_sum_and_half_difference_identities(medium_grid, sample_shape):
    # Z1 and Z2 are half-difference and half-sum of the shape derivatives
    _, _, Z1, Z2 = doublet_logderivatives(sample_shape, CentrifugalTerm(1.0), medium_grid)
    r = medium_grid.r
    da = 1.0 / (1.0 + r) ** 2
    db = 0.3
    assert np.max(np.abs(Z1.values - 0.5 * (db - da))) < 1e-7
    assert np.max(np.abs(Z2.values - 0.5 * (db + da))) < 1e-7


def test_both_branches_solve_one_system(medium_grid, sample_shape):
    system, sol1, sol2, mismatch = doublet_systems(
        sample_shape, CentrifugalTerm(1.0), medium_grid
    )
    assert mismatch < 1e-7
    assert sol1.E == sample_shape.E1
    assert sol2.E == sample_shape.E2
    assert system.M == sample_shape.M
    assert system.kappa == 1.0


def test_pointwise_reference_value(uniform_grid):
    # Quadratic shapes are differentiated exactly by the grid stencils, so
    # the node at r = 2 can be checked against hand-evaluated formulas.
    c1, c2 = 1.0333333333333334, 0.24444444444444446
    c3, c4 = 0.5666666666666667, 0.15555555555555556
    shape = DoubletShape(
        parse(f"{c1!r}*(r-0.5) - {c2!r}*(r-0.5)^2 + 1e-6"),
        parse(f"{c3!r}*(r-0.5) - {c4!r}*(r-0.5)^2"),
        0.7,
        -0.4,
        1.0,
    )
    U = CentrifugalTerm(4.0)
    k = 150
    assert uniform_grid.r[k] == 2.0

    aa = c1 * 1.5 - c2 * 1.5**2 + 1e-6
    da = c1 - 2.0 * c2 * 1.5
    bb = c3 * 1.5 - c4 * 1.5**2
    db = c3 - 2.0 * c4 * 1.5
    u = 2.0
    sum_y = (0.7 * math.cosh(bb) - da * math.cosh(aa)) / math.sinh(aa)
    diff_y = 0.7 * math.sinh(bb) / math.cosh(aa) + (db - 2.0 * u) * math.sinh(aa) / math.cosh(aa)

    Y1, Y2, _, _ = doublet_logderivatives(shape, U, uniform_grid)
    O1, O2 = doublet_pointwise_oracle(shape, U, uniform_grid)
    for Ya, Yb in ((Y1, Y2), (O1, O2)):
        assert Ya.values[k] + Yb.values[k] == pytest.approx(sum_y, abs=1e-12)
        assert Ya.values[k] - Yb.values[k] == pytest.approx(diff_y, abs=1e-12)


def test_shape_must_vanish_at_r_min(uniform_grid):
    bad = DoubletShape(parse("1+r"), parse("0.3*r"), 0.7, -0.4, 1.0)
    with pytest.raises(DomainError, match="r_min"):
        doublet_logderivatives(bad, CentrifugalTerm(1.0), uniform_grid)


def test_interior_zero_of_a_is_degenerate(uniform_grid):
    # a vanishes at node 0 (allowed only if sinh a stays clear of zero) and
    # at node 150 (r = 2); both are reported.
    bad = DoubletShape(parse("(r-0.5)*(r-2)"), parse("0.1*r - 0.05"), 0.7, -0.4, 1.0)
    with pytest.raises(DegenerateShapeError) as info:
        doublet_logderivatives(bad, CentrifugalTerm(1.0), uniform_grid)
    assert 150 in info.value.nodes and 0 in info.value.nodes
    with pytest.raises(SingularSystemError) as info2:
        doublet_pointwise_oracle(bad, CentrifugalTerm(1.0), uniform_grid)
    assert 150 in info2.value.nodes


def test_reflection_swaps_branches_bitwise(medium_grid, sample_shape):
    # Flipping the signs of b and U exchanges the two branches exactly:
    # the swapped log-derivatives and spinor components match bit for bit.
    U = CentrifugalTerm(1.0)
    mirrored = DoubletShape(
        sample_shape.a,
        parse("-(0.3*r)"),
        sample_shape.delta,
        -sample_shape.E2,
        sample_shape.M,
    )
    Um = CentrifugalTerm(-1.0)

    Y1, Y2, Z1, Z2 = doublet_logderivatives(sample_shape, U, medium_grid)
    P1, P2, Q1, Q2 = doublet_logderivatives(mirrored, Um, medium_grid)
    assert np.array_equal(P1.values, Y2.values)
    assert np.array_equal(P2.values, Y1.values)
    assert np.array_equal(Q1.values, -Z2.values)
    assert np.array_equal(Q2.values, -Z1.values)

    _, s1, s2, mis = doublet_systems(sample_shape, U, medium_grid)
    _, m1, m2, mis_m = doublet_systems(mirrored, Um, medium_grid)
    assert m1.E == -s2.E and m2.E == -s1.E
    assert np.array_equal(m1.f.values, s2.g.values)
    assert np.array_equal(m1.g.values, s2.f.values)
    assert np.array_equal(m2.f.values, s1.g.values)
    assert np.array_equal(m2.g.values, s1.f.values)
    assert mis_m == pytest.approx(mis, rel=1e-12)


def test_nonrel_reduction_residual():
    grid = make_grid(0.05, 40.0, 2000, "geometric")
    # hydrogen-like pair: F = u'/u for the 1s state at E = -1/4 and for a
    # second state at E = -1/16 whose extra node sits at r = 4
    F1 = sample_expression(parse("1/r - 0.5"), grid)
    F2 = sample_expression(parse("1/r + 1/(r-4) - 0.25"), grid)
    res = nonrel_doublet_residual(F1, F2, -0.25, -0.0625)
    away_from_node = np.abs(grid.r - 4.0) > 0.5
    assert np.max(np.abs(res.values[away_from_node])) < 2e-5


def test_nonrel_rejects_mismatched_grids(uniform_grid):
    g2 = make_grid(0.5, 8.0, 100, "uniform")
    F1 = sample_expression(parse("1/r"), uniform_grid)
    F2 = sample_expression(parse("1/r"), g2)
    with pytest.raises(DomainError):
        nonrel_doublet_residual(F1, F2, -0.25, -0.0625)
