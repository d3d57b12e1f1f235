"""Quasi-exactly solvable radial Dirac bound states.

Construct two-component radial Dirac systems whose bound states are known
in closed form: either explicitly (write down the spinor, read off the
potentials) or implicitly (parametrize the log-derivatives and integrate a
ratio equation), generate energy doublets sharing one potential pair, and
cross-check every construction with an independent shooting eigensolver.
"""

from .errors import (
    BlowUpError,
    BranchSingularityError,
    DegenerateShapeError,
    DomainError,
    IntegrationOverflowError,
    MaxIterationsError,
    NegativeRatioError,
    NoSignChangeError,
    NonDecayingTailError,
    NonFiniteError,
    NonRegularError,
    NumericalError,
    ParseError,
    QEDiracError,
    SingularSampleError,
    SingularSystemError,
    TailNotFlatError,
    ValidationError,
    ZeroNodeError,
)
from .expr import Expression, evaluate, parse, sample_expression, to_text
from .grid import (
    SCHEMES,
    RadialFunction,
    RadialGrid,
    cumulative_integral,
    cumulative_integral_highorder,
    definite_integral,
    derivative,
    make_grid,
    refine,
    sample,
)
from .models import (
    CentrifugalTerm,
    CouplingSet,
    DiracSystem,
    SpinorSolution,
    coulomb_couplings,
    kappa_from_quantum_numbers,
    mu_from_couplings,
    screened_model,
)
from .explicit_qe import potentials_from_ansatz, riccati_potential
from .implicit_qe import (
    HyperbolicParametrization,
    LogDerivatives,
    QEResult,
    TrigParametrization,
    constraint_residual,
    hyperbolic_pipeline,
    log_derivatives,
    reconstruct_potentials,
    split_energy,
    trig_pipeline,
)
from .doublets import (
    DoubletShape,
    doublet_logderivatives,
    doublet_pointwise_oracle,
    doublet_systems,
    nonrel_doublet_residual,
)
from .solver import (
    ShootingConfig,
    dirac_rhs,
    energy_scan,
    find_eigenvalue,
    indicial_start,
    matching_determinant,
    residual_norm,
    residual_rows,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "BranchSingularityError",
    "CentrifugalTerm",
    "CouplingSet",
    "DegenerateShapeError",
    "DiracSystem",
    "DomainError",
    "DoubletShape",
    "Expression",
    "HyperbolicParametrization",
    "IntegrationOverflowError",
    "LogDerivatives",
    "MaxIterationsError",
    "NegativeRatioError",
    "NoSignChangeError",
    "NonDecayingTailError",
    "NonFiniteError",
    "NonRegularError",
    "NumericalError",
    "ParseError",
    "QEDiracError",
    "QEResult",
    "RadialFunction",
    "RadialGrid",
    "SCHEMES",
    "ShootingConfig",
    "SingularSampleError",
    "SingularSystemError",
    "SpinorSolution",
    "TailNotFlatError",
    "TrigParametrization",
    "ValidationError",
    "ZeroNodeError",
    "__version__",
    "constraint_residual",
    "coulomb_couplings",
    "cumulative_integral",
    "cumulative_integral_highorder",
    "definite_integral",
    "derivative",
    "dirac_rhs",
    "doublet_logderivatives",
    "doublet_pointwise_oracle",
    "doublet_systems",
    "energy_scan",
    "evaluate",
    "find_eigenvalue",
    "hyperbolic_pipeline",
    "indicial_start",
    "kappa_from_quantum_numbers",
    "log_derivatives",
    "make_grid",
    "matching_determinant",
    "mu_from_couplings",
    "nonrel_doublet_residual",
    "parse",
    "potentials_from_ansatz",
    "reconstruct_potentials",
    "refine",
    "residual_norm",
    "residual_rows",
    "riccati_potential",
    "sample",
    "sample_expression",
    "screened_model",
    "split_energy",
    "to_text",
    "trig_pipeline",
]
