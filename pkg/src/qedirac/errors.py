"""Exception hierarchy shared by all modules.

Two broad families matter to callers (and fix the CLI exit codes):

* :class:`ValidationError` -- the inputs themselves are unusable
  (bad parameters, malformed expressions, shapes violating their
  preconditions).  CLI exit code 1.
* :class:`NumericalError` -- the inputs parsed fine but the computation
  ran into a numerical obstruction (singular branch, overflow, a tail
  that refuses to flatten, a bracket without a sign change).  CLI exit
  code 2.
"""

from __future__ import annotations


class QEDiracError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(QEDiracError, ValueError):
    """Input or precondition failure (CLI exit code 1)."""


class NumericalError(QEDiracError, RuntimeError):
    """Failure discovered mid-computation (CLI exit code 2)."""


class DomainError(ValidationError):
    """A scalar parameter is outside its admissible range."""


class ParseError(ValidationError):
    """Expression syntax error.

    Attributes
    ----------
    offset : int
        Byte offset into the source text where parsing failed.
    expected : str
        Human-readable description of what would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: str):
        super().__init__(f"{message} at offset {offset} (expected {expected})")
        self.offset = offset
        self.expected = expected


class SingularSampleError(ValidationError):
    """An expression evaluated to a non-finite value on grid nodes.

    ``nodes`` lists the offending node indices.
    """

    def __init__(self, message: str, nodes):
        nodes = list(nodes)
        preview = ", ".join(str(i) for i in nodes[:8])
        if len(nodes) > 8:
            preview += ", ..."
        super().__init__(f"{message} (node indices: {preview})")
        self.nodes = nodes


class ZeroNodeError(ValidationError):
    """A function that must stay away from zero vanished at a node."""

    def __init__(self, message: str, node: int):
        super().__init__(f"{message} (first offending node: {node})")
        self.node = node


class NegativeRatioError(ValidationError):
    """f/g <= 0 where the log-ratio representation requires f/g > 0."""


class DegenerateShapeError(ValidationError):
    """A doublet shape is singular (|sinh a| below threshold).

    ``nodes`` lists the offending node indices.
    """

    def __init__(self, message: str, nodes):
        nodes = list(nodes)
        preview = ", ".join(str(i) for i in nodes[:8])
        if len(nodes) > 8:
            preview += ", ..."
        super().__init__(f"{message} (node indices: {preview})")
        self.nodes = nodes


class NonFiniteError(NumericalError):
    """A sampled function contains non-finite values where finiteness is required."""


class BranchSingularityError(NumericalError):
    """A trigonometric branch function touches or crosses zero.

    ``nodes`` lists node indices adjacent to the singularity.
    """

    def __init__(self, message: str, nodes):
        nodes = list(nodes)
        preview = ", ".join(str(i) for i in nodes[:8])
        if len(nodes) > 8:
            preview += ", ..."
        super().__init__(f"{message} (node indices: {preview})")
        self.nodes = nodes


class BlowUpError(NumericalError):
    """A log-ratio integration left the representable range (|value| > 700)."""


class TailNotFlatError(NumericalError):
    """The energy/potential split convention failed.

    ``deviation`` carries the measured tail standard deviation.
    """

    def __init__(self, message: str, deviation: float):
        super().__init__(f"{message} (tail deviation {deviation:.3e})")
        self.deviation = deviation


class NonRegularError(NumericalError):
    """Threshold analysis has no regular power-law branch."""


class NonDecayingTailError(NumericalError):
    """Potentials do not decay at the outer boundary; shooting start invalid."""


class NoSignChangeError(NumericalError):
    """An eigenvalue bracket does not enclose a sign change."""


class MaxIterationsError(NumericalError):
    """Iteration limit exhausted before reaching tolerance."""


class SingularSystemError(NumericalError):
    """A pointwise linear solve met a (near-)singular matrix."""

    def __init__(self, message: str, nodes):
        nodes = list(nodes)
        preview = ", ".join(str(i) for i in nodes[:8])
        if len(nodes) > 8:
            preview += ", ..."
        super().__init__(f"{message} (node indices: {preview})")
        self.nodes = nodes


class IntegrationOverflowError(NumericalError):
    """Shooting integration overflowed despite renormalization."""
