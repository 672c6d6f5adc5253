"""Exception hierarchy for toriclc.

Every error that a caller is expected to handle derives from ToricError.
Soundness rule: an oracle that cannot certify an answer raises
SearchBoundExceeded rather than guessing.
"""


class ToricError(Exception):
    """Base class for all toriclc errors."""


class NotFullDimensional(ToricError):
    """The columns of the matrix do not span the ambient space over Q."""


class FullLatticeRequired(ToricError):
    """The columns of the matrix do not generate the full integer lattice."""


class NotPointed(ToricError):
    """The cone contains a line; the requested operation needs a pointed cone."""


class SearchBoundExceeded(ToricError):
    """A feasibility search would need coefficients beyond the configured
    bound, so neither a yes nor a no answer can be certified."""


class GeneratorNotInSemigroup(ToricError):
    """A degree that must lie in the semigroup does not."""


class DimensionUnsupported(ToricError):
    """The operation is only defined in a specific ambient dimension."""


class NotScored(ToricError):
    """The operation requires the scored property (verified on a box)."""


class IsNormal(ToricError):
    """The operation is vacuous for a normal semigroup."""


class HypothesisFailed(ToricError):
    """A structural hypothesis of the requested certificate does not hold."""


class NoInteriorPoint(ToricError):
    """No interior degree could be found; signals an upstream bug for a
    pointed full-dimensional cone."""


class ClassRankMismatch(ToricError):
    """Sampled cohomology ranks disagree within one equivalence class;
    signals an enumeration bug or an undersized search bound."""


class CycleDetected(ToricError):
    """The strict order on equivalence classes contains a cycle; signals a
    signature-equality bug."""


class ProblemFormatError(ToricError):
    """A problem file could not be parsed; carries line information."""
