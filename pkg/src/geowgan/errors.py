"""Exception types shared across the package.

Each error maps to one failure mode of a public operation; catching the
base class `GeowganError` catches everything raised deliberately here.
"""


class GeowganError(Exception):
    """Base class for all errors raised by geowgan."""


# --- binning / weighting ------------------------------------------------

class EmptyInput(GeowganError):
    """An operation that needs at least one value received none."""


class DegenerateRange(GeowganError):
    """All input values are identical; no bin edges can be built."""


class TooFewDistinct(GeowganError):
    """Equal-frequency binning needs at least as many distinct values as bins."""


class NonFiniteValue(GeowganError):
    """A value that must be finite is NaN or infinite."""


class AllEmptyTask(GeowganError):
    """Every class of a task has zero labeled examples."""


# --- synthetic world / sampling ------------------------------------------

class OutOfGrid(GeowganError):
    """Location lies outside the world grid."""


class EmptyLabelSites(GeowganError):
    """Around-labels sampling requires at least one label site."""


class InfeasibleSeparation(GeowganError):
    """Geo-disjoint splits cannot be built at the requested separation."""


# --- storage --------------------------------------------------------------

class CorruptHeader(GeowganError):
    """File is truncated or its magic bytes do not match."""


class VersionMismatch(GeowganError):
    """Container version is not supported by this build."""


class ShapeMismatch(GeowganError):
    """Tensor shape differs from what the caller declared or the model needs."""


# --- models ----------------------------------------------------------------

class ShapeInfeasible(GeowganError):
    """Generator stages cannot compose to the requested output shape."""


class BadChannelCount(GeowganError):
    """Filter-bank expansion got the wrong number of input channels."""


# --- losses ----------------------------------------------------------------

class LabelOutOfRange(GeowganError):
    """A class label is outside [0, K) for its task."""


class NonFiniteLogit(GeowganError):
    """Logits contain NaN or infinity."""


class NonFiniteGradient(GeowganError):
    """Input gradients inside the gradient penalty are not finite."""


# --- training ----------------------------------------------------------------

class NonFiniteLoss(GeowganError):
    """A training loss became NaN or infinite; the run aborts."""


class ResumeMismatch(GeowganError):
    """Checkpoint was produced under a different configuration."""


# --- evaluation ----------------------------------------------------------------

class SingularSystem(GeowganError):
    """Unpenalized ridge system is rank deficient."""


class ZeroVariance(GeowganError):
    """Correlation is undefined because one input has zero variance."""


class FoldTooSmall(GeowganError):
    """Not enough rows to populate every cross-validation fold."""
