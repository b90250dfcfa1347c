"""Exception hierarchy.

Every error raised by the library derives from :class:`PgrassError`, so
callers (and the CLI) can distinguish domain failures from programming
errors.
"""


class PgrassError(Exception):
    """Base class for all library errors."""


class NonFinite(PgrassError):
    """Input contains NaN or Inf entries."""


class NotHermitian(PgrassError):
    """Matrix is not Hermitian within tolerance."""


class InvalidP(PgrassError):
    """Schatten exponent p < 1 (or not a number)."""


class Singular(PgrassError):
    """Matrix is numerically singular where invertibility is required."""


class FUndefinedOnSpectrum(PgrassError):
    """Scalar function is undefined or non-finite on an eigenvalue."""


class SectionUndefined(PgrassError):
    """Transport section S = QP + (1-Q)(1-P) is numerically singular."""


class NotAProjection(PgrassError):
    """Operator fails P*P = P = P* within tolerance."""


class ClusterAmbiguity(PgrassError):
    """Eigenvalue gap falls inside the declared ambiguity band."""


class DimensionMismatch(PgrassError):
    """Shapes or dimension bookkeeping are inconsistent."""


class ToleranceBreakdown(PgrassError):
    """Principal angle too close to 0 or pi/2 to assign reliably."""


class NoGeodesic(PgrassError):
    """No codiagonal exponent exists: intersection dimensions differ."""


class OutOfRange(PgrassError):
    """Scalar argument outside its admissible interval."""


class RangeViolation(PgrassError):
    """Model value outside its admissible range or not strictly monotone."""


class NotSummable(PgrassError):
    """Declared power tail is not p/2-summable for the declared p."""


class FiniteSpace(PgrassError):
    """Model describes a finite-dimensional side; both sides must be infinite."""


class TruncationTooSmall(PgrassError):
    """A declared finite rank exceeds the materialization block budget."""


class NotInteger(PgrassError):
    """Trace is too far from an integer to be an index."""


class SingularB(PgrassError):
    """Diagonalizing operator B = P + P0 - 1 is numerically singular."""


class SymbolVanishes(PgrassError):
    """Circle symbol has (near-)zero modulus on the sampling grid."""


class TruncationTooCoarse(PgrassError):
    """Truncated Hardy subspace is numerically rank-deficient."""


class ConfigError(PgrassError):
    """Bad CLI arguments or run configuration (exit code 2)."""


class InputSchemaError(PgrassError):
    """Input file does not match the documented JSON schema (exit code 2)."""
