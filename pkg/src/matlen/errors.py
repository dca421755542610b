"""Exception types shared across the toolkit."""


class MatlenError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(MatlenError):
    """Matrix orders (or vector/ambient dimensions) are incompatible."""


class FieldMismatch(MatlenError):
    """Operands live over different prime fields."""


class NotPrime(MatlenError):
    """Requested modulus is not a prime number."""


class ModulusTooLarge(MatlenError):
    """Modulus exceeds the 2^20 cap required for exhaustive root scanning."""


class Singular(MatlenError):
    """Matrix inversion requested for a rank-deficient matrix."""


class NotSplit(MatlenError):
    """A minimal polynomial does not factor into linear terms over F_p."""


class CharPolyNotSplit(NotSplit):
    """Jordan block sizes do not account for the full order n."""


class EmptySet(MatlenError):
    """A generating set must contain at least one matrix."""


class BudgetExceeded(MatlenError):
    """An enumeration guard (word count or level cap) was exceeded."""


class InvalidK(MatlenError):
    """Rank-one span level below the bound's admissible range (k < 2)."""


class SizeMismatch(MatlenError):
    """Jordan block sizes do not sum to the requested order."""


class FamilyHypothesisViolated(MatlenError):
    """Prescribed Jordan structure contradicts the instance family's hypothesis."""


class GenerationRetriesExhausted(MatlenError):
    """Random instance construction failed to produce a generating set."""


class ParseError(MatlenError):
    """Malformed instance file or report input."""
