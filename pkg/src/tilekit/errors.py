"""Exception types shared across the package.

The CLI maps these onto exit codes: InputContractError and its subclasses
become exit code 2, everything else is an ordinary failure.
"""


class TilekitError(Exception):
    """Base class for all package-specific errors."""


class InputContractError(TilekitError):
    """Input violates a documented precondition."""


class RankDeficientError(InputContractError):
    """Operation requires a full-rank lattice."""


class NotIndependentError(InputContractError):
    """Tile tuple fails the independence precondition."""

    def __init__(self, witness=None):
        super().__init__(f"tuple is not independent (witness: {witness})")
        self.witness = witness


class WrongArityError(InputContractError):
    """Tile tuple has the wrong length for this operation."""


class NotACotileError(InputContractError):
    """The given set or function does not solve the tiling equations."""


class NonIntegerValuesError(InputContractError):
    """Operation requires an integer-valued function."""


class PreconditionUnverifiedError(InputContractError):
    """The stated convolution identity does not hold, so the check is meaningless."""


class NotAPartitionError(InputContractError):
    """Pieces do not form a partition of Z^d."""


class NotPrimeError(InputContractError):
    """Torsion operations support prime moduli only."""


class EmptyOrFullError(InputContractError):
    """The empty set and the full cyclic group are not invertible."""


class OutOfLatticeError(InputContractError):
    """A translation vector lies outside the required subgroup."""


class TrivialTileError(InputContractError):
    """The tile {0} admits no companion construction."""


class NotATilingError(InputContractError):
    """The given pair (tile, set) is not a tiling."""


class PropertyStarRequiredError(InputContractError):
    """Operation requires a tuple with the span-uniqueness property."""


class NoCycleError(TilekitError):
    """The block graph has no cycle; impossible unless the input contract was violated."""


class VerificationFailedError(TilekitError):
    """A postcondition that the theory guarantees failed; indicates a bug."""
