"""Exception hierarchy for orbitmat."""


class OrbitmatError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(OrbitmatError, ValueError):
    """A function spec could not be accepted."""


class SpecSyntaxError(SpecError):
    """Malformed spec text or an out-of-range field."""


class IntegralityError(SpecError):
    """An rcwa branch does not map its residue class to integers."""

    def __init__(self, residue, a, b, modulus):
        self.residue = residue
        super().__init__(
            f"branch {residue}: {a}*{residue} + {b} is not divisible by {modulus}"
        )


class FixedPointError(SpecError):
    """The function has a fixed point ``x`` in its effective domain."""

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"fixed point at x={witness}")


class EmptyBranchError(FixedPointError):
    """A branch ``x -> (d*x + 0)/d`` fixes its whole residue class."""


class CyclePresentError(OrbitmatError):
    """The operation needs a cycle-free local function."""

    def __init__(self, cycle=()):
        self.cycle = tuple(cycle)
        super().__init__(f"local function has a cycle {sorted(self.cycle)}")


class NotNilpotentError(OrbitmatError):
    pass


class NotACycleError(OrbitmatError):
    pass


class DimensionMismatch(OrbitmatError, ValueError):
    pass


class IndexOutOfRange(OrbitmatError, IndexError):
    pass


class EmptyInput(OrbitmatError, ValueError):
    pass


class SizeLimitExceeded(OrbitmatError):
    pass


class OracleError(OrbitmatError):
    """The exact oracle disagrees with the sparse engine."""
