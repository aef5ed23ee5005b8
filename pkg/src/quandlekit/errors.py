"""Exception hierarchy.

Validation failures carry a ``witness`` tuple naming the smallest offending
indices, so error messages are stable across runs.
"""

from __future__ import annotations


class QuandleKitError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(QuandleKitError):
    """An object failed an axiom check."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class ResourceError(QuandleKitError):
    """A size cap, closure cap or search budget was exceeded."""


# fingroup
class NotBijective(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


class GroupAxiomError(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class DoNotGenerate(ValidationError):
    pass


# rackcore
class NotBijectiveColumn(ValidationError):
    pass


class NotSelfDistributive(ValidationError):
    pass


# dynamics
class CompatibilityFail(ValidationError):
    pass


class CyclicAxiomFail(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    pass


class EquivarianceFail(ValidationError):
    pass


class CocycleFail(ValidationError):
    pass


class FiberNotRack(ValidationError):
    pass


class BundleCompatFail(ValidationError):
    pass


class GFamilyAxiomFail(ValidationError):
    pass


# repr / duality
class NotInvertible(ValidationError):
    pass


class ConjugationFail(ValidationError):
    pass


class RackMismatch(ValidationError):
    pass


class HypothesesFail(ValidationError):
    pass


class ConductorTooSmall(QuandleKitError):
    """The commutant test could not settle irreducibility at this conductor."""


class Inconclusive(QuandleKitError):
    pass


# resources
class SizeCapExceeded(ResourceError):
    pass


class ClosureCapExceeded(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    """Search stopped early; ``partial`` holds whatever was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
