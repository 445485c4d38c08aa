"""Exception types shared across the workbench."""


class HomstabError(Exception):
    """Base class for all workbench errors."""


class DimensionMismatch(HomstabError):
    """Matrix or morphism shapes are incompatible."""


class NotWellDefined(HomstabError):
    """A generator matrix does not descend to a module morphism."""


class NotAComplex(HomstabError):
    """A composite that must vanish does not."""


class NotExact(HomstabError):
    """A sequence required to be (short) exact is not."""


class UnsupportedRing(HomstabError):
    """The requested construction needs a ring capability the base ring lacks."""


class WrongShape(HomstabError):
    """A functor expression does not have the shape an operation requires."""


class HypothesisViolated(HomstabError):
    """An operation's mathematical hypothesis fails on the given input."""


class MembershipError(HomstabError):
    """An element expected to lie in a span does not."""


class SchemaError(HomstabError):
    """An input document does not conform to the serialization schema."""


class UnknownSuite(HomstabError):
    """No property suite is registered under the requested name."""
