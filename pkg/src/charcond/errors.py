"""Exception types shared across the package.

Everything user-facing derives from :class:`CharcondError`, which the CLI maps
to exit code 2.  :class:`InternalContradiction` signals a broken mathematical
invariant (a bug, never bad input) and maps to exit code 3.
"""


class CharcondError(Exception):
    """Base class for all errors raised by this package."""


class NotAGroup(CharcondError):
    """A multiplication table fails the group axioms."""


class TooLarge(CharcondError):
    """A construction would exceed the configured group-size cap."""


class NotNormal(CharcondError):
    """An operation requires a normal subgroup."""


class NotIrreducible(CharcondError):
    """An operation requires an irreducible character."""


class IndexNotPrime(CharcondError):
    """An operation requires a subgroup of prime index."""


class NotInvariant(CharcondError):
    """The character is not invariant under the whole group."""


class GroupMismatch(CharcondError):
    """Two class functions live on different groups."""


class NotACharacter(CharcondError):
    """A class function is not a nonnegative integer combination of irreducibles."""


class NonIntegralExponent(CharcondError):
    """A conductor exponent came out non-integral, signalling inconsistent data."""


class BadChain(CharcondError):
    """A subgroup chain violates the normality or non-abelian-quotient requirements."""


class InvalidData(CharcondError):
    """Malformed input file, dataset, or reference."""


class InternalContradiction(CharcondError):
    """A mathematically guaranteed step failed; indicates a bug, not bad input."""
