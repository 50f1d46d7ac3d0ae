"""Exception hierarchy.

Every error carries an exit code used by the command-line front end:
2 for malformed or inconsistent input data, 3 when a theorem's hypothesis
does not hold for otherwise valid data, 4 for requests the calculator
cannot answer from combinatorial data alone.
"""

from __future__ import annotations


class OrientSignError(Exception):
    exit_code = 1


class MalformedInput(OrientSignError):
    """Input that is not JSON at all."""


class ValidationError(OrientSignError):
    exit_code = 2


class HypothesisError(OrientSignError):
    exit_code = 3


class UnsupportedError(OrientSignError):
    exit_code = 4


# -- validation --------------------------------------------------------------


class SchemaError(ValidationError):
    """JSON that does not match the expected document shape."""


class InvalidTopology(ValidationError):
    pass


class InvalidBundle(ValidationError):
    pass


class ParityMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class InvalidAction(ValidationError):
    """Malformed permutation, bit vector or sign, or an action that does
    not respect the real structure it acts on."""


class PermMismatch(ValidationError):
    pass


class RankNotOne(ValidationError):
    pass


class BadComponentIndex(ValidationError):
    pass


class LevelMismatch(ValidationError):
    pass


class InvalidDivisor(ValidationError):
    pass


class InvalidModuliData(ValidationError):
    pass


class BadMultiplicity(ValidationError):
    pass


class MissingPDClaim(ValidationError):
    pass


# -- hypotheses --------------------------------------------------------------


class EmptyRealLocus(HypothesisError):
    pass


class GenusTooSmall(HypothesisError):
    pass


class NotSeparating(HypothesisError):
    pass


class ParityBroken(HypothesisError):
    pass


class SpinHypothesisViolated(HypothesisError):
    pass


class HypothesisViolated(HypothesisError):
    pass


class NoPolarizingSection(HypothesisError):
    pass


# -- unsupported -------------------------------------------------------------


class TooLarge(UnsupportedError):
    pass


class SearchTooLarge(UnsupportedError):
    pass


class MissingFactor(UnsupportedError):
    pass
