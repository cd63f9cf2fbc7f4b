"""Exception hierarchy shared by all modules.

Parameter and input problems derive from ``ValueError`` so callers can catch
them generically; ``LemmaViolation`` and friends derive from ``RuntimeError``
because they signal an internal inconsistency, not bad input.
"""

from __future__ import annotations


class CMBentError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(CMBentError, ValueError):
    pass


class InternalInconsistency(CMBentError, RuntimeError):
    pass


# gf3
class RejectReducible(InvalidInput):
    pass


class RejectDegree(InvalidInput):
    pass


class ZeroToNegativePower(InvalidInput, ZeroDivisionError):
    pass


class NotInSubfield(InvalidInput):
    pass


class EtaOfZero(InvalidInput):
    pass


class ModulusFileError(InvalidInput):
    pass


# eisenstein
class NotRepresentable(InvalidInput):
    pass


class NormMismatch(InvalidInput):
    pass


class NoMatch(InternalInconsistency):
    pass


# trits
class HalfPoint(InvalidInput):
    pass


class ZeroResidue(InvalidInput):
    pass


class OddInput(InvalidInput):
    pass


class BadParameters(InvalidInput):
    pass


# cosets
class MalformedTerm(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


# walsh
class TooLarge(InvalidInput):
    pass


class SingularGram(InternalInconsistency):
    pass


# cmdual
class NotCovered(InvalidInput):
    pass


class NotInPrimeField(InternalInconsistency):
    pass


class LemmaViolation(InternalInconsistency):
    pass


# charsum
class YZero(InvalidInput):
    pass
