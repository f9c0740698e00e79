"""Exception hierarchy.

Every structural failure carries a ``witness``: a small, JSON-friendly
description of the basis elements (or vector) at which an identity failed.
"""


class CohocoringError(Exception):
    """Base class; ``witness`` is a dict describing where the failure occurred."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness if witness is not None else {}

    def report(self):
        return {"error": type(self).__name__, "message": str(self), "witness": self.witness}


class DimensionMismatch(CohocoringError):
    pass


class WellDefinednessViolation(CohocoringError):
    pass


class AssociativityViolation(CohocoringError):
    pass


class UnitViolation(CohocoringError):
    pass


class NotAGroup(CohocoringError):
    pass


class MorphismViolation(CohocoringError):
    pass


class AlgebraMismatch(CohocoringError):
    pass


class BimoduleViolation(CohocoringError):
    pass


class NotAnAction(CohocoringError):
    pass


class NotBimoduleMap(CohocoringError):
    pass


class CoassocViolation(CohocoringError):
    pass


class CounitViolation(CohocoringError):
    pass


class NotInjective(CohocoringError):
    pass


class NotSplitting(CohocoringError):
    pass


class CoseparabilityCheckFailed(CohocoringError):
    pass


class AxiomViolation(CohocoringError):
    """A bialgebroid or para-Hopf axiom failed; ``axiom`` names which one."""

    def __init__(self, axiom, message, witness=None):
        super().__init__("%s: %s" % (axiom, message), witness)
        self.axiom = axiom


class HypothesisViolation(CohocoringError):
    """A crossed-product precondition failed; ``hypothesis`` names which one."""

    def __init__(self, hypothesis, message, witness=None):
        super().__init__("%s: %s" % (hypothesis, message), witness)
        self.hypothesis = hypothesis


class ModuleCoringViolation(CohocoringError):
    def __init__(self, condition, message, witness=None):
        super().__init__("%s: %s" % (condition, message), witness)
        self.condition = condition


class HaarViolation(CohocoringError):
    pass


class IdentityViolation(CohocoringError):
    pass


class IsoViolation(CohocoringError):
    pass


class HomotopyViolation(CohocoringError):
    pass


class NotAComplex(CohocoringError):
    pass


class BadCharacteristic(CohocoringError):
    pass


class BaseNotField(CohocoringError):
    pass


class ParseError(CohocoringError):
    pass
