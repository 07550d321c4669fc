"""Exception types raised by the engine.

Every engine error carries the offending object so the CLI can serialize it.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all computation errors."""

    def __init__(self, message: str, obj=None):
        super().__init__(message)
        self.obj = obj


class NonGenericSlope(EngineError):
    pass


class UnitMonomial(EngineError):
    pass


class ConeViolation(EngineError):
    pass


class NonIntegralCoefficient(EngineError):
    pass


class DenominatorVanishes(EngineError):
    pass


class NonFiniteSum(EngineError):
    pass


class StabilizationFailure(EngineError):
    pass


class PoleAtPoint(EngineError):
    pass


class DegenerateSpecialization(EngineError):
    pass


class DegenerateWeight(EngineError):
    pass


class InclusionViolated(EngineError):
    pass


class NotDivisible(EngineError):
    pass
