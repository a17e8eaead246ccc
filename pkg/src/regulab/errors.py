"""Typed failures shared by all layers."""


class LabError(Exception):
    """Base class for library errors."""


class DegenerateInput(LabError, ValueError):
    """Input violates a genericity or distinctness precondition."""


class UnfactorableElement(LabError, ValueError):
    """A field element does not factor over the admissible basis."""


class OddCoefficient(LabError, ArithmeticError):
    """Halving an alternation left an odd coefficient."""


class NonIntegralCoefficient(LabError, ArithmeticError):
    """Division of an alternation by its normalizer left a remainder."""
