"""Exception types raised across the package."""

from __future__ import annotations


class RibbonAlgError(Exception):
    """Base class for all package errors."""


class MalformedScalar(RibbonAlgError, ValueError):
    pass


class DivByZero(RibbonAlgError, ZeroDivisionError):
    pass


class MalformedSpec(RibbonAlgError, ValueError):
    pass


class NotSupported(RibbonAlgError):
    pass


class TypeMismatch(RibbonAlgError, TypeError):
    pass


class DiagramSyntaxError(RibbonAlgError, SyntaxError):
    """Parse error in diagram text; ``pos`` is the character offset."""

    def __init__(self, message: str, pos: int = -1):
        super().__init__(f"{message} (at offset {pos})" if pos >= 0 else message)
        self.pos = pos


class UnboundName(RibbonAlgError, NameError):
    pass


class NotAGroup(RibbonAlgError, ValueError):
    pass


class DegenerateAlgebra(RibbonAlgError, ValueError):
    pass


class InvalidTwist(RibbonAlgError, ValueError):
    pass


class InternalInconsistency(RibbonAlgError, AssertionError):
    pass


class NotInvertible(RibbonAlgError, ValueError):
    pass


class CheckGFailed(RibbonAlgError, ValueError):
    pass
