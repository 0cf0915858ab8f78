"""Errors raised by the RT-surface toolkit."""
from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .expression import ExprNode


class RTSurfaceError(Exception):
    """Base error for the RT-surface toolkit."""


class ExpressionSyntaxError(RTSurfaceError):
    """Error to indicate malformed expression text."""

    def __init__(self, message: str, offset: int) -> None:
        """Initialize with the byte offset of the offending token."""
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnsupportedFunction(RTSurfaceError):
    """Error to indicate an identifier outside the grammar."""

    def __init__(self, name: str, offset: int) -> None:
        """Initialize with the identifier and its byte offset."""
        super().__init__(
            f"Unsupported function or identifier '{name}' at offset {offset}"
        )
        self.name = name
        self.offset = offset


class EvalErrorKind(Enum):
    """Reason a jet evaluation failed."""

    DIVISION_BY_ZERO = "division by zero"
    LOG_OF_ZERO = "log of zero"
    OVERFLOW = "overflow"


class EvalError(RTSurfaceError):
    """Error to indicate the point is a pole or branch point of an expression."""

    def __init__(self, kind: EvalErrorKind, node: ExprNode) -> None:
        """Initialize with the failure kind and the offending subexpression."""
        super().__init__(f"{kind.value} in {node}")
        self.kind = kind
        self.node = node


class DegenerateGaussMap(RTSurfaceError):
    """Error to indicate g' vanishes (numerically) at the point."""


class SingularPoint(RTSurfaceError):
    """Error to indicate det V vanishes and the immersion is not regular."""


class ConsistencyError(RTSurfaceError):
    """Error to indicate two routes to the same quantity disagree."""

    def __init__(
        self, quantity: str, computed: object, reference: object, deviation: float
    ) -> None:
        """Initialize with both values and their relative deviation."""
        super().__init__(
            f"{quantity} disagrees: {computed} vs {reference}"
            f" (relative {deviation:.3e})"
        )
        self.quantity = quantity
        self.computed = computed
        self.reference = reference
        self.deviation = deviation


class DegenerateGrid(RTSurfaceError):
    """Error to indicate the finite-difference tangents are parallel."""


class InvalidGrid(RTSurfaceError):
    """Error to indicate a grid specification is unusable."""


class EmptyMesh(RTSurfaceError):
    """Error to indicate no grid node could be evaluated."""
