"""
Custom exceptions for the k-symplectic Lie-system toolkit

Every exception carries the process exit code the CLI reports for it.
"""

from typing import Any, Optional, Sequence, Tuple


class ToolkitException(Exception):
    """Base exception for toolkit errors"""

    def __init__(
        self,
        message: str,
        exit_code: int = 3,
        detail: Optional[str] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.detail = detail or message
        super().__init__(self.message)


class UsageException(ToolkitException):
    """Exception raised for malformed command-line input"""

    def __init__(self, message: str = "Invalid usage", detail: Optional[str] = None):
        super().__init__(message, exit_code=2, detail=detail)


class UnknownExampleException(ToolkitException):
    """Exception raised when an example id is not registered"""

    def __init__(self, example_id: str, detail: Optional[str] = None):
        self.example_id = example_id
        super().__init__(f"Unknown example: {example_id}", exit_code=2, detail=detail)


# Expressions


class ExpressionSyntaxException(ToolkitException):
    """Exception raised when an expression does not match the grammar"""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at byte {offset}")


class UnknownSymbolException(ToolkitException):
    """Exception raised for identifiers outside the chart"""

    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"Unknown symbol: {symbol}")


class UndefinedAtPointException(ToolkitException):
    """Exception raised when an expression cannot be evaluated at a point"""

    def __init__(self, message: str = "Expression undefined at point", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


class MissingBindingException(ToolkitException):
    """Exception raised when a point does not bind a free symbol"""

    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"No value bound for symbol: {symbol}")


class DomainExhaustedException(ToolkitException):
    """Exception raised when sampling keeps violating the domain"""

    def __init__(self, message: str = "Could not sample a valid point from the domain", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


# Geometry and structures


class ChartMismatchException(ToolkitException):
    """Exception raised when operands live on different charts"""

    def __init__(self, message: str = "Operands live on different charts", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


class NotClosedException(ToolkitException):
    """Exception raised when a two-form fails the closedness test"""

    def __init__(self, form_index: int, triple: Tuple[int, int, int]):
        self.form_index = form_index
        self.triple = triple
        super().__init__(f"Form {form_index} is not closed on index triple {triple}")


class DegenerateAtException(ToolkitException):
    """Exception raised when the stacked forms have a nontrivial kernel"""

    def __init__(self, point: Sequence[float]):
        self.point = tuple(point)
        super().__init__(f"Forms are jointly degenerate at {self.point}")


class ComponentCountMismatchException(ToolkitException):
    """Exception raised when tuple lengths disagree"""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Expected {expected} components, got {actual}")


class PreconditionFailedException(ToolkitException):
    """Exception raised when an operation's inputs fail its precondition"""

    def __init__(self, message: str = "Precondition failed", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


class BracketTableMismatchException(ToolkitException):
    """Exception raised when Hamiltonians do not close the expected table"""

    def __init__(self, message: str = "Bracket table does not hold", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


# Lie algebras


class LieAlgebraNotClosedException(ToolkitException):
    """Exception raised when a bracket is not a constant combination of the basis"""

    def __init__(self, pair: Tuple[int, int]):
        self.pair = pair
        super().__init__(f"Bracket of basis pair {pair} is not in the span of the basis")


class RankDeficientSamplesException(ToolkitException):
    """Exception raised when sampled basis values are linearly dependent"""

    def __init__(self, message: str = "Basis fields are dependent at the sampled points", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


class DimensionExceededException(ToolkitException):
    """Exception raised when a closure grows past its bound"""

    def __init__(self, max_dim: int):
        self.max_dim = max_dim
        super().__init__(f"Lie closure exceeds dimension {max_dim}")


class RankDropException(ToolkitException):
    """Exception raised when a distribution changes rank"""

    def __init__(self, point: Sequence[float]):
        self.point = tuple(point)
        super().__init__(f"Distribution rank drops at {self.point}")


# Integration


class LeftDomainException(ToolkitException):
    """Exception raised when a trajectory leaves the chart domain"""

    def __init__(self, t: float, point: Sequence[float], trajectory: Any = None):
        self.t = t
        self.point = tuple(point)
        self.trajectory = trajectory
        super().__init__(f"Trajectory left the domain at t={t}; last valid state {self.point}")


class NonFiniteStateException(ToolkitException):
    """Exception raised when the integrator produces inf or nan"""

    def __init__(self, t: float, trajectory: Any = None):
        self.t = t
        self.trajectory = trajectory
        super().__init__(f"Non-finite state at t={t}")


class GridMismatchException(ToolkitException):
    """Exception raised when trajectories do not share a time grid"""

    def __init__(self, message: str = "Trajectories use different time grids", detail: Optional[str] = None):
        super().__init__(message, detail=detail)


# Output


class OutputWriteException(ToolkitException):
    """Exception raised when a result file cannot be written or read"""

    def __init__(self, message: str = "Failed to write output", detail: Optional[str] = None):
        super().__init__(message, detail=detail)
