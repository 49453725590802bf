"""Exception types shared across the toolkit."""


class GeometryError(Exception):
    """Base class for numerical-geometry failures."""


class ExprSyntaxError(SyntaxError):
    """Malformed expression text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at offset {position}")
        self.message = message
        self.position = position
        self.text = text


class DomainError(GeometryError, ValueError):
    """Expression evaluated outside the domain of one of its operations."""

    def __init__(self, message, subexpression=None):
        if subexpression is not None:
            message = f"{message} in '{subexpression}'"
        super().__init__(message)
        self.subexpression = subexpression


class NonRegular(GeometryError):
    """Curve speed (or Gauss-image speed) dropped below the regularity threshold."""


class DegenerateFrame(GeometryError):
    def __init__(self, stage, message=None):
        super().__init__(message or f"Frenet frame degenerate at stage {stage}")
        self.stage = stage


class RankDeficient(GeometryError):
    """Patch Jacobian lost rank, so there is no tangent plane."""


class VerificationFailed(GeometryError):
    """Independent re-check of a computed helix-direction space failed."""


class StepTooLarge(GeometryError):
    """Per-step speed drift of the geodesic integrator exceeded its bound."""


class PreconditionError(GeometryError, ValueError):
    """Inputs do not meet the stated precondition of a check."""


class SceneError(ValueError):
    """Invalid scene file; ``path`` is a JSON pointer to the offending field."""

    def __init__(self, message, path=""):
        super().__init__(f"{path or '/'}: {message}")
        self.message = message
        self.path = path
