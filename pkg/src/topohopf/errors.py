"""Exception hierarchy shared by every module."""


class TopoHopfError(Exception):
    """Base class for all library errors."""


class InputError(TopoHopfError, ValueError):
    """Malformed or inconsistent arguments (unknown atoms or overlapping blocks)."""


class DomainError(TopoHopfError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ValidationError(TopoHopfError, ValueError):
    """A supplied structure fails the axioms it is claimed to satisfy."""


class ResourceError(TopoHopfError, RuntimeError):
    """A configured size cap was exceeded."""


class DSLSyntaxError(InputError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
