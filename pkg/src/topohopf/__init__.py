"""Hopf-algebraic structures on finite topologies, with QSym/WQSym and moulds."""

from .errors import DomainError, DSLSyntaxError, InputError, ResourceError, TopoHopfError, ValidationError
from .lincomb import LinComb
from .qposet import QPoset, parse, parse_dsl, print_dsl

__all__ = [
    "DSLSyntaxError",
    "DomainError",
    "InputError",
    "LinComb",
    "QPoset",
    "ResourceError",
    "TopoHopfError",
    "ValidationError",
    "parse",
    "parse_dsl",
    "print_dsl",
]

__version__ = "0.1.0"
