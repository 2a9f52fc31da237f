"""Exact inflators, fundamental rings and mutation over fields extending Q."""

from .fields import FieldId, Place, parse_element, format_element
from .linalg import Subspace
from .directory import CodomainDescriptor, DirectoryElement, Endo
from .inflators import build, builtin, evaluate, check_morphism
from .fundamental import membership, classify_tame, mv_type_test
from .mutation import Line, mutate, taming_line

__version__ = "0.1.0"

__all__ = [
    "FieldId", "Place", "parse_element", "format_element", "Subspace",
    "CodomainDescriptor", "DirectoryElement", "Endo", "build", "builtin", "evaluate",
    "check_morphism", "membership", "classify_tame", "mv_type_test", "Line", "mutate",
    "taming_line",
]
