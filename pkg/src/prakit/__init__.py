"""Exact computations on product replacement graphs of small finite groups."""

__version__ = "0.1.0"

from .errors import CapExceeded, SpecError
from .groups import AbelianGroup, FiniteGroupTable, build_group
from .pragraph import GenTuple, NielsenMove, NielsenWord, components

__all__ = [
    "AbelianGroup",
    "CapExceeded",
    "FiniteGroupTable",
    "GenTuple",
    "NielsenMove",
    "NielsenWord",
    "SpecError",
    "__version__",
    "build_group",
    "components",
]
