"""Exact computations with algebras in skeletal ribbon categories."""

from .category import CategorySpec, load_category, load_category_file, validate_category
from .errors import RibbonAlgError
from .scalar import CycNum

__all__ = ["CategorySpec", "CycNum", "RibbonAlgError", "load_category", "load_category_file", "validate_category"]
__version__ = "0.1.0"
