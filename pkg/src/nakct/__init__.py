"""Exact computations for higher Nakayama algebras and their cluster-tilting subcategories."""

from .kupisch import KupischSeries, parse, validate
from .modcat import ModCat

__all__ = ["KupischSeries", "ModCat", "parse", "validate"]
__version__ = "0.1.0"
