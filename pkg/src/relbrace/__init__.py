"""Exact computations with the relative brace operad and its binary quotient."""
from .trees import BasisElement, Color, Signature, Tree, parse

__version__ = "0.1.0"

__all__ = ["BasisElement", "Color", "Signature", "Tree", "parse", "__version__"]
