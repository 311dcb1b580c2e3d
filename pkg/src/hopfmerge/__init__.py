"""Executable algebra of syntactic trees: free magmas, the Loday-Ronco Hopf
algebra, partially defined Merge on minimalist-grammar trees, workspaces
with their coproduct, and externalization, each with exhaustive checkers."""
from .linear import FormalSum
from .trees import (UNIT, AbstractTree, PlanarTree, TreeSyntaxError, admissible_cuts,
                    canonicalize, elementary_cut, forget_planar, parse_abstract, parse_planar,
                    parse_tree, planar_embeddings, quotient)

__version__ = "0.1.0"

__all__ = [
    "FormalSum", "UNIT", "AbstractTree", "PlanarTree", "TreeSyntaxError", "admissible_cuts",
    "canonicalize", "elementary_cut", "forget_planar", "parse_abstract", "parse_planar",
    "parse_tree", "planar_embeddings", "quotient",
]
