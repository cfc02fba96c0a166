"""Classes in Z[L] of homogeneous spaces and rank-stratified loci, checked by point counting."""

__version__ = "0.1.0"

from .catalog import SpaceExpr, space_class
from .lefschetz import LPoly, ScaledClass, eval_at
from .parser import parse_space

__all__ = ["LPoly", "ScaledClass", "SpaceExpr", "eval_at", "parse_space", "space_class", "__version__"]
