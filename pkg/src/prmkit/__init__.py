"""prmkit: projective Reed-Muller codes, subfield subcodes, and weight bounds."""

from .codes import CodeSpec, LinearCode
from .gf import FieldCtx, build_field, build_field_of_order

__all__ = ["CodeSpec", "LinearCode", "FieldCtx", "build_field", "build_field_of_order"]
__version__ = "0.1.0"
