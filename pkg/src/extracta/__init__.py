"""Extraction of polynomial ideals by control ideals, with standard bases
for arbitrary semigroup orders."""

from .errors import (
    DecompositionError,
    ExtractaError,
    OrderError,
    ParseError,
    RefusedError,
    RingMismatchError,
)
from .orders import OrderSpec, make_block_order, named_order, validate_matrix
from .poly import Ideal, Polynomial, Ring, substitute

__version__ = "0.1.0"
