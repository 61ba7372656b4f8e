"""Exact-arithmetic orbit classification in the 14-dimensional symplectic
representation over Q and odd prime fields, with the attached composition- and
Freudenthal-algebra data."""

__version__ = "0.1.0"

from .fields import PrimeField, RationalField, field_from_selector  # noqa: F401
from .wedgerep import XTuple  # noqa: F401
from .quartic import j_invariant  # noqa: F401
from .orbits import invariant, reduce_tuple, stratify  # noqa: F401
