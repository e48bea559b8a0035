"""Tagged results shared by the valuation engines and the skew-poly layer."""

from typing import NamedTuple


class Zeta(NamedTuple):
    value: int


class InfiniteBeyond(NamedTuple):
    """Singular, or valuation beyond the stated budget."""

    bound: int


class Deg(NamedTuple):
    value: int


class MinusInfinity(NamedTuple):
    """deg Det of a singular matrix."""


class Ord(NamedTuple):
    value: int


class PlusInfinity(NamedTuple):
    """ord Det of a singular matrix."""


class Dim(NamedTuple):
    value: int


class InfiniteDimension(NamedTuple):
    """Solution space of a singular system."""
