"""The ax+b group of the real line as a plain value type.

Elements are points (a, b) of the upper half-plane, a > 0, with the law
(a, b) * (a', b') = (a a', a b' + b).  All operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GroupElement:
    """A dilation-translation pair (a, b) with a > 0."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a > 0):
            raise ValueError(
                f"invalid group element ({self.a!r}, {self.b!r}): need finite a > 0"
            )


IDENTITY = GroupElement(1.0, 0.0)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group law: (a, b) * (a', b') = (a a', a b' + b)."""
    return GroupElement(g.a * h.a, g.a * h.b + g.b)


def inverse(g: GroupElement) -> GroupElement:
    """The unique h with g * h = (1, 0), namely (1/a, -b/a)."""
    return GroupElement(1.0 / g.a, -g.b / g.a)


@dataclass(frozen=True)
class HaarWeights:
    """Densities at a point of the two invariant measures, taken w.r.t. da db.

    left  = a^-2   (left invariant measure)
    right = a^-1   (right invariant measure)
    """

    left: float
    right: float


def haar_weights(g: GroupElement) -> HaarWeights:
    return HaarWeights(left=g.a ** -2, right=1.0 / g.a)
