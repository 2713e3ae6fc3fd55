"""Canal cross-sections, volumes and the reserved-water constant.

A canal is a prism: a trapezoidal (or rectangular) cross-section swept
along the canal's length.  Breadths and lengths are nindan, depths kùš,
so a cross-section is a nindan-kus quantity and a volume lands on
volume-sar.  The water a small canal actually holds sits at 0;48 (4/5)
of its depth, a constant attested on another Susa tablet (SMT No. 3,
line 33); everything water-related here is that pure ratio, with no
hydraulics behind it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InconsistentConstraint,
    NonPositiveDimension,
)
from .procedures import StepTrace
from .sexa import Sexa, SexaLike, reciprocal
from .units import Dimension, KUS_PER_NINDAN, Quantity, qdiv, qmul

__all__ = [
    "CanalConstant",
    "SMALL_CANAL_CONSTANT",
    "TrapezoidCanal",
    "RectCanal",
    "trapezoid_cross_section",
    "prism_volume",
    "reserved_water_volume",
    "breadths_from_constraints",
    "length_from_volume",
    "depth_from_labor",
]


@dataclass(frozen=True)
class CanalConstant:
    """Ratio of reserved-water depth to canal depth (z'/z).

    Attested constants are strictly below 1; ratio = 1 (water to the
    brim) is allowed as the degenerate case.
    """

    ratio: Sexa

    def __post_init__(self):
        object.__setattr__(self, "ratio", Sexa(self.ratio))
        if not 0 < self.ratio <= 1:
            raise InconsistentConstraint(
                "water level constant must lie in (0, 1]")


#: The "constant of a small canal": z'/z = 0;48 = 4/5.
SMALL_CANAL_CONSTANT = CanalConstant(Sexa(4, 5))


def _expect(q: Quantity, dim: Dimension, name: str) -> Quantity:
    if q.dim is not dim:
        raise DimensionMismatch(
            f"{name} must be {dim.value}, got {q.dim.value}")
    return q


def _positive(q: Quantity, name: str) -> Quantity:
    if q.magnitude <= 0:
        raise NonPositiveDimension(f"{name} must be positive")
    return q


@dataclass(frozen=True)
class TrapezoidCanal:
    """Canal with trapezoidal cross-section: breadths u >= v, length, depth."""

    upper_breadth: Quantity
    lower_breadth: Quantity
    length: Quantity
    depth: Quantity

    def __post_init__(self):
        _positive(_expect(self.upper_breadth, Dimension.LENGTH_NINDAN,
                          "upper breadth"), "upper breadth")
        _positive(_expect(self.lower_breadth, Dimension.LENGTH_NINDAN,
                          "lower breadth"), "lower breadth")
        _positive(_expect(self.length, Dimension.LENGTH_NINDAN, "length"),
                  "length")
        _positive(_expect(self.depth, Dimension.LENGTH_KUS, "depth"), "depth")
        if self.upper_breadth.magnitude < self.lower_breadth.magnitude:
            raise InconsistentConstraint(
                "upper breadth must not be smaller than lower breadth")

    def cross_section(self) -> Quantity:
        return trapezoid_cross_section(self.upper_breadth,
                                       self.lower_breadth, self.depth)

    def volume(self) -> Quantity:
        return prism_volume(self.cross_section(), self.length)


@dataclass(frozen=True)
class RectCanal:
    """Canal with rectangular cross-section."""

    length: Quantity
    width: Quantity
    depth: Quantity

    def __post_init__(self):
        _positive(_expect(self.length, Dimension.LENGTH_NINDAN, "length"),
                  "length")
        _positive(_expect(self.width, Dimension.LENGTH_NINDAN, "width"),
                  "width")
        _positive(_expect(self.depth, Dimension.LENGTH_KUS, "depth"), "depth")

    def cross_section(self) -> Quantity:
        return qmul(self.width, self.depth)

    def volume(self) -> Quantity:
        return qmul(self.length, self.cross_section())


def trapezoid_cross_section(upper: Quantity, lower: Quantity,
                            depth: Quantity) -> Quantity:
    """S = z*(u + v)/2, a nindan-kus cross-section area."""
    _positive(_expect(upper, Dimension.LENGTH_NINDAN, "upper breadth"),
              "upper breadth")
    _positive(_expect(lower, Dimension.LENGTH_NINDAN, "lower breadth"),
              "lower breadth")
    _positive(_expect(depth, Dimension.LENGTH_KUS, "depth"), "depth")
    return qmul(depth, upper + lower) * Sexa(1, 2)


def prism_volume(section: Quantity, length: Quantity) -> Quantity:
    """V = x*S: sweep a cross-section along the canal length."""
    _positive(_expect(section, Dimension.CROSS_SECTION, "cross-section"),
              "cross-section")
    _positive(_expect(length, Dimension.LENGTH_NINDAN, "length"), "length")
    return qmul(length, section)


def reserved_water_volume(volume: Quantity,
                          constant: CanalConstant = SMALL_CANAL_CONSTANT,
                          ) -> Quantity:
    """V' = ratio * V: the part of a canal volume actually under water."""
    _expect(volume, Dimension.VOLUME_SAR, "volume")
    return volume * constant.ratio


def breadths_from_constraints(upper: SexaLike, *,
                              excess: SexaLike = Sexa(1, 2),
                              excess_share: SexaLike = Sexa(1, 12),
                              ) -> tuple[Sexa, Sexa]:
    """Lower breadth and depth tied to the upper breadth u.

    The first SMT No. 24 problem assumes v = u/2 + 0;30 and
    z = 12*(0;30 + (u - v)/12); the constants 0;30 ("the excess") and
    1/12 are exposed so near-variant problems can reuse the rule.
    Returns bare numbers: v in nindan, z in kùš.
    """
    u = Sexa(upper)
    excess = Sexa(excess)
    v = u * Sexa(1, 2) + excess
    if u < v:
        raise InconsistentConstraint(
            f"upper breadth {u.numerator}/{u.denominator} is smaller than "
            f"the derived lower breadth {v.numerator}/{v.denominator}")
    z = KUS_PER_NINDAN * (excess + Sexa(excess_share) * (u - v))
    return v, z


def length_from_volume(volume: Quantity, section: Quantity) -> Quantity:
    """x = V/S by reciprocal multiplication (S must be regular)."""
    _positive(_expect(volume, Dimension.VOLUME_SAR, "volume"), "volume")
    _positive(_expect(section, Dimension.CROSS_SECTION, "cross-section"),
              "cross-section")
    return qdiv(volume, section)


def depth_from_labor(total_water: Quantity, reach_length: SexaLike,
                     workers: Quantity, width: Quantity,
                     constant: CanalConstant = SMALL_CANAL_CONSTANT,
                     ) -> tuple[Quantity, Quantity, StepTrace]:
    """Depth of a rectangular canal from its water volume and work norms.

    The tablet statement is broken; this follows the restoration implied
    by the surviving arithmetic: a gang of workers digs the canal in
    reaches of ``reach_length`` nindan each, the reserved water comes to
    ``total_water``, the width is given, find the depth.  The chain is
    run in the scribe's order, one reciprocal multiplication per line:
    water per nindan of length, water per worker (equal to the submerged
    cross-section for a 1-nindan slice), full cross-section via the canal
    constant, then depth = section/width and the water depth z' below it.
    """
    _positive(_expect(total_water, Dimension.VOLUME_SAR, "total water"),
              "total water")
    _positive(_expect(workers, Dimension.WORKER_COUNT, "workers"), "workers")
    _positive(_expect(width, Dimension.LENGTH_NINDAN, "width"), "width")
    reach = Sexa(reach_length)
    if reach <= 0:
        raise NonPositiveDimension("reach length must be positive")

    trace = StepTrace()
    recip_reach = trace.record("recip_reach", reciprocal(reach))
    per_length = trace.record("water_per_length", total_water * recip_reach)
    trace.record("recip_workers", reciprocal(workers.magnitude))
    per_worker = trace.record("water_per_worker", qdiv(per_length, workers))
    # A 1-nindan slice: the per-worker water volume is numerically the
    # submerged cross-section.
    submerged = qdiv(per_worker, Quantity(1, Dimension.LENGTH_NINDAN))
    recip_constant = trace.record("recip_canal_constant",
                                  reciprocal(constant.ratio))
    section = trace.record("cross_section", submerged * recip_constant)
    trace.record("recip_width", reciprocal(width.magnitude))
    depth = trace.record("depth", qdiv(section, width))
    water_depth = trace.record("water_depth", depth * constant.ratio)
    return depth, water_depth, trace
