"""Thickness, ropelength, and summary metrics of polygonal link configurations.

A configuration of unit-thickness tubes is embedded when every pair of
distinct components stays at least one tube diameter (2 units) apart, every
component keeps that same clearance from itself away from local neighbours,
and no centreline bends tighter than the tube radius (1 unit).  The
normalized ropelength rescales the total centreline length by the worst
violation, so it is invariant under uniform scaling and rigid motions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curves import PolyCurve, min_curvature_radius
from .distances import _auto_arc_windows, _certified_min, mutual_min_distance

__all__ = ["LinkConfiguration", "LinkMetrics", "measure_link"]


@dataclass
class LinkConfiguration:
    """A multi-component polygonal link plus whatever is known about it."""

    components: list
    crossing_number: int | None = None
    description: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.components = list(self.components)
        if not self.components:
            raise ValueError("configuration needs at least one component")
        for c in self.components:
            if not isinstance(c, PolyCurve):
                raise TypeError("components must be PolyCurve instances")

    @property
    def n_components(self) -> int:
        return len(self.components)

    def total_length(self) -> float:
        return float(sum(c.length() for c in self.components))

    def scaled(self, factor: float) -> "LinkConfiguration":
        return LinkConfiguration(
            [c.scaled(factor) for c in self.components],
            crossing_number=self.crossing_number,
            description=self.description,
            metadata=dict(self.metadata),
        )

    def transformed(self, rotation=None, translation=None) -> "LinkConfiguration":
        return LinkConfiguration(
            [c.transformed(rotation, translation) for c in self.components],
            crossing_number=self.crossing_number,
            description=self.description,
            metadata=dict(self.metadata),
        )


@dataclass
class LinkMetrics:
    """Summary measurements of a link configuration."""

    total_length: float
    min_inter_distance: float
    min_self_distance: float
    min_overall_distance: float
    min_curvature_radius: float
    thickness: float
    normalized_length: float
    crossing_number: int | None = None
    length_per_crossing: float | None = None
    alpha: float | None = None

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def measure_link(config, skip_window: int = 5) -> LinkMetrics:
    """Measure a LinkConfiguration (or plain list of PolyCurve components).

    Self distances exclude pairs closer along the curve than pi times the
    component's minimal curvature radius (with a `skip_window`-segment floor):
    such pairs describe local bending, already accounted for by the curvature
    term, rather than genuine self contact.
    """
    if not isinstance(config, LinkConfiguration):
        config = LinkConfiguration(list(config))
    comps = config.components

    total_length = config.total_length()
    rho = min(min_curvature_radius(c) for c in comps)

    min_inter = mutual_min_distance(comps) if len(comps) > 1 else np.inf
    min_self = np.inf
    for c in comps:
        arc_windows = _auto_arc_windows([c], skip_window)
        min_self = min(
            min_self,
            _certified_min(
                [c], inter=False, intra=True, skip_window=skip_window,
                arc_windows=arc_windows,
            ),
        )
    min_overall = min(min_inter, min_self)

    thickness = min(min_overall / 2.0, rho) if np.isfinite(min_overall) else rho
    normalized = total_length / thickness if thickness > 0 else np.inf

    crossings = config.crossing_number
    lpc = None
    alpha = None
    if crossings:
        lpc = normalized / crossings
        alpha = normalized / crossings ** 0.75

    return LinkMetrics(
        total_length=total_length,
        min_inter_distance=float(min_inter),
        min_self_distance=float(min_self),
        min_overall_distance=float(min_overall),
        min_curvature_radius=float(rho),
        thickness=float(thickness),
        normalized_length=float(normalized),
        crossing_number=crossings,
        length_per_crossing=lpc,
        alpha=alpha,
    )
