"""Constructions of tight T(pQ, Q) torus links.

Toroidal builds wrap concentric shells of unit-thickness helices (shell i at
tube radius 2i, evenly phased) around a common circular core line of major
radius R0, optionally around a central core component.  The hole radius
h = R0 - r_outer is sized so every shell satisfies the helix-packing
constraint; two builds are provided:

* increment: shell i carries increment * i helices (increment 4 fills each
  shell to the rectangle rule exactly; increment 5 overfills, forcing a wider
  hole and a worse length ratio).
* optimal: hole radius fixed at 2T, every shell filled to capacity
  (exact transcendental count or the rectangle estimate minus epsilon).

donut_double threads a second congruent torus through the first one's hole
(Hopf-linking every component of one copy with every component of the other),
which requires R0 >= 2 r_outer + 2 and turns T(pQ, Q) into a T(Q', Q')-type
link of 2Q components with crossing number 2 p Q (Q-1) + 2 Q^2.

Planar builds place q convex loops (circles or flattened "gibbous" ovals)
evenly around an axis, each displaced outward and tilted so consecutive loops
thread one another; hybrid_square threads q-1 gibbous loops through a central
rounded square instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .curves import rotation_about_axis, sample_planar_curve, sample_toroidal_helix
from .distances import mutual_min_distance
from .helices import (
    aggregate_correction,
    max_helices,
    toroidal_correction,
)
from .measure import LinkConfiguration

__all__ = [
    "OverlapError",
    "Shell",
    "TorusSpec",
    "ConstructionReport",
    "build_increment_spec",
    "build_optimal_spec",
    "analytic_length",
    "construction_report",
    "realize_torus",
    "inflate_for_doubling",
    "donut_double",
    "build_planar_link",
    "limiting_alpha",
]


class OverlapError(RuntimeError):
    """Raised when a realized configuration violates the clearance it claims."""


@dataclass(frozen=True)
class Shell:
    """One shell: helix tube radius, helix count, and phase offset."""

    radius: float
    count: int
    phase_offset: float = 0.0


@dataclass
class TorusSpec:
    """Parameters of one multi-shell torus construction."""

    shells: list
    has_core: bool
    major_radius: float
    p: int = 1
    t_shells: int | None = None

    def __post_init__(self):
        self.shells = [s if isinstance(s, Shell) else Shell(**s) for s in self.shells]
        if self.t_shells is None:
            self.t_shells = len(self.shells)
        if self.t_shells != len(self.shells):
            raise ValueError("t_shells must equal the number of shells")
        if not self.shells and not self.has_core:
            raise ValueError("spec needs a core or at least one shell")
        if self.p < 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        prev = 0.0
        for s in self.shells:
            if s.count < 1:
                raise ValueError(f"shell counts must be >= 1, got {s.count}")
            if s.radius < 2.0:
                raise ValueError(f"shell radii must be >= 2, got {s.radius}")
            if s.radius - prev < 2.0 - 1e-12 and prev > 0.0:
                raise ValueError(
                    f"shell radii must increase by >= 2, got {prev} then {s.radius}"
                )
            if s.radius <= prev:
                raise ValueError("shell radii must be strictly increasing")
            prev = s.radius
        if self.major_radius <= self.outer_radius:
            raise ValueError(
                f"major radius {self.major_radius} must exceed the outer shell "
                f"radius {self.outer_radius} (the hole must have positive size)"
            )

    @property
    def outer_radius(self) -> float:
        return self.shells[-1].radius if self.shells else 0.0

    @property
    def hole_radius(self) -> float:
        return self.major_radius - self.outer_radius

    @property
    def q(self) -> int:
        return int(self.has_core) + sum(s.count for s in self.shells)

    def crossing_number(self, doubled: bool = False) -> int:
        q = self.q
        single = self.p * q * (q - 1)
        return 2 * single + 2 * q * q if doubled else single

    def as_dict(self) -> dict:
        return {
            "shells": [
                {"radius": s.radius, "count": s.count, "phase_offset": s.phase_offset}
                for s in self.shells
            ],
            "has_core": self.has_core,
            "major_radius": self.major_radius,
            "p": self.p,
            "t_shells": self.t_shells,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TorusSpec":
        return cls(**d)


def _hole_radius_required(radius: float, count: int) -> float:
    """Rectangle-rule hole radius at which `count` helices of tube radius
    `radius` are exactly at capacity: inverts N = pi*h*r/sqrt(h^2+r^2)."""
    cap = math.pi * radius
    if count >= cap:
        raise ValueError(
            f"{count} helices exceed the circumferential capacity pi*r = {cap:.3f} "
            f"of a radius-{radius} shell at any height"
        )
    return count * radius / math.sqrt(cap * cap - count * count)


def build_increment_spec(
    t_shells: int,
    increment: int = 4,
    jenga_mode: str = "naive",
    outer_count: int | None = None,
) -> TorusSpec:
    """Torus spec with a core and increment*i helices on shell i (radius 2i).

    The hole radius comes from the rectangle rule h = N r / sqrt(pi^2 r^2 - N^2)
    (for increment 4 this is exactly h = N_outer / sqrt(pi^2 - 4), i.e. hole
    circumference (2*pi/sqrt(pi^2-4)) * N_outer): jenga_mode "naive" sizes it
    by the outermost shell alone, while "deferred_radius" takes the maximum
    requirement over all shells, which defers major-radius growth while a
    partially filled outer shell (see `outer_count`) still needs less room
    than the penultimate one.
    """
    if t_shells < 1:
        raise ValueError(f"need t_shells >= 1, got {t_shells}")
    if increment < 1:
        raise ValueError(f"need increment >= 1, got {increment}")
    counts = [increment * i for i in range(1, t_shells + 1)]
    if outer_count is not None:
        if outer_count < 1:
            raise ValueError(f"outer_count must be >= 1, got {outer_count}")
        counts[-1] = outer_count
    radii = [2.0 * i for i in range(1, t_shells + 1)]
    if jenga_mode == "naive":
        h = _hole_radius_required(radii[-1], counts[-1])
    elif jenga_mode == "deferred_radius":
        h = max(_hole_radius_required(r, n) for r, n in zip(radii, counts))
    else:
        raise ValueError(f"jenga_mode must be 'naive' or 'deferred_radius', got {jenga_mode!r}")
    major = h + radii[-1]
    shells = [Shell(r, n) for r, n in zip(radii, counts)]
    return TorusSpec(shells, has_core=True, major_radius=major, p=1, t_shells=t_shells)


def build_optimal_spec(
    t_shells: int, count_mode: str = "exact", epsilon: float = 1.0
) -> TorusSpec:
    """Capacity-filling torus spec: shell i at radius 2i, hole radius 2T,
    major radius 4T, no core; each shell holds max_helices(2i, 2T) helices.

    count_mode "exact" solves the pair constraint per shell; "approx" uses
    floor(N_a - epsilon).  The default epsilon = 1 reproduces the published
    component totals (e.g. doubled T=100 gives 2 x 26102 = 52204); exact
    counting packs ~0.4% more helices.
    """
    if t_shells < 1:
        raise ValueError(f"need t_shells >= 1, got {t_shells}")
    h = 2.0 * t_shells
    shells = []
    for i in range(1, t_shells + 1):
        n = max_helices(2.0 * i, h, count_mode, epsilon=epsilon)
        if n >= 1:
            shells.append(Shell(2.0 * i, n))
    if not shells:
        raise ValueError("no shell can host a single helix; t_shells too small")
    return TorusSpec(
        shells, has_core=False, major_radius=4.0 * t_shells, p=1, t_shells=len(shells)
    )


def analytic_length(spec: TorusSpec, corrected: bool = True) -> float:
    """Analytic centerline length of one realized torus.

    Each helix on shell radius r contributes 2*pi*sqrt(R0^2 + (p r)^2), the
    length of the equivalent straight helix (one axial turn of rise 2*pi*R0
    around a cylinder of circumference 2*pi*p*r); `corrected` multiplies by
    the exact toroidal correction at ratio R0/r.  The core adds 2*pi*R0.
    """
    r0 = spec.major_radius
    total = 2.0 * math.pi * r0 if spec.has_core else 0.0
    for s in spec.shells:
        per = 2.0 * math.pi * math.hypot(r0, spec.p * s.radius)
        if corrected:
            per *= toroidal_correction(r0 / s.radius, spec.p)
        total += s.count * per
    return total


@dataclass
class ConstructionReport:
    """Analytic summary of a torus construction."""

    spec: object
    q: int
    p: int
    crossing_number: int
    predicted_length: float
    alpha_predicted: float
    doubled: bool = False
    mirrored: bool = False
    inflation: float = 1.0

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        if isinstance(self.spec, TorusSpec):
            d["spec"] = self.spec.as_dict()
        return d


def construction_report(
    spec: TorusSpec, doubled: bool = False, mirrored: bool = False
) -> ConstructionReport:
    """Predicted length, crossing number, and coefficient for a (possibly
    doubled) torus spec; doubling inflates the major radius if needed."""
    inflation = 1.0
    realized_spec = spec
    if doubled:
        realized_spec, inflation = inflate_for_doubling(spec)
    length = analytic_length(realized_spec, corrected=True)
    if doubled:
        length *= 2.0
    crossings = spec.crossing_number(doubled)
    return ConstructionReport(
        spec=realized_spec,
        q=spec.q,
        p=spec.p,
        crossing_number=crossings,
        predicted_length=length,
        alpha_predicted=length / crossings ** 0.75,
        doubled=doubled,
        mirrored=mirrored,
        inflation=inflation,
    )


def realize_torus(
    spec: TorusSpec,
    n_points: int = 1000,
    check: bool = True,
    tolerance: float = 0.01,
) -> LinkConfiguration:
    """Sample every component of a torus spec as polygonal curves.

    Components are ordered core first, then shells inside out, helices by
    phase index.  With check=True the pairwise component clearance is
    verified: minimum distance < 2 - tolerance raises OverlapError.
    """
    comps = []
    if spec.has_core:
        comps.append(sample_toroidal_helix(spec.major_radius, 0.0, n_points=n_points))
    for s in spec.shells:
        for j in range(s.count):
            comps.append(
                sample_toroidal_helix(
                    spec.major_radius,
                    s.radius,
                    p=spec.p,
                    n_shell=s.count,
                    shell_index=j,
                    phase=s.phase_offset,
                    n_points=n_points,
                )
            )
    config = LinkConfiguration(
        comps,
        crossing_number=spec.crossing_number(doubled=False),
        description=f"torus link of {spec.q} components, p={spec.p}",
        metadata={"family": "torus", "doubled": False, "spec": spec.as_dict()},
    )
    if check and len(comps) > 1:
        d = mutual_min_distance(comps)
        if d < 2.0 - tolerance:
            raise OverlapError(
                f"realized component clearance {d:.6f} violates 2 - {tolerance}"
            )
    return config


def inflate_for_doubling(spec: TorusSpec) -> tuple:
    """Smallest major radius >= 2 r_outer + 2 permitting donut doubling.

    Returns (possibly inflated spec, inflation factor).  Two congruent tori
    threaded through each other sit at constant center-circle distance R0, so
    tube extents r_outer + 1 each demand R0 >= 2 r_outer + 2.
    """
    needed = 2.0 * spec.outer_radius + 2.0
    if spec.major_radius >= needed:
        return spec, 1.0
    factor = needed / spec.major_radius
    return replace(spec, major_radius=needed), factor


def donut_double(
    spec: TorusSpec,
    mirror: bool = False,
    n_points: int = 1000,
    check: bool = True,
    tolerance: float = 0.01,
) -> LinkConfiguration:
    """Thread a second congruent copy of the torus through the first's hole.

    The second copy is rotated 90 degrees about the x axis and translated
    along x by the (inflated) major radius, so its tube circle passes through
    the first torus' hole at constant clearance; mirror=True reflects the
    second copy through the xy plane first, producing the opposite-chirality
    variant.  Components are copy 1 then copy 2, in realize_torus order.
    """
    inflated, inflation = inflate_for_doubling(spec)
    first = realize_torus(inflated, n_points=n_points, check=False)
    rot = rotation_about_axis((1.0, 0.0, 0.0), 0.5 * math.pi)
    if mirror:
        rot = rot @ np.diag([1.0, 1.0, -1.0])
    shift = np.array([inflated.major_radius, 0.0, 0.0])
    second = [c.transformed(rot, shift) for c in first.components]
    config = LinkConfiguration(
        list(first.components) + second,
        crossing_number=spec.crossing_number(doubled=True),
        description=f"doubled torus link of {2 * spec.q} components, p={spec.p}",
        metadata={
            "family": "torus",
            "doubled": True,
            "mirrored": mirror,
            "inflation": inflation,
            "spec": inflated.as_dict(),
        },
    )
    if check:
        d = mutual_min_distance(config.components)
        if d < 2.0 - tolerance:
            raise OverlapError(
                f"doubled configuration clearance {d:.6f} violates 2 - {tolerance}"
            )
    return config


_PLANAR_DEFAULTS = {
    "circles": {"radius": 1.0, "rho": 0.5, "psi": 5.0 * math.pi / 18.0},
    "gibbous": {"gamma": 1.0, "delta": 0.0, "rho": 0.5, "psi": 5.0 * math.pi / 18.0},
    "hybrid_square": {
        "gamma": 1.0,
        "delta": 0.0,
        "rho": 0.5,
        "psi": 5.0 * math.pi / 18.0,
        "square_scale": 1.0,
        "square_flat_fraction": 0.5,
    },
}


def build_planar_link(
    q: int,
    family: str = "circles",
    params: dict | None = None,
    n_points: int = 1000,
    check: bool = True,
) -> LinkConfiguration:
    """q planar loops arranged so each pair is Hopf linked (a T(q,q) link).

    Loops sit at azimuths 2*pi*i/q, displaced outward by rho (in loop units)
    and tilted by psi about the radial direction.  Families: "circles"
    (params radius, rho, psi), "gibbous" (gamma, delta, rho, psi), and
    "hybrid_square" (q-1 gibbous loops around a central rounded square in the
    xy plane; adds square_scale, square_flat_fraction).  check=True rejects
    configurations whose components touch (they cannot be thickened at all);
    clearance scaling is otherwise left to normalization.
    """
    if q < 2:
        raise ValueError(f"need q >= 2 components, got {q}")
    if family not in _PLANAR_DEFAULTS:
        raise ValueError(f"unknown planar family {family!r}")
    merged = dict(_PLANAR_DEFAULTS[family])
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValueError(f"unknown parameter {key!r} for family {family!r}")
        merged[key] = float(value)

    rho, psi = merged["rho"], merged["psi"]
    if family == "circles":
        shape, shape_params = "circle", {"radius": merged["radius"]}
    else:
        shape, shape_params = "gibbous", {
            "gamma": merged["gamma"],
            "delta": merged["delta"],
        }

    comps = []
    n_ring = q - 1 if family == "hybrid_square" else q
    for i in range(n_ring):
        comps.append(
            sample_planar_curve(
                shape,
                shape_params,
                placement={
                    "azimuth": 2.0 * math.pi * i / n_ring,
                    "displacement": rho,
                    "inclination": psi,
                },
                n_points=n_points,
            )
        )
    if family == "hybrid_square":
        comps.append(
            sample_planar_curve(
                "rounded_square",
                {
                    "scale": merged["square_scale"],
                    "flat_fraction": merged["square_flat_fraction"],
                },
                placement={"inclination": 0.5 * math.pi},
                n_points=n_points,
            )
        )
    config = LinkConfiguration(
        comps,
        crossing_number=q * (q - 1),
        description=f"planar {family} link of {q} components",
        metadata={"family": family, "q": q, "params": merged},
    )
    if check:
        d = mutual_min_distance(comps)
        if d < 1e-9:
            raise OverlapError("components intersect; the link cannot be thickened")
    return config


def limiting_alpha(method: str, corrected: bool = False) -> float:
    """Large-T limit of ropelength / crossings^(3/4) for the torus builds.

    Methods: inc4_single, inc4_doubled, inc5_single, inc5_doubled,
    optimal_doubled.  corrected=True multiplies by the aggregate toroidal
    correction of the matching geometry (evaluated at T=10^4, converged to
    ~1e-5), accounting for the helices living on tori rather than cylinders.
    """
    s = math.sqrt(math.pi * math.pi - 4.0)
    kappa = 2.0 * math.pi * (1.0 / s + 0.5) * math.sqrt(8.0)
    rho5 = 2.0 + 10.0 / math.sqrt(4.0 * math.pi * math.pi - 25.0)
    if method == "inc4_single":
        base = ((kappa * kappa + 8.0 * math.pi ** 2) ** 1.5 - kappa ** 3) / (
            12.0 * math.pi ** 2
        )
        weighting, coeff = "increment", 1.0 + 2.0 / s
    elif method == "inc4_doubled":
        base = 4.0 * math.pi * (5.0 * math.sqrt(5.0) - 8.0) / 3.0
        weighting, coeff = "increment", 2.0
    elif method == "inc5_single":
        base = (
            (5.0 * math.pi / 6.0)
            * ((rho5 * rho5 + 4.0) ** 1.5 - rho5 ** 3)
            / 2.5 ** 1.5
        )
        weighting, coeff = "increment", rho5 / 2.0
    elif method == "inc5_doubled":
        base = (
            (5.0 * math.pi / 6.0)
            * ((rho5 * rho5 + 4.0) ** 1.5 - rho5 ** 3)
            / (2.5 ** 1.5 * math.sqrt(2.0))
        )
        weighting, coeff = "increment", 2.0
    elif method == "optimal_doubled":
        base = math.sqrt((7.0 + 5.0 * math.sqrt(2.0)) * math.pi) * (
            math.sqrt(10.0)
            - 2.0
            + 3.0 * (math.atanh(math.sqrt(0.4)) - math.atanh(0.5))
        )
        weighting, coeff = "optimal", 2.0
    else:
        raise ValueError(f"unknown limiting-alpha method {method!r}")
    if corrected:
        base *= aggregate_correction(10000, weighting, coeff)
    return base
