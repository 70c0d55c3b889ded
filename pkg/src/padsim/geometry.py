"""Pad geometry, layered tissue stacks, and scene construction.

Geometry conventions (units: mm):
  * z axis is vertical, z = 0 at the outer tissue surface, z increases up.
  * Flat scenes: tissue fills z < 0, the pad disk sits on z in [0, thickness],
    the source is on the +z axis.
  * Bent scenes: the tissue is a cylinder with axis along y at depth z = -R,
    so the top of the cylinder touches z = 0; the pad wraps the outer surface
    around x = 0.  The flat pad's in-plane coordinates (u, v) map to arc
    length along the circumference (u = R * phi) and axial position (v = y).

The two copper rings are concentric cylindrical bands of diameters d1 and d2
and axial height H1, sitting h2 above the bottom face of the disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConfigurationError
from .materials import AIR, PAD_MEDIUM, DielectricMaterial, preset_table

# Free-space resonant length of the external half-wave dipole used in
# S-parameter studies.  Tuned on the solver itself at 0.5 mm resolution in
# vacuum (input reactance zero crossing closest to 2.45 GHz); the tuning
# script lives in docs/tune_dipole.py and the value is recorded in run
# metadata of every port run.
DEFAULT_EXTERNAL_DIPOLE_LENGTH_MM = 55.0

MIN_COPPER_CLEARANCE_MM = 0.3
MAX_DISK_THICKNESS_MM = 2.0


@dataclass(frozen=True)
class PadDesign:
    """All geometric and material parameters of the ring-loaded pad."""

    eps_r_pad: float = 4.0
    tan_delta_pad: float = 0.02
    disk_diameter_mm: float = 55.0       # d3
    disk_thickness_mm: float = 2.0
    ring_inner_diameter_mm: float = 15.5  # d1
    ring_outer_diameter_mm: float = 25.0  # d2
    ring_height_mm: float = 1.16          # H1
    bottom_clearance_mm: float = 0.3      # h2
    copper_thickness_mm: float = 0.12     # metadata only; copper is PEC

    def __post_init__(self):
        # Physical consistency only; design-rule compliance is validate_pad's
        # job and violations there are data, not faults.
        if min(
            self.disk_diameter_mm,
            self.disk_thickness_mm,
            self.ring_inner_diameter_mm,
            self.ring_outer_diameter_mm,
            self.ring_height_mm,
        ) <= 0:
            raise ConfigurationError("pad dimensions must be positive")
        if self.bottom_clearance_mm < 0:
            raise ConfigurationError("bottom clearance must be >= 0")
        if not (self.ring_inner_diameter_mm < self.ring_outer_diameter_mm):
            raise ConfigurationError("ring diameters must satisfy d1 < d2")
        if self.ring_outer_diameter_mm >= self.disk_diameter_mm:
            raise ConfigurationError("rings must lie inside the disk")
        if self.bottom_clearance_mm + self.ring_height_mm > self.disk_thickness_mm:
            raise ConfigurationError("rings must fit inside the disk thickness")

    @property
    def material(self) -> DielectricMaterial:
        return DielectricMaterial(
            "pad", self.eps_r_pad, tan_delta=self.tan_delta_pad
        )

    @classmethod
    def paper(cls) -> "PadDesign":
        """The optimized design (d1=15.5, d2=25, d3=55, H1=1.16, h2=0.3)."""
        return cls()

    @classmethod
    def fabricated(cls) -> "PadDesign":
        """The physically built disk (2.13 mm thick, 54.6 mm diameter)."""
        return cls(disk_thickness_mm=2.13, disk_diameter_mm=54.6)


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    ok: bool
    slack: float  # positive margin; negative = violated by that much

    def __str__(self):
        state = "ok" if self.ok else "VIOLATED"
        return f"{self.name}: {state} (slack {self.slack:+.4g} mm)"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violations(self) -> tuple:
        return tuple(c for c in self.checks if not c.ok)

    def __str__(self):
        return "\n".join(str(c) for c in self.checks)


def validate_pad(p: PadDesign) -> ValidationReport:
    """Check the pad against the design constraints; violations are data."""
    lateral = 0.5 * (p.disk_diameter_mm - p.ring_outer_diameter_mm)
    top = p.disk_thickness_mm - p.bottom_clearance_mm - p.ring_height_mm
    checks = (
        ConstraintCheck(
            "max-thickness",
            p.disk_thickness_mm <= MAX_DISK_THICKNESS_MM,
            MAX_DISK_THICKNESS_MM - p.disk_thickness_mm,
        ),
        ConstraintCheck(
            "bottom-clearance",
            p.bottom_clearance_mm >= MIN_COPPER_CLEARANCE_MM,
            p.bottom_clearance_mm - MIN_COPPER_CLEARANCE_MM,
        ),
        ConstraintCheck(
            "top-clearance",
            top >= MIN_COPPER_CLEARANCE_MM - 1e-12,
            top - MIN_COPPER_CLEARANCE_MM,
        ),
        ConstraintCheck(
            "lateral-clearance",
            lateral >= MIN_COPPER_CLEARANCE_MM,
            lateral - MIN_COPPER_CLEARANCE_MM,
        ),
        ConstraintCheck(
            "ring-order",
            0 < p.ring_inner_diameter_mm < p.ring_outer_diameter_mm,
            p.ring_outer_diameter_mm - p.ring_inner_diameter_mm,
        ),
    )
    return ValidationReport(checks)


@dataclass(frozen=True)
class LayerStack:
    """Ordered (material, thickness mm) list, top to bottom.

    Above the stack lies an air half-space; ``termination`` states what the
    bottom runs into: "absorbing" (the last material continues into the
    absorbing boundary), "pec", or "air".
    """

    layers: tuple  # of (DielectricMaterial, thickness_mm)
    termination: str = "absorbing"

    def __post_init__(self):
        if self.termination not in ("absorbing", "pec", "air"):
            raise ConfigurationError(
                f"unknown termination policy {self.termination!r}"
            )
        if not self.layers:
            raise ConfigurationError("stack needs at least one layer")
        for mat, t in self.layers:
            if t <= 0:
                raise ConfigurationError(
                    f"layer {mat.name!r} has non-positive thickness {t}"
                )

    @property
    def total_thickness_mm(self) -> float:
        return sum(t for _, t in self.layers)

    def interfaces_mm(self) -> list:
        """Depths of the layer boundaries from the surface, including 0."""
        depths = [0.0]
        for _, t in self.layers:
            depths.append(depths[-1] + t)
        return depths

    def material_at_depth(self, depth_mm: float) -> DielectricMaterial:
        """Material at a depth below the surface (>= 0); the last layer
        extends indefinitely under the 'absorbing' policy."""
        if depth_mm < 0:
            return AIR
        z = 0.0
        for mat, t in self.layers:
            z += t
            if depth_mm < z:
                return mat
        if self.termination == "absorbing":
            return self.layers[-1][0]
        if self.termination == "air":
            return AIR
        return self.layers[-1][0]  # pec handled by the grid boundary

    def layer_span_mm(self, name: str) -> tuple:
        """(top, bottom) depth of the first layer with the given name."""
        top = 0.0
        for mat, t in self.layers:
            if mat.name == name:
                return (top, top + t)
            top += t
        raise ConfigurationError(f"stack has no layer named {name!r}")


def paper_stack(source: str = "simulation-model") -> LayerStack:
    """Skin 5 mm / fat 25 mm / muscle 30 mm with Table-style presets."""
    table = preset_table(source)
    return LayerStack(
        layers=(
            (table["skin"], 5.0),
            (table["fat"], 25.0),
            (table["muscle"], 30.0),
        )
    )


@dataclass(frozen=True)
class SourceSpec:
    """External excitation: idealized dipole, wire dipole, or plane wave."""

    kind: str  # "hertzian" | "wire-dipole" | "plane-wave"
    position_mm: tuple = (0.0, 0.0, 130.0)
    polarization: tuple = (1.0, 0.0, 0.0)
    # wire-dipole only
    length_mm: float = DEFAULT_EXTERNAL_DIPOLE_LENGTH_MM
    gap_mm: float = 1.0
    z0_ohm: float = 50.0
    # plane-wave only
    direction: tuple = (0.0, 0.0, -1.0)

    def __post_init__(self):
        if self.kind not in ("hertzian", "wire-dipole", "plane-wave"):
            raise ConfigurationError(f"unknown source kind {self.kind!r}")
        n = math.sqrt(sum(c * c for c in self.polarization))
        if not math.isclose(n, 1.0, rel_tol=1e-9):
            raise ConfigurationError("polarization must be a unit vector")


@dataclass(frozen=True)
class ImplantSpec:
    """Wire-dipole port implanted in the fat layer."""

    depth_mm: float
    length_mm: float = 25.0
    gap_mm: float = 1.0
    z0_ohm: float = 50.0


@dataclass(frozen=True)
class Scene:
    """Layered stack + optional pad + sources and probes."""

    stack: LayerStack
    source: SourceSpec
    pad: PadDesign | None = None
    curvature: str = "planar"          # "planar" | "cylinder"
    cylinder_diameter_mm: float | None = None
    probes_mm: tuple = ()              # (x, y, z) points
    implant: ImplantSpec | None = None
    lateral_extent_mm: float = 150.0

    def __post_init__(self):
        if self.curvature not in ("planar", "cylinder"):
            raise ConfigurationError(f"unknown curvature {self.curvature!r}")
        if self.curvature == "cylinder":
            if not self.cylinder_diameter_mm:
                raise ConfigurationError("cylinder curvature needs a diameter")
            if self.cylinder_diameter_mm < 2 * self.stack.total_thickness_mm - 1e-9:
                raise ConfigurationError(
                    "cylinder diameter must be at least twice the stack thickness"
                )
            if self.pad is not None:
                radius = 0.5 * self.cylinder_diameter_mm
                if self.pad.disk_diameter_mm > math.pi * radius:
                    raise ConfigurationError(
                        "pad arc coverage exceeds half the circumference: "
                        f"d3={self.pad.disk_diameter_mm} mm > pi*R="
                        f"{math.pi * radius:.1f} mm"
                    )
        for p in self.probes_mm:
            if self.depth_of(p) <= 0 or self.depth_of(p) > self.stack.total_thickness_mm:
                raise ConfigurationError(
                    f"probe {p} lies outside the tissue region"
                )
        if self.implant is not None:
            top, bottom = self.stack.layer_span_mm("fat")
            if not (top < self.implant.depth_mm < bottom):
                raise ConfigurationError(
                    f"implant depth {self.implant.depth_mm} mm is outside the "
                    f"fat layer ({top}-{bottom} mm)"
                )

    # -- geometry queries -------------------------------------------------

    @property
    def cylinder_radius_mm(self) -> float | None:
        if self.curvature != "cylinder":
            return None
        return 0.5 * self.cylinder_diameter_mm

    def depth_of(self, point_mm) -> float:
        """Depth below the outer tissue surface of an (x, y, z) point."""
        x, y, z = point_mm
        if self.curvature == "planar":
            return -z
        r = math.hypot(x, z + self.cylinder_radius_mm)
        return self.cylinder_radius_mm - r

    def scene_hash_dict(self, include_pad: bool = True) -> dict:
        """Canonical description used for run hashing and comparability."""
        d = {
            "stack": [
                (m.name, m.eps_r, m.conductivity, t) for m, t in self.stack.layers
            ],
            "termination": self.stack.termination,
            "curvature": self.curvature,
            "cylinder_diameter_mm": self.cylinder_diameter_mm,
            "source": (
                self.source.kind,
                self.source.position_mm,
                self.source.polarization,
                self.source.length_mm,
                self.source.gap_mm,
                self.source.z0_ohm,
                self.source.direction,
            ),
            "probes_mm": list(self.probes_mm),
            "implant": (
                None
                if self.implant is None
                else (
                    self.implant.depth_mm,
                    self.implant.length_mm,
                    self.implant.gap_mm,
                    self.implant.z0_ohm,
                )
            ),
            "lateral_extent_mm": self.lateral_extent_mm,
        }
        if include_pad:
            d["pad"] = (
                None
                if self.pad is None
                else (
                    self.pad.eps_r_pad,
                    self.pad.tan_delta_pad,
                    self.pad.disk_diameter_mm,
                    self.pad.disk_thickness_mm,
                    self.pad.ring_inner_diameter_mm,
                    self.pad.ring_outer_diameter_mm,
                    self.pad.ring_height_mm,
                    self.pad.bottom_clearance_mm,
                )
            )
        return d

    def without_pad(self) -> "Scene":
        return replace(self, pad=None)


def build_flat_scene(
    stack: LayerStack,
    pad: PadDesign | None = None,
    source_height_mm: float = 130.0,
    probe_depths_mm=(5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0),
    implant_depth_mm: float | None = None,
    source_kind: str = "hertzian",
    lateral_extent_mm: float = 150.0,
) -> Scene:
    """Flat three-layer scene with on-axis probes and optional implant."""
    for d in probe_depths_mm:
        if not (0 < d <= stack.total_thickness_mm):
            raise ConfigurationError(f"probe depth {d} mm is outside the stack")
    source = SourceSpec(
        kind=source_kind,
        position_mm=(0.0, 0.0, float(source_height_mm)),
        polarization=(1.0, 0.0, 0.0),
    )
    implant = None if implant_depth_mm is None else ImplantSpec(implant_depth_mm)
    return Scene(
        stack=stack,
        source=source,
        pad=pad,
        probes_mm=tuple((0.0, 0.0, -float(d)) for d in probe_depths_mm),
        implant=implant,
        lateral_extent_mm=lateral_extent_mm,
    )


def build_cylindrical_scene(
    diameter_mm: float,
    stack: LayerStack,
    pad: PadDesign | None,
    source_height_mm: float = 130.0,
    probe_depths_mm=(5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0),
    source_kind: str = "hertzian",
    lateral_extent_mm: float = 150.0,
) -> Scene:
    """Bent scene: the stack forms concentric shells, the pad wraps the top."""
    for d in probe_depths_mm:
        if not (0 < d <= stack.total_thickness_mm):
            raise ConfigurationError(f"probe depth {d} mm is outside the stack")
    source = SourceSpec(
        kind=source_kind,
        position_mm=(0.0, 0.0, float(source_height_mm)),
        polarization=(1.0, 0.0, 0.0),
    )
    return Scene(
        stack=stack,
        source=source,
        pad=pad,
        curvature="cylinder",
        cylinder_diameter_mm=float(diameter_mm),
        probes_mm=tuple((0.0, 0.0, -float(d)) for d in probe_depths_mm),
        lateral_extent_mm=lateral_extent_mm,
    )


def paper_flat_scene(pad: PadDesign | None = None, **kwargs) -> Scene:
    return build_flat_scene(paper_stack(), pad=pad, **kwargs)


def pad_scene_materials(scene: Scene) -> list:
    """Materials indexed as the voxelizer stores them: 0 = air, then the
    stack layers top to bottom, then (if present) the pad medium."""
    mats = [AIR]
    mats.extend(m for m, _ in scene.stack.layers)
    if scene.pad is not None:
        mats.append(scene.pad.material)
    return mats
