"""Graded Yee-grid construction and scene voxelization.

The grid is a tensor product of three monotone edge arrays built from a
piecewise sizing function: `fine` cells inside feature boxes (the pad slab
and ring region, the wire gaps), growing geometrically (ratio <= 1.2) to an
effective coarse size.  The coarse size is clamped so that no cell exceeds
lambda/15 at 3 GHz in any material present in the scene.

Cells sample the scene material at their centre point.  Ring metal is
rasterized as PEC cell faces: a face is PEC when its two adjacent cells both
lie in the ring's height (or radial, when bent) band but disagree on being
inside the ring circle, which yields closed, in-plane watertight staircase
loops without end caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C0
from .errors import ConfigurationError, DomainError, MemoryCapError
from .geometry import Scene, pad_scene_materials
from .materials import DielectricMaterial, complex_permittivity

GRADING_RATIO = 1.2
MIN_CELL_MM = 0.05
MESH_FREQ_HZ = 3.0e9  # top of the analysis band; lambda/15 rule applies here
CELLS_PER_WAVELENGTH = 15
DEFAULT_NPML = 10
DEFAULT_MEMORY_CAP_GB = 6.0

# Bytes per cell: 6 float64 field components, 3 uint16 edge-material ids,
# psi/coefficient overhead.
_BYTES_PER_CELL = 80.0


@dataclass(frozen=True)
class ResolutionPolicy:
    fine_mm: float = 0.5
    coarse_mm: float = 0.9
    npml: int = DEFAULT_NPML
    memory_cap_gb: float = DEFAULT_MEMORY_CAP_GB

    def __post_init__(self):
        if self.fine_mm > self.coarse_mm:
            raise DomainError("fine resolution must not exceed coarse")
        if self.fine_mm < MIN_CELL_MM:
            raise DomainError(f"fine resolution below {MIN_CELL_MM} mm floor")


def material_max_cell_mm(m: DielectricMaterial) -> float:
    """Largest allowed cell in this material: lambda/15 at 3 GHz, using the
    real part of the refractive index."""
    n = complex_permittivity(m, MESH_FREQ_HZ) ** 0.5
    lam_mm = C0 / MESH_FREQ_HZ / n.real * 1e3
    return lam_mm / CELLS_PER_WAVELENGTH


@dataclass
class GridSpec:
    """Graded Yee grid with per-cell materials and PEC face masks."""

    xe: np.ndarray  # cell edge coordinates, mm
    ye: np.ndarray
    ze: np.ndarray
    cell_mat: np.ndarray        # (nx, ny, nz) uint8 index into materials
    materials: list             # DielectricMaterial, index 0 = air
    pec_fx: np.ndarray          # (nx+1, ny, nz) faces normal to x
    pec_fy: np.ndarray          # (nx, ny+1, nz)
    pec_fz: np.ndarray          # (nx, ny, nz+1)
    cpml_layers: tuple          # ((xlo,xhi),(ylo,yhi),(zlo,zhi)) cell counts
    policy: ResolutionPolicy = field(default_factory=ResolutionPolicy)

    @property
    def shape(self):
        return (len(self.xe) - 1, len(self.ye) - 1, len(self.ze) - 1)

    @property
    def ncells(self):
        nx, ny, nz = self.shape
        return nx * ny * nz

    def spacings_mm(self):
        return np.diff(self.xe), np.diff(self.ye), np.diff(self.ze)

    def centers_mm(self):
        return (
            0.5 * (self.xe[:-1] + self.xe[1:]),
            0.5 * (self.ye[:-1] + self.ye[1:]),
            0.5 * (self.ze[:-1] + self.ze[1:]),
        )

    def memory_estimate_bytes(self) -> int:
        return int(self.ncells * _BYTES_PER_CELL)

    def validate(self):
        """Enforce the grid invariants; raises ConfigurationError."""
        for name, edges in (("x", self.xe), ("y", self.ye), ("z", self.ze)):
            d = np.diff(edges)
            if np.any(d <= 0):
                raise ConfigurationError(f"{name} edges not strictly monotone")
            if d.min() < MIN_CELL_MM - 1e-9:
                raise ConfigurationError(
                    f"{name} min cell {d.min():.4f} mm below {MIN_CELL_MM} mm"
                )
            r = d[1:] / d[:-1]
            rmax = max(r.max(), (1.0 / r).max())
            if rmax > GRADING_RATIO + 1e-9:
                raise ConfigurationError(
                    f"{name} grading ratio {rmax:.3f} exceeds {GRADING_RATIO}"
                )
        caps = np.array(
            [material_max_cell_mm(m) for m in self.materials], dtype=float
        )
        dx, dy, dz = self.spacings_mm()
        cell_max = np.maximum(
            np.maximum(dx[:, None, None], dy[None, :, None]), dz[None, None, :]
        )
        viol = cell_max > caps[self.cell_mat] + 1e-9
        if np.any(viol):
            i, j, k = np.argwhere(viol)[0]
            raise ConfigurationError(
                f"cell ({i},{j},{k}) size {cell_max[i, j, k]:.3f} mm exceeds "
                f"lambda/15 in {self.materials[self.cell_mat[i, j, k]].name}"
            )

    # -- solver-facing helpers -------------------------------------------

    def cell_eps_sigma(self):
        """(eps_r, sigma) arrays over cells."""
        eps = np.array([m.eps_r for m in self.materials])
        sig = np.array([m.conductivity for m in self.materials])
        return eps[self.cell_mat], sig[self.cell_mat]

    def pec_edge_masks(self):
        """Boolean masks over Ex/Ey/Ez edges that bound any PEC face."""
        nx, ny, nz = self.shape
        fx, fy, fz = self.pec_fx, self.pec_fy, self.pec_fz
        ex = np.zeros((nx, ny + 1, nz + 1), dtype=bool)
        ey = np.zeros((nx + 1, ny, nz + 1), dtype=bool)
        ez = np.zeros((nx + 1, ny + 1, nz), dtype=bool)
        # face_y[i,j,k] bounds Ex edges (i,j,k),(i,j,k+1), Ez (i,j,k),(i+1,j,k)
        ex[:, :, :-1] |= fy
        ex[:, :, 1:] |= fy
        ez[:-1, :, :] |= fy
        ez[1:, :, :] |= fy
        # face_x[i,j,k] bounds Ey edges (i,j,k),(i,j,k+1), Ez (i,j,k),(i,j+1,k)
        ey[:, :, :-1] |= fx
        ey[:, :, 1:] |= fx
        ez[:, :-1, :] |= fx
        ez[:, 1:, :] |= fx
        # face_z[i,j,k] bounds Ex edges (i,j,k),(i,j+1,k), Ey (i,j,k),(i+1,j,k)
        ex[:, :-1, :] |= fz
        ex[:, 1:, :] |= fz
        ey[:-1, :, :] |= fz
        ey[1:, :, :] |= fz
        return ex, ey, ez


def _sizing_function(x, fine_intervals, coarse_eff):
    """Target cell size at coordinates ``x`` (vectorized)."""
    h = np.full_like(x, coarse_eff, dtype=float)
    slope = (GRADING_RATIO - 1.0) * 0.8
    for a, b, size in fine_intervals:
        dist = np.maximum(np.maximum(a - x, x - b), 0.0)
        h = np.minimum(h, size + dist * slope)
    return h


def build_axis(snaps, fine_intervals, coarse_eff) -> np.ndarray:
    """Graded edge array hitting every snap point exactly.

    ``fine_intervals``: (a, b, size) triples; within [a, b] cells have the
    given size, growing geometrically away from the interval.
    """
    snaps = np.unique(np.asarray(snaps, dtype=float))
    if len(snaps) < 2:
        raise ConfigurationError("axis needs at least two snap points")
    # a narrow snap segment forces a small cell; let the sizing function
    # grade away from it instead of leaving a size jump for the fix-up pass
    fine_intervals = list(fine_intervals)
    for a, b in zip(snaps[:-1], snaps[1:]):
        if 1e-9 < b - a < coarse_eff:
            fine_intervals.append((a, b, b - a))

    def hdes(x):
        return float(
            _sizing_function(np.asarray([x]), fine_intervals, coarse_eff)[0]
        )

    grow = GRADING_RATIO * 0.98
    edges = [snaps[0]]
    h_prev = None
    for a, b in zip(snaps[:-1], snaps[1:]):
        seg = b - a
        if seg <= 1e-9:
            continue
        # greedy march at the local target size, growth capped, then a small
        # uniform rescale to land exactly on the segment end
        sizes = []
        x = a
        h = hdes(a) if h_prev is None else min(h_prev * grow, hdes(a))
        while x < b - 1e-9:
            sizes.append(h)
            x += h
            h = min(h * grow, hdes(min(x, b)))

        def junctions_ok(cand, s):
            lo, hi = 1.0 / (GRADING_RATIO * 0.995), GRADING_RATIO * 0.995
            if h_prev is not None and not (lo <= cand[0] * s / h_prev <= hi):
                return False
            return cand[-1] * s <= hdes(b) * hi

        candidates = [sizes]
        if len(sizes) > 1:
            candidates.append(sizes[:-1])
        best = None
        for cand in candidates:
            s = seg / sum(cand)
            score = abs(math.log(s))
            ok = junctions_ok(cand, s)
            key = (not ok, score)
            if best is None or key < best[0]:
                best = (key, cand, s)
        _, sizes, scale = best
        sizes = [s * scale for s in sizes]
        acc = a
        for s in sizes[:-1]:
            acc += s
            edges.append(acc)
        edges.append(b)
        h_prev = sizes[-1]
    return _enforce_ratio(np.asarray(edges))


def _enforce_ratio(edges: np.ndarray) -> np.ndarray:
    """Repair residual grading violations by replacing the larger cell of an
    offending pair with a geometric ladder anchored at the smaller cell."""
    edges = list(edges)
    tol = GRADING_RATIO * (1.0 + 1e-9)
    for _ in range(2000):
        sizes = np.diff(edges)
        ratios = sizes[1:] / sizes[:-1]
        bad = np.where((ratios > tol) | (ratios < 1.0 / tol))[0]
        if len(bad) == 0:
            return np.asarray(edges)
        i = bad[0]
        if sizes[i] > sizes[i + 1]:
            small, big = sizes[i + 1], i
            anchor_right = True
        else:
            small, big = sizes[i], i + 1
            anchor_right = False
        width = sizes[big]
        g = GRADING_RATIO * 0.95
        ladder = [small * g]
        while sum(ladder) < width:
            ladder.append(ladder[-1] * g)
        scale = width / sum(ladder)
        ladder = [s * scale for s in ladder]
        if anchor_right:
            ladder = ladder[::-1]
        left = edges[big]
        new_edges = []
        acc = left
        for s in ladder[:-1]:
            acc += s
            new_edges.append(acc)
        edges[big + 1:big + 1] = new_edges
    raise ConfigurationError("grading fix-up did not converge")


def _effective_coarse(scene: Scene, policy: ResolutionPolicy) -> float:
    caps = [material_max_cell_mm(m) for m in pad_scene_materials(scene)]
    return max(min([policy.coarse_mm] + caps), policy.fine_mm)


def scene_material_ids(scene: Scene, xs, ys, zs) -> np.ndarray:
    """Material index at each (xs[i], ys[j], zs[k]) point.

    Index order matches geometry.pad_scene_materials: 0 air, 1..L stack
    layers top to bottom, L+1 pad (when present).
    """
    x = np.asarray(xs, dtype=float)[:, None, None]
    y = np.asarray(ys, dtype=float)[None, :, None]
    z = np.asarray(zs, dtype=float)[None, None, :]
    shape = np.broadcast_shapes(x.shape, y.shape, z.shape)
    nlayers = len(scene.stack.layers)
    interfaces = scene.stack.interfaces_mm()

    if scene.curvature == "planar":
        depth = np.broadcast_to(-z, shape)
    else:
        radius = scene.cylinder_radius_mm
        r = np.hypot(x, z + radius)
        depth = np.broadcast_to(radius - r, shape)

    ids = np.zeros(shape, dtype=np.uint8)
    for li in range(nlayers):
        ids[(depth >= interfaces[li]) & (depth < interfaces[li + 1])] = li + 1
    beyond = depth >= interfaces[-1]
    ids[beyond] = 0 if scene.stack.termination == "air" else nlayers

    if scene.pad is not None:
        pad = scene.pad
        pid = nlayers + 1
        t = pad.disk_thickness_mm
        r3 = 0.5 * pad.disk_diameter_mm
        if scene.curvature == "planar":
            in_slab = (z >= 0.0) & (z <= t)
            in_disk = x**2 + y**2 <= r3**2
            ids[np.broadcast_to(in_slab & in_disk, shape)] = pid
        else:
            radius = scene.cylinder_radius_mm
            r = np.hypot(x, z + radius)
            in_shell = (r > radius) & (r <= radius + t)
            u = radius * np.arctan2(x, z + radius)
            in_disk = u**2 + y**2 <= r3**2
            ids[np.broadcast_to(in_shell & in_disk, shape)] = pid
    return ids


def _ring_masks(scene: Scene, xc, yc, zc, ring_diameter_mm):
    """(inband, inuv) boolean cell masks for one ring."""
    pad = scene.pad
    x = np.asarray(xc)[:, None, None]
    y = np.asarray(yc)[None, :, None]
    z = np.asarray(zc)[None, None, :]
    shape = np.broadcast_shapes(x.shape, y.shape, z.shape)
    ri = 0.5 * ring_diameter_mm
    lo = pad.bottom_clearance_mm
    hi = pad.bottom_clearance_mm + pad.ring_height_mm
    if scene.curvature == "planar":
        inband = np.broadcast_to((z >= lo) & (z <= hi), shape)
        inuv = np.broadcast_to(x**2 + y**2 <= ri**2, shape)
    else:
        radius = scene.cylinder_radius_mm
        r = np.hypot(x, z + radius)
        inband = np.broadcast_to((r >= radius + lo) & (r <= radius + hi), shape)
        u = radius * np.arctan2(x, z + radius)
        inuv = np.broadcast_to(u**2 + y**2 <= ri**2, shape)
    return inband, inuv


def _mark_ring_faces(fx, fy, fz, inband, inuv):
    both = inband[:-1, :, :] & inband[1:, :, :]
    fx[1:-1, :, :] |= both & (inuv[:-1, :, :] != inuv[1:, :, :])
    both = inband[:, :-1, :] & inband[:, 1:, :]
    fy[:, 1:-1, :] |= both & (inuv[:, :-1, :] != inuv[:, 1:, :])
    both = inband[:, :, :-1] & inband[:, :, 1:]
    fz[:, :, 1:-1] |= both & (inuv[:, :, :-1] != inuv[:, :, 1:])


def voxelize(scene: Scene, policy: ResolutionPolicy | None = None) -> GridSpec:
    """Rasterize a scene onto a graded Yee grid."""
    if policy is None:
        policy = ResolutionPolicy()
    coarse_eff = _effective_coarse(scene, policy)
    fine = policy.fine_mm
    npml = policy.npml
    margin = (npml + 5) * coarse_eff

    half = 0.5 * scene.lateral_extent_mm
    stack_bottom = -scene.stack.total_thickness_mm
    src_z = scene.source.position_mm[2]
    pec_bottom = scene.stack.termination == "pec"

    fine_x, fine_y, fine_z = [], [], []
    snaps_x = [-half, 0.0, half]
    snaps_y = [-half, 0.0, half]
    snaps_z = [stack_bottom - (0.0 if pec_bottom else margin)]
    snaps_z += [-d for d in scene.stack.interfaces_mm()]
    snaps_z.append(max(src_z, 0.0) + margin)
    snaps_z.append(src_z)

    if scene.pad is not None:
        pad = scene.pad
        t = pad.disk_thickness_mm
        r3 = 0.5 * pad.disk_diameter_mm
        pad_halfwidth = r3 + 3.0
        if scene.curvature == "planar":
            fine_x.append((-pad_halfwidth, pad_halfwidth, fine))
            fine_y.append((-pad_halfwidth, pad_halfwidth, fine))
            fine_z.append((-1.0, t + 1.0, fine))
            # the ring band planes are not snapped: band membership is
            # cell-centre sampled, and snapping them creates sliver segments
            snaps_z += [0.0, t]
            snaps_x += [-pad_halfwidth, pad_halfwidth]
            snaps_y += [-pad_halfwidth, pad_halfwidth]
        else:
            radius = scene.cylinder_radius_mm
            ang = min((r3 + 5.0) / radius, 0.5 * math.pi)
            xw = (radius + t) * math.sin(ang)
            fine_x.append((-xw, xw, fine))
            fine_y.append((-pad_halfwidth, pad_halfwidth, fine))
            sag = radius * (1.0 - math.cos(ang))
            fine_z.append((-sag - 1.0, t + 1.0, fine))
            snaps_z += [0.0, t]
    if scene.implant is not None:
        zi = -scene.implant.depth_mm
        snaps_z.append(zi)
        fine_z.append((zi - 1.0, zi + 1.0, fine))
    if scene.source.kind == "wire-dipole":
        fine_z.append((src_z - 1.0, src_z + 1.0, fine))

    xe = build_axis(snaps_x, fine_x, coarse_eff)
    ye = build_axis(snaps_y, fine_y, coarse_eff)
    ze = build_axis(snaps_z, fine_z, coarse_eff)

    ncells = (len(xe) - 1) * (len(ye) - 1) * (len(ze) - 1)
    est = ncells * _BYTES_PER_CELL
    if est > policy.memory_cap_gb * 1e9:
        raise MemoryCapError(
            f"grid of {ncells} cells needs ~{est/1e9:.1f} GB "
            f"(cap {policy.memory_cap_gb} GB)"
        )

    xc = 0.5 * (xe[:-1] + xe[1:])
    yc = 0.5 * (ye[:-1] + ye[1:])
    zc = 0.5 * (ze[:-1] + ze[1:])
    cell_mat = scene_material_ids(scene, xc, yc, zc)

    nx, ny, nz = len(xc), len(yc), len(zc)
    fx = np.zeros((nx + 1, ny, nz), dtype=bool)
    fy = np.zeros((nx, ny + 1, nz), dtype=bool)
    fz = np.zeros((nx, ny, nz + 1), dtype=bool)
    if scene.pad is not None:
        for diameter in (
            scene.pad.ring_inner_diameter_mm,
            scene.pad.ring_outer_diameter_mm,
        ):
            inband, inuv = _ring_masks(scene, xc, yc, zc, diameter)
            _mark_ring_faces(fx, fy, fz, inband, inuv)

    grid = GridSpec(
        xe=xe,
        ye=ye,
        ze=ze,
        cell_mat=cell_mat,
        materials=pad_scene_materials(scene),
        pec_fx=fx,
        pec_fy=fy,
        pec_fz=fz,
        cpml_layers=((npml, npml), (npml, npml),
                     (0 if pec_bottom else npml, npml)),
        policy=policy,
    )
    grid.validate()
    return grid
