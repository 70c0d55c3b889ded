"""Dielectric materials of tissues and pad media.

Materials carry a frequency-independent (eps_r, sigma) pair over the 2-3 GHz
analysis band.  A material may instead be specified through its loss tangent,
in which case the equivalent conductivity is derived once at a reference
frequency (2.45 GHz unless stated otherwise) and then held constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import EPS0, MU0
from .errors import DomainError, PresetLookupError

DEFAULT_REFERENCE_FREQUENCY_HZ = 2.45e9


def sigma_from_tan_delta(eps_r: float, tan_delta: float, f_hz: float) -> float:
    """Equivalent conductivity (S/m) of a loss tangent at frequency ``f_hz``.

    sigma = 2*pi*f * eps0 * eps_r * tan_delta
    """
    if f_hz <= 0:
        raise DomainError(f"frequency must be positive, got {f_hz}")
    if eps_r < 0 or tan_delta < 0:
        raise DomainError("eps_r and tan_delta must be non-negative")
    return 2.0 * math.pi * f_hz * EPS0 * eps_r * tan_delta


@dataclass(frozen=True)
class DielectricMaterial:
    """A linear isotropic dielectric with ohmic loss.

    Exactly one of ``sigma`` and ``tan_delta`` is stored as the primary loss
    descriptor; the other is derived on demand.  ``reference_frequency_hz``
    only matters for tan-delta materials, where it fixes the frequency at
    which the (then constant) conductivity is derived.
    """

    name: str
    eps_r: float
    sigma: float | None = None
    tan_delta: float | None = None
    reference_frequency_hz: float = DEFAULT_REFERENCE_FREQUENCY_HZ

    def __post_init__(self):
        if self.eps_r < 1.0:
            raise DomainError(f"{self.name}: eps_r must be >= 1, got {self.eps_r}")
        if (self.sigma is None) == (self.tan_delta is None):
            raise DomainError(
                f"{self.name}: exactly one of sigma / tan_delta must be given"
            )
        loss = self.sigma if self.sigma is not None else self.tan_delta
        if loss < 0:
            raise DomainError(f"{self.name}: loss descriptor must be >= 0")
        if self.reference_frequency_hz <= 0:
            raise DomainError(f"{self.name}: reference frequency must be positive")

    @property
    def conductivity(self) -> float:
        """Conductivity in S/m (derived at the reference frequency if needed)."""
        if self.sigma is not None:
            return self.sigma
        return sigma_from_tan_delta(
            self.eps_r, self.tan_delta, self.reference_frequency_hz
        )

    def loss_tangent(self, f_hz: float | None = None) -> float:
        """Loss tangent at ``f_hz`` (reference frequency when omitted)."""
        if self.tan_delta is not None and f_hz is None:
            return self.tan_delta
        f = self.reference_frequency_hz if f_hz is None else f_hz
        if f <= 0:
            raise DomainError(f"frequency must be positive, got {f}")
        return self.conductivity / (2.0 * math.pi * f * EPS0 * self.eps_r)

    @property
    def is_lossless(self) -> bool:
        return self.conductivity == 0.0


def complex_permittivity(m: DielectricMaterial, f_hz: float) -> complex:
    """Complex relative permittivity eps_r - j*sigma/(2*pi*f*eps0)."""
    if f_hz <= 0:
        raise DomainError(f"frequency must be positive, got {f_hz}")
    return complex(m.eps_r, -m.conductivity / (2.0 * math.pi * f_hz * EPS0))


def attenuation_constant(m: DielectricMaterial, f_hz: float) -> float:
    """Uniform-plane-wave field attenuation constant alpha in 1/m."""
    if f_hz <= 0:
        raise DomainError(f"frequency must be positive, got {f_hz}")
    omega = 2.0 * math.pi * f_hz
    eps = m.eps_r * EPS0
    p = m.conductivity / (omega * eps)  # loss tangent at f
    return omega * math.sqrt(MU0 * eps / 2.0) * math.sqrt(math.hypot(1.0, p) - 1.0)


def penetration_depth(m: DielectricMaterial, f_hz: float) -> float:
    """Field 1/e depth in mm; ``math.inf`` for a lossless material."""
    if m.is_lossless:
        return math.inf
    return 1.0 / attenuation_constant(m, f_hz) * 1e3


VACUUM = DielectricMaterial("vacuum", 1.0, sigma=0.0)
AIR = DielectricMaterial("air", 1.0, sigma=0.0)

# Design-value pad medium; the fabricated disk is slightly thicker but has
# the same mixture properties.
PAD_MEDIUM = DielectricMaterial("pad", 4.0, tan_delta=0.02)

# Tissue properties at 2.45 GHz: the simulation model and the two measured
# phantom batches (one per implant-depth experiment).
_PRESET_SOURCES = ("simulation-model", "experiment-8mm", "experiment-15mm")

_TISSUE_TABLE = {
    "simulation-model": {
        "skin": (39.2, 1.8),
        "fat": (5.0, 0.25),
        "muscle": (52.7, 1.95),
    },
    "experiment-8mm": {
        "skin": (39.7, 3.9),
        "fat": (5.7, 0.16),
        "muscle": (52.7, 1.85),
    },
    "experiment-15mm": {
        "skin": (38.8, 3.1),
        "fat": (5.2, 0.14),
        "muscle": (53.4, 2.35),
    },
}


@dataclass(frozen=True)
class MaterialPresetTable:
    """Tissue presets for one source (model values or a phantom batch)."""

    source: str
    entries: dict = field(default_factory=dict)

    def __getitem__(self, tissue: str) -> DielectricMaterial:
        try:
            return self.entries[tissue]
        except KeyError:
            raise PresetLookupError(
                f"unknown tissue {tissue!r} (have {sorted(self.entries)})"
            ) from None


def preset_table(source: str = "simulation-model") -> MaterialPresetTable:
    if source not in _TISSUE_TABLE:
        raise PresetLookupError(
            f"unknown preset source {source!r} (have {list(_PRESET_SOURCES)})"
        )
    entries = {
        tissue: DielectricMaterial(tissue, eps_r, sigma=sig)
        for tissue, (eps_r, sig) in _TISSUE_TABLE[source].items()
    }
    return MaterialPresetTable(source=source, entries=entries)


def tissue_preset(name: str, source: str = "simulation-model") -> DielectricMaterial:
    """Look up a tissue material (skin/fat/muscle) from one preset source."""
    return preset_table(source)[name]
