"""padsim: simulation, analysis, and inverse design of a ring-loaded
dielectric matching pad on layered biological tissue (2.4-2.5 GHz)."""

__version__ = "0.1.0"

from .materials import (  # noqa: F401
    DielectricMaterial,
    MaterialPresetTable,
    complex_permittivity,
    penetration_depth,
    sigma_from_tan_delta,
    tissue_preset,
)
from .geometry import (  # noqa: F401
    LayerStack,
    PadDesign,
    Scene,
    build_cylindrical_scene,
    build_flat_scene,
    paper_stack,
    validate_pad,
)
