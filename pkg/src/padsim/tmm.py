"""Closed-form 1D transfer-matrix solver for normal-incidence plane waves.

Serves two roles: analytic verification oracle for the time-domain solver,
and fast screening objective for the optimizer (with the pad approximated as
a homogeneous front layer; the rings cannot be represented in 1D, so every
ring-related claim must be validated in the full 3D solver instead).

Convention: time dependence exp(+j*omega*t); a forward (downward) wave is
A*exp(-j*k*z) with Im(k) <= 0 in lossy media.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C0, EPS0, ETA0
from .errors import DomainError
from .geometry import LayerStack
from .materials import DielectricMaterial, complex_permittivity

VALID_FREQ_RANGE_HZ = (1e9, 10e9)


def _sqrt_eps(eps_c: complex) -> complex:
    """Principal sqrt with the Im <= 0 branch for passive media."""
    s = cmath.sqrt(eps_c)
    if s.imag > 0:
        s = -s
    return s


def wave_impedance(m: DielectricMaterial, f_hz: float) -> complex:
    """Complex intrinsic impedance eta0/sqrt(eps_c)."""
    return ETA0 / _sqrt_eps(complex_permittivity(m, f_hz))


def wavenumber(m: DielectricMaterial, f_hz: float) -> complex:
    """Complex wavenumber k0*sqrt(eps_c), Im(k) <= 0."""
    return 2.0 * math.pi * f_hz / C0 * _sqrt_eps(complex_permittivity(m, f_hz))


def fresnel_interface(eta1: complex, eta2: complex) -> complex:
    """Reflection coefficient (eta2 - eta1) / (eta2 + eta1)."""
    return (eta2 - eta1) / (eta2 + eta1)


@dataclass(frozen=True)
class StackResponse:
    """Frequency-domain response of a layered stack to a unit plane wave."""

    frequency_hz: float
    gamma: complex                    # reflection coefficient at the surface
    depths_mm: np.ndarray
    e_field: np.ndarray               # complex E per depth, unit incident E
    h_field: np.ndarray               # complex H per depth
    power: np.ndarray                 # time-average power density per depth,
                                      # normalized to unit incident power
    reflectance: float
    transmittance: float              # into the terminal half-space
    absorption_per_layer: np.ndarray

    @property
    def energy_closure(self) -> float:
        return self.reflectance + self.transmittance + float(
            np.sum(self.absorption_per_layer)
        )


def _resolved_layers(stack: LayerStack, extra_front_layer):
    """(material, thickness) list with the optional pad-as-layer prepended,
    zero-thickness layers dropped."""
    layers = []
    if extra_front_layer is not None:
        eps_r, tan_delta, t_mm = extra_front_layer
        layers.append(
            (DielectricMaterial("front", eps_r, tan_delta=tan_delta), float(t_mm))
        )
    layers.extend((m, float(t)) for m, t in stack.layers)
    kept = []
    for m, t in layers:
        if t < 0:
            raise DomainError(f"negative layer thickness {t} mm ({m.name})")
        if t == 0:
            warnings.warn(f"dropping zero-thickness layer {m.name!r}")
            continue
        kept.append((m, t))
    return kept


def stack_response(
    stack: LayerStack,
    f_hz: float,
    extra_front_layer=None,
    depths_mm=None,
) -> StackResponse:
    """Solve the stack at one frequency.

    ``extra_front_layer`` is an (eps_r, tan_delta, thickness_mm) triple placed
    between the air half-space and the stack (the pad-as-layer screen).
    ``depths_mm`` are measured from the outer surface of the *stack* (the
    front layer, when present, lies at negative depths).
    """
    if not (VALID_FREQ_RANGE_HZ[0] <= f_hz <= VALID_FREQ_RANGE_HZ[1]):
        raise DomainError(
            f"frequency {f_hz/1e9:.3f} GHz outside validated range 1-10 GHz"
        )
    layers = _resolved_layers(stack, extra_front_layer)
    n = len(layers)
    k = [wavenumber(m, f_hz) for m, _ in layers]
    eta = [wave_impedance(m, f_hz) for m, _ in layers]

    # Terminal half-space condition at the bottom interface, expressed as
    # (E, H) there up to overall normalization.
    if stack.termination == "pec":
        e_b, h_b = 0.0 + 0.0j, 1.0 + 0.0j
    else:
        term_mat = stack.layers[-1][0] if stack.termination == "absorbing" else None
        eta_t = (
            wave_impedance(term_mat, f_hz) if term_mat is not None else ETA0 + 0j
        )
        e_b, h_b = 1.0 + 0.0j, 1.0 / eta_t

    # Back-propagate (A, B) amplitudes from the bottom interface to the top.
    amps = [None] * n
    for idx in range(n - 1, -1, -1):
        m, t_mm = layers[idx]
        kt = k[idx] * t_mm * 1e-3
        a = cmath.exp(1j * kt) * 0.5 * (e_b + eta[idx] * h_b)
        b = cmath.exp(-1j * kt) * 0.5 * (e_b - eta[idx] * h_b)
        amps[idx] = (a, b)
        e_b = a + b                      # fields at the top of this layer
        h_b = (a - b) / eta[idx]

    # Air half-space above: incident amplitude a0, reflected b0.
    a0 = 0.5 * (e_b + ETA0 * h_b)
    b0 = 0.5 * (e_b - ETA0 * h_b)
    gamma = b0 / a0

    # Normalize everything to unit incident amplitude.
    amps = [(a / a0, b / a0) for a, b in amps]

    def field_at(depth_mm: float):
        """(E, H) at a depth from the stack surface (front layer < 0)."""
        front = layers[0][1] if extra_front_layer is not None else 0.0
        d = depth_mm + front  # distance from the top of the first layer
        if d < -1e-12:
            raise DomainError(f"depth {depth_mm} mm lies above the stack")
        z_top = 0.0
        for idx, (_, t_mm) in enumerate(layers):
            if d <= z_top + t_mm or idx == n - 1:
                zeta = (d - z_top) * 1e-3
                if d > z_top + t_mm + 1e-12:
                    break  # beyond the listed layers
                a, b = amps[idx]
                ef = a * cmath.exp(-1j * k[idx] * zeta) + b * cmath.exp(
                    1j * k[idx] * zeta
                )
                hf = (
                    a * cmath.exp(-1j * k[idx] * zeta)
                    - b * cmath.exp(1j * k[idx] * zeta)
                ) / eta[idx]
                return ef, hf
            z_top += t_mm
        raise DomainError(f"depth {depth_mm} mm lies beyond the stack")

    s_inc = 1.0 / (2.0 * ETA0)

    def flux(e, h):
        return 0.5 * (e * h.conjugate()).real

    # Per-layer absorption from the flux difference across each layer.
    boundary_flux = []
    z = -(layers[0][1] if extra_front_layer is not None else 0.0)
    for _, t_mm in layers:
        e, h = field_at(z)
        boundary_flux.append(flux(e, h))
        z += t_mm
    e, h = field_at(z - 1e-12)  # bottom of the last layer
    boundary_flux.append(flux(e, h))
    absorption = np.diff(-np.asarray(boundary_flux)) / s_inc
    transmittance = 0.0 if stack.termination == "pec" else boundary_flux[-1] / s_inc

    if depths_mm is None:
        depths_mm = np.asarray([])
    depths_mm = np.asarray(depths_mm, dtype=float)
    ef = np.empty(depths_mm.shape, dtype=complex)
    hf = np.empty(depths_mm.shape, dtype=complex)
    for i, d in enumerate(depths_mm):
        ef[i], hf[i] = field_at(d)
    power = 0.5 * (ef * np.conj(hf)).real / s_inc

    return StackResponse(
        frequency_hz=f_hz,
        gamma=gamma,
        depths_mm=depths_mm,
        e_field=ef,
        h_field=hf,
        power=power,
        reflectance=abs(gamma) ** 2,
        transmittance=float(transmittance),
        absorption_per_layer=np.asarray(absorption),
    )


def power_vs_depth(
    stack: LayerStack, f_hz: float, depths_mm, extra_front_layer=None
) -> np.ndarray:
    """Time-average power density at depths, per unit incident power."""
    depths_mm = np.asarray(depths_mm, dtype=float)
    total = stack.total_thickness_mm
    if np.any(depths_mm < 0) or np.any(depths_mm > total + 1e-12):
        raise DomainError("requested depth lies outside the stack")
    resp = stack_response(
        stack, f_hz, extra_front_layer=extra_front_layer, depths_mm=depths_mm
    )
    return resp.power
