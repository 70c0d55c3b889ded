"""Independent numerical oracles used by the test suite only.

These deliberately avoid the library's own solution paths: the 1D Helmholtz
integrator below marches the wave equation with a fixed-step RK4 instead of
using transfer matrices.
"""

import cmath
import math

import numpy as np
from scipy.constants import c as C0, epsilon_0 as EPS0, mu_0 as MU0

ETA0 = math.sqrt(MU0 / EPS0)


def eps_complex(eps_r, sigma, f_hz):
    return eps_r - 1j * sigma / (2 * math.pi * f_hz * EPS0)


def _rk4_march(y, d_from, d_to, epsc, k0):
    """Integrate y = [E, dE/dd] from depth d_from down to d_to (d_to < d_from),
    fixed-step RK4 (all quantities in metres)."""
    lam_loc = 2 * math.pi / (k0 * abs(cmath.sqrt(epsc)))
    nstep = max(8, int(math.ceil((d_from - d_to) / (lam_loc / 2000.0))))
    h = (d_from - d_to) / nstep

    def rhs(y):
        return np.array([y[1], -(k0**2) * epsc * y[0]], dtype=complex)

    for _ in range(nstep):
        k1 = rhs(y)
        k2 = rhs(y - h / 2 * k1)
        k3 = rhs(y - h / 2 * k2)
        k4 = rhs(y - h * k3)
        y = y - h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def helmholtz_1d(layers, f_hz, depths_mm, termination="absorbing"):
    """Brute-force 1D field solution for a plane wave on a layered stack.

    ``layers``: list of (eps_r, sigma, thickness_mm), top to bottom, air
    half-space above.  Returns (gamma, E(depths), H(depths)) normalized to
    unit incident E at the surface.
    """
    k0 = 2 * math.pi * f_hz / C0
    if termination == "absorbing":
        eps_t = eps_complex(layers[-1][0], layers[-1][1], f_hz)
    elif termination == "air":
        eps_t = 1.0 + 0j
    else:
        raise ValueError("oracle supports absorbing/air terminations")
    kt = k0 * cmath.sqrt(eps_t)
    if kt.imag > 0:
        kt = -kt

    bounds = np.cumsum([0.0] + [t for _, _, t in layers]) * 1e-3
    epscs = [eps_complex(er, sg, f_hz) for er, sg, _ in layers]

    # states at layer top boundaries, integrating up from the bottom
    y = np.array([1.0 + 0j, -1j * kt], dtype=complex)  # at the bottom interface
    top_states = [None] * len(layers)
    bottom_states = [None] * len(layers)
    for li in range(len(layers) - 1, -1, -1):
        bottom_states[li] = y.copy()
        y = _rk4_march(y, bounds[li + 1], bounds[li], epscs[li], k0)
        top_states[li] = y.copy()

    e0, de0 = y
    a = 0.5 * (e0 + 1j * de0 / k0)
    b = 0.5 * (e0 - 1j * de0 / k0)
    gamma = b / a

    w = 2 * math.pi * f_hz
    e_out, h_out = [], []
    for dd in depths_mm:
        d = float(dd) * 1e-3
        li = min(
            max(np.searchsorted(bounds, d, side="right") - 1, 0), len(layers) - 1
        )
        yd = _rk4_march(bottom_states[li].copy(), bounds[li + 1], d, epscs[li], k0)
        e_out.append(yd[0] / a)
        h_out.append(1j * yd[1] / (w * MU0) / a)
    return gamma, np.asarray(e_out), np.asarray(h_out)


def hertzian_dipole_e_theta(idl, f_hz, r_m, theta_rad=math.pi / 2):
    """Exact E_theta of an infinitesimal dipole (exp(+jwt) convention)."""
    k = 2 * math.pi * f_hz / C0
    kr = k * r_m
    return (
        1j * 2 * math.pi * f_hz * MU0 * idl / (4 * math.pi)
        * (1.0 / kr + 1.0 / (1j * kr**2) - 1.0 / kr**3)
        * k
        * cmath.exp(-1j * kr)
        * math.sin(theta_rad)
    )
