"""Physical constants used throughout the solver (SI units)."""

from scipy.constants import c as C0, epsilon_0 as EPS0, mu_0 as MU0

ETA0 = (MU0 / EPS0) ** 0.5  # free-space wave impedance, ~376.73 Ohm

MM = 1e-3  # metres per millimetre
GHZ = 1e9  # hertz per gigahertz
