"""Pure-numpy Yee update kernels; fallback twin of the compiled extension.

Expressions match _kernels.pyx term for term so that both backends produce
bit-identical fields (the extension is built without FP contraction).
"""

import numpy as np

BACKEND_NAME = "numpy"


def update_ex(ex, hy, hz, mid, ca, cb, iky, ikz):
    m = mid[:, 1:-1, 1:-1]
    ex[:, 1:-1, 1:-1] = ca[m] * ex[:, 1:-1, 1:-1] + cb[m] * (
        (hz[:, 1:, 1:-1] - hz[:, :-1, 1:-1]) * iky[None, 1:-1, None]
        - (hy[:, 1:-1, 1:] - hy[:, 1:-1, :-1]) * ikz[None, None, 1:-1]
    )


def update_ey(ey, hx, hz, mid, ca, cb, ikx, ikz):
    m = mid[1:-1, :, 1:-1]
    ey[1:-1, :, 1:-1] = ca[m] * ey[1:-1, :, 1:-1] + cb[m] * (
        (hx[1:-1, :, 1:] - hx[1:-1, :, :-1]) * ikz[None, None, 1:-1]
        - (hz[1:, :, 1:-1] - hz[:-1, :, 1:-1]) * ikx[1:-1, None, None]
    )


def update_ez(ez, hx, hy, mid, ca, cb, ikx, iky):
    m = mid[1:-1, 1:-1, :]
    ez[1:-1, 1:-1, :] = ca[m] * ez[1:-1, 1:-1, :] + cb[m] * (
        (hy[1:, 1:-1, :] - hy[:-1, 1:-1, :]) * ikx[1:-1, None, None]
        - (hx[1:-1, 1:, :] - hx[1:-1, :-1, :]) * iky[None, 1:-1, None]
    )


def update_hx(hx, ey, ez, db, iky, ikz):
    hx -= db * (
        (ez[:, 1:, :] - ez[:, :-1, :]) * iky[None, :, None]
        - (ey[:, :, 1:] - ey[:, :, :-1]) * ikz[None, None, :]
    )


def update_hy(hy, ex, ez, db, ikx, ikz):
    hy -= db * (
        (ex[:, :, 1:] - ex[:, :, :-1]) * ikz[None, None, :]
        - (ez[1:, :, :] - ez[:-1, :, :]) * ikx[:, None, None]
    )


def update_hz(hz, ex, ey, db, ikx, iky):
    hz -= db * (
        (ey[1:, :, :] - ey[:-1, :, :]) * ikx[:, None, None]
        - (ex[:, 1:, :] - ex[:, :-1, :]) * iky[None, :, None]
    )
