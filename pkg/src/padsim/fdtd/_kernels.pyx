# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Yee-grid update kernels (OpenMP-parallel over the slowest axis).

Each function mirrors its numpy twin in kernels_numpy.py expression-for-
expression; the extension is compiled with -ffp-contract=off so both
backends produce bit-identical fields.

Index conventions (nx, ny, nz = cell counts):
  ex (nx, ny+1, nz+1)   hx (nx+1, ny, nz)
  ey (nx+1, ny, nz+1)   hy (nx, ny+1, nz)
  ez (nx+1, ny+1, nz)   hz (nx, ny, nz+1)

E updates loop over interior transverse nodes only; the outermost tangential
E nodes stay zero (PEC backing behind the absorbing layers).  Inverse-length
arrays carry the CPML kappa stretching pre-folded.
"""

from cython.parallel import prange

BACKEND_NAME = "compiled"


def update_ex(double[:, :, ::1] ex, double[:, :, ::1] hy, double[:, :, ::1] hz,
              unsigned short[:, :, ::1] mid, double[::1] ca, double[::1] cb,
              double[::1] iky, double[::1] ikz):
    cdef Py_ssize_t nx = ex.shape[0], nyp = ex.shape[1], nzp = ex.shape[2]
    cdef Py_ssize_t i, j, k
    cdef unsigned short m
    for i in prange(nx, nogil=True, schedule='static'):
        for j in range(1, nyp - 1):
            for k in range(1, nzp - 1):
                m = mid[i, j, k]
                ex[i, j, k] = ca[m] * ex[i, j, k] + cb[m] * (
                    (hz[i, j, k] - hz[i, j - 1, k]) * iky[j]
                    - (hy[i, j, k] - hy[i, j, k - 1]) * ikz[k]
                )


def update_ey(double[:, :, ::1] ey, double[:, :, ::1] hx, double[:, :, ::1] hz,
              unsigned short[:, :, ::1] mid, double[::1] ca, double[::1] cb,
              double[::1] ikx, double[::1] ikz):
    cdef Py_ssize_t nxp = ey.shape[0], ny = ey.shape[1], nzp = ey.shape[2]
    cdef Py_ssize_t i, j, k
    cdef unsigned short m
    for i in prange(1, nxp - 1, nogil=True, schedule='static'):
        for j in range(ny):
            for k in range(1, nzp - 1):
                m = mid[i, j, k]
                ey[i, j, k] = ca[m] * ey[i, j, k] + cb[m] * (
                    (hx[i, j, k] - hx[i, j, k - 1]) * ikz[k]
                    - (hz[i, j, k] - hz[i - 1, j, k]) * ikx[i]
                )


def update_ez(double[:, :, ::1] ez, double[:, :, ::1] hx, double[:, :, ::1] hy,
              unsigned short[:, :, ::1] mid, double[::1] ca, double[::1] cb,
              double[::1] ikx, double[::1] iky):
    cdef Py_ssize_t nxp = ez.shape[0], nyp = ez.shape[1], nz = ez.shape[2]
    cdef Py_ssize_t i, j, k
    cdef unsigned short m
    for i in prange(1, nxp - 1, nogil=True, schedule='static'):
        for j in range(1, nyp - 1):
            for k in range(nz):
                m = mid[i, j, k]
                ez[i, j, k] = ca[m] * ez[i, j, k] + cb[m] * (
                    (hy[i, j, k] - hy[i - 1, j, k]) * ikx[i]
                    - (hx[i, j, k] - hx[i, j - 1, k]) * iky[j]
                )


def update_hx(double[:, :, ::1] hx, double[:, :, ::1] ey, double[:, :, ::1] ez,
              double db, double[::1] iky, double[::1] ikz):
    cdef Py_ssize_t nxp = hx.shape[0], ny = hx.shape[1], nz = hx.shape[2]
    cdef Py_ssize_t i, j, k
    for i in prange(nxp, nogil=True, schedule='static'):
        for j in range(ny):
            for k in range(nz):
                hx[i, j, k] = hx[i, j, k] - db * (
                    (ez[i, j + 1, k] - ez[i, j, k]) * iky[j]
                    - (ey[i, j, k + 1] - ey[i, j, k]) * ikz[k]
                )


def update_hy(double[:, :, ::1] hy, double[:, :, ::1] ex, double[:, :, ::1] ez,
              double db, double[::1] ikx, double[::1] ikz):
    cdef Py_ssize_t nx = hy.shape[0], nyp = hy.shape[1], nz = hy.shape[2]
    cdef Py_ssize_t i, j, k
    for i in prange(nx, nogil=True, schedule='static'):
        for j in range(nyp):
            for k in range(nz):
                hy[i, j, k] = hy[i, j, k] - db * (
                    (ex[i, j, k + 1] - ex[i, j, k]) * ikz[k]
                    - (ez[i + 1, j, k] - ez[i, j, k]) * ikx[i]
                )


def update_hz(double[:, :, ::1] hz, double[:, :, ::1] ex, double[:, :, ::1] ey,
              double db, double[::1] ikx, double[::1] iky):
    cdef Py_ssize_t nx = hz.shape[0], ny = hz.shape[1], nzp = hz.shape[2]
    cdef Py_ssize_t i, j, k
    for i in prange(nx, nogil=True, schedule='static'):
        for j in range(ny):
            for k in range(nzp):
                hz[i, j, k] = hz[i, j, k] - db * (
                    (ey[i + 1, j, k] - ey[i, j, k]) * ikx[i]
                    - (ex[i, j + 1, k] - ex[i, j, k]) * iky[j]
                )
