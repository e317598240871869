# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops; mirrors ``_pykernels`` one-to-one."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, sin, cos

cnp.import_array()


cdef Py_ssize_t _count(const double[::1] d, const double[::1] e2, double x,
                       double pivmin) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, count = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def sturm_count(const double[::1] diag, const double[::1] off_sq, double x, double pivmin):
    cdef Py_ssize_t c
    with nogil:
        c = _count(diag, off_sq, x, pivmin)
    return c


def bisect_eigenvalue(const double[::1] diag, const double[::1] off_sq, Py_ssize_t k,
                      double lo, double hi, double abstol, double pivmin):
    cdef int it
    cdef double mid
    with nogil:
        for it in range(256):
            if hi - lo <= abstol + 2.2e-16 * max(fabs(lo), fabs(hi)):
                break
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _count(diag, off_sq, mid, pivmin) > k:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def shifted_solve(const double[::1] diag, const double[::1] off, double shift,
                  const double[::1] rhs, double tiny):
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double fact, temp
    d_arr = np.empty(n)
    dl_arr = np.array(off, dtype=np.float64)
    du_arr = np.array(off, dtype=np.float64)
    du2_arr = np.zeros(max(n - 2, 1))
    swap_arr = np.zeros(max(n - 1, 1), dtype=np.uint8)
    b_arr = np.array(rhs, dtype=np.float64)
    cdef double[::1] d = d_arr
    cdef double[::1] dl = dl_arr
    cdef double[::1] du = du_arr
    cdef double[::1] du2 = du2_arr
    cdef unsigned char[::1] swap = swap_arr
    cdef double[::1] b = b_arr
    with nogil:
        for i in range(n):
            d[i] = diag[i] - shift
        for i in range(n - 1):
            if fabs(d[i]) >= fabs(dl[i]):
                if d[i] != 0.0:
                    fact = dl[i] / d[i]
                    dl[i] = fact
                    d[i + 1] -= fact * du[i]
            else:
                fact = d[i] / dl[i]
                d[i] = dl[i]
                dl[i] = fact
                temp = du[i]
                du[i] = d[i + 1]
                d[i + 1] = temp - fact * d[i + 1]
                if i < n - 2:
                    du2[i] = du[i + 1]
                    du[i + 1] = -fact * du[i + 1]
                swap[i] = 1
        for i in range(n):
            if fabs(d[i]) < tiny:
                d[i] = tiny if d[i] >= 0.0 else -tiny
        for i in range(n - 1):
            if not swap[i]:
                b[i + 1] -= dl[i] * b[i]
            else:
                temp = b[i]
                b[i] = b[i + 1]
                b[i + 1] = temp - dl[i] * b[i]
        b[n - 1] /= d[n - 1]
        if n > 1:
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2]
        for i in range(n - 3, -1, -1):
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i]
    return b_arr


def compose_rodrigues(const double[:, ::1] rotvecs, r0):
    cdef Py_ssize_t i, steps = rotvecs.shape[0]
    cdef double x = r0[0], y = r0[1], z = r0[2]
    cdef double wx, wy, wz, theta, nx, ny, nz, c, s, dot, tx, ty, tz
    with nogil:
        for i in range(steps):
            wx = rotvecs[i, 0]
            wy = rotvecs[i, 1]
            wz = rotvecs[i, 2]
            theta = sqrt(wx * wx + wy * wy + wz * wz)
            if theta == 0.0:
                continue
            nx = wx / theta
            ny = wy / theta
            nz = wz / theta
            c = cos(theta)
            s = sin(theta)
            dot = (1.0 - c) * (nx * x + ny * y + nz * z)
            tx = c * x + s * (ny * z - nz * y) + dot * nx
            ty = c * y + s * (nz * x - nx * z) + dot * ny
            tz = c * z + s * (nx * y - ny * x) + dot * nz
            x = tx
            y = ty
            z = tz
    return np.array([x, y, z])


def rk4_cross(const double[:, ::1] o_start, const double[:, ::1] o_mid,
              const double[:, ::1] o_end, r0, double dt):
    cdef Py_ssize_t i, steps = o_start.shape[0]
    cdef double x = r0[0], y = r0[1], z = r0[2]
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    cdef double k1x, k1y, k1z, k2x, k2y, k2z, k3x, k3y, k3z, k4x, k4y, k4z
    cdef double px, py, pz, ax, ay, az
    with nogil:
        for i in range(steps):
            ax = o_start[i, 0]; ay = o_start[i, 1]; az = o_start[i, 2]
            k1x = ay * z - az * y; k1y = az * x - ax * z; k1z = ax * y - ay * x
            ax = o_mid[i, 0]; ay = o_mid[i, 1]; az = o_mid[i, 2]
            px = x + h2 * k1x; py = y + h2 * k1y; pz = z + h2 * k1z
            k2x = ay * pz - az * py; k2y = az * px - ax * pz; k2z = ax * py - ay * px
            px = x + h2 * k2x; py = y + h2 * k2y; pz = z + h2 * k2z
            k3x = ay * pz - az * py; k3y = az * px - ax * pz; k3z = ax * py - ay * px
            ax = o_end[i, 0]; ay = o_end[i, 1]; az = o_end[i, 2]
            px = x + dt * k3x; py = y + dt * k3y; pz = z + dt * k3z
            k4x = ay * pz - az * py; k4y = az * px - ax * pz; k4z = ax * py - ay * px
            x += h6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            z += h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
    return np.array([x, y, z])
