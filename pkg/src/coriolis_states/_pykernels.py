"""Pure-Python versions of the hot loops.

Signatures and results match ``_ckernels`` so either backend can be
selected at import time. Arrays are converted to lists up front; indexing
Python lists is much faster than indexing numpy arrays element-wise.
"""
import math

import numpy as np


def sturm_count(diag, off_sq, x, pivmin):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    d = diag.tolist() if hasattr(diag, "tolist") else list(diag)
    e2 = off_sq.tolist() if hasattr(off_sq, "tolist") else list(off_sq)
    return _count(d, e2, x, pivmin)


def _count(d, e2, x, pivmin):
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def bisect_eigenvalue(diag, off_sq, k, lo, hi, abstol, pivmin):
    """Bisect for the ``k``-th smallest eigenvalue (0-based) inside ``[lo, hi]``."""
    d = diag.tolist()
    e2 = off_sq.tolist()
    for _ in range(256):
        if hi - lo <= abstol + 2.2e-16 * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _count(d, e2, mid, pivmin) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def shifted_solve(diag, off, shift, rhs, tiny):
    """Solve ``(T - shift I) x = rhs`` by elimination with partial pivoting.

    Zero pivots in U are replaced by ``tiny`` so near-singular shifts (the
    inverse-iteration use case) still return a finite, large solution.
    """
    n = len(diag)
    d = [v - shift for v in diag.tolist()]
    dl = off.tolist()
    du = off.tolist()
    du2 = [0.0] * max(n - 2, 0)
    swap = [False] * max(n - 1, 0)
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
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
            swap[i] = True
    for i in range(n):
        if abs(d[i]) < tiny:
            d[i] = tiny if d[i] >= 0.0 else -tiny
    b = rhs.tolist()
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
    return np.array(b)


def _rotate(wx, wy, wz, x, y, z):
    theta = math.sqrt(wx * wx + wy * wy + wz * wz)
    if theta == 0.0:
        return x, y, z
    nx, ny, nz = wx / theta, wy / theta, wz / theta
    c = math.cos(theta)
    s = math.sin(theta)
    dot = (1.0 - c) * (nx * x + ny * y + nz * z)
    return (
        c * x + s * (ny * z - nz * y) + dot * nx,
        c * y + s * (nz * x - nx * z) + dot * ny,
        c * z + s * (nx * y - ny * x) + dot * nz,
    )


def compose_rodrigues(rotvecs, r0):
    """Apply the rotations ``exp([w_i]x)`` for each row ``w_i`` in order."""
    x, y, z = (float(v) for v in r0)
    for wx, wy, wz in rotvecs.tolist():
        x, y, z = _rotate(wx, wy, wz, x, y, z)
    return np.array([x, y, z])


def _cross(ax, ay, az, x, y, z):
    return ay * z - az * y, az * x - ax * z, ax * y - ay * x


def rk4_cross(o_start, o_mid, o_end, r0, dt):
    """Classical RK4 for ``dr/dt = o(t) x r`` with per-step stage generators."""
    x, y, z = (float(v) for v in r0)
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for (ax, ay, az), (bx, by, bz), (cx, cy, cz) in zip(
        o_start.tolist(), o_mid.tolist(), o_end.tolist()
    ):
        k1 = _cross(ax, ay, az, x, y, z)
        k2 = _cross(bx, by, bz, x + h2 * k1[0], y + h2 * k1[1], z + h2 * k1[2])
        k3 = _cross(bx, by, bz, x + h2 * k2[0], y + h2 * k2[1], z + h2 * k2[2])
        k4 = _cross(cx, cy, cz, x + dt * k3[0], y + dt * k3[1], z + dt * k3[2])
        x += h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        y += h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        z += h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
    return np.array([x, y, z])
