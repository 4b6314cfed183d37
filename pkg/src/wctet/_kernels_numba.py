"""Numba versions of the quality kernels.  Same signatures as _kernels_numpy.

Scalar 3x3 Cramer solves instead of linalg calls; everything is nopython with
cache=True so the compile cost is paid once per interpreter/venv.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _circumcenter(X):
    # rows of A = 2(p_i - p0), rhs = |p_i|^2 - |p0|^2; det(A) = 48 * signed vol
    a11 = 2.0 * (X[1, 0] - X[0, 0]); a12 = 2.0 * (X[1, 1] - X[0, 1]); a13 = 2.0 * (X[1, 2] - X[0, 2])
    a21 = 2.0 * (X[2, 0] - X[0, 0]); a22 = 2.0 * (X[2, 1] - X[0, 1]); a23 = 2.0 * (X[2, 2] - X[0, 2])
    a31 = 2.0 * (X[3, 0] - X[0, 0]); a32 = 2.0 * (X[3, 1] - X[0, 1]); a33 = 2.0 * (X[3, 2] - X[0, 2])
    s0 = X[0, 0] ** 2 + X[0, 1] ** 2 + X[0, 2] ** 2
    b1 = X[1, 0] ** 2 + X[1, 1] ** 2 + X[1, 2] ** 2 - s0
    b2 = X[2, 0] ** 2 + X[2, 1] ** 2 + X[2, 2] ** 2 - s0
    b3 = X[3, 0] ** 2 + X[3, 1] ** 2 + X[3, 2] ** 2 - s0
    det = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) + a13 * (a21 * a32 - a22 * a31)
    cx = (b1 * (a22 * a33 - a23 * a32) - a12 * (b2 * a33 - a23 * b3) + a13 * (b2 * a32 - a22 * b3)) / det
    cy = (a11 * (b2 * a33 - a23 * b3) - b1 * (a21 * a33 - a23 * a31) + a13 * (a21 * b3 - b2 * a31)) / det
    cz = (a11 * (a22 * b3 - b2 * a32) - a12 * (a21 * b3 - b2 * a31) + b1 * (a21 * a32 - a22 * a31)) / det
    return cx, cy, cz, det


@njit(cache=True)
def _facet_hr(X, cx, cy, cz, R, f):
    fa = np.empty((3, 3))
    n = 0
    for v in range(4):
        if v != f:
            fa[n, 0] = X[v, 0]; fa[n, 1] = X[v, 1]; fa[n, 2] = X[v, 2]
            n += 1
    e1x = fa[1, 0] - fa[0, 0]; e1y = fa[1, 1] - fa[0, 1]; e1z = fa[1, 2] - fa[0, 2]
    e2x = fa[2, 0] - fa[0, 0]; e2y = fa[2, 1] - fa[0, 1]; e2z = fa[2, 2] - fa[0, 2]
    nx = e1y * e2z - e1z * e2y
    ny = e1z * e2x - e1x * e2z
    nz = e1x * e2y - e1y * e2x
    nn = np.sqrt(nx * nx + ny * ny + nz * nz)
    so = nx * (X[f, 0] - fa[0, 0]) + ny * (X[f, 1] - fa[0, 1]) + nz * (X[f, 2] - fa[0, 2])
    sgn = 1.0 if so > 0 else -1.0
    return sgn * (nx * (cx - fa[0, 0]) + ny * (cy - fa[0, 1]) + nz * (cz - fa[0, 2])) / (nn * R)


@njit(cache=True)
def _quality_one(X, hR, face, dih):
    """Fill per-tet arrays; returns (cx, cy, cz, R, r_over_l, vol)."""
    cx, cy, cz, det = _circumcenter(X)
    R = np.sqrt((cx - X[0, 0]) ** 2 + (cy - X[0, 1]) ** 2 + (cz - X[0, 2]) ** 2)
    for f in range(4):
        hR[f] = _facet_hr(X, cx, cy, cz, R, f)
    k = 0
    for f in range(4):
        idx = np.empty(3, np.int64)
        n = 0
        for v in range(4):
            if v != f:
                idx[n] = v
                n += 1
        for a in range(3):
            ap = idx[a]; u = idx[(a + 1) % 3]; w = idx[(a + 2) % 3]
            ux = X[u, 0] - X[ap, 0]; uy = X[u, 1] - X[ap, 1]; uz = X[u, 2] - X[ap, 2]
            wx = X[w, 0] - X[ap, 0]; wy = X[w, 1] - X[ap, 1]; wz = X[w, 2] - X[ap, 2]
            c = (ux * wx + uy * wy + uz * wz) / np.sqrt(
                (ux * ux + uy * uy + uz * uz) * (wx * wx + wy * wy + wz * wz))
            if c > 1.0:
                c = 1.0
            if c < -1.0:
                c = -1.0
            face[k] = np.degrees(np.arccos(c))
            k += 1
    emin = 1e300
    k = 0
    for i in range(4):
        for j in range(i + 1, 4):
            ex = X[j, 0] - X[i, 0]; ey = X[j, 1] - X[i, 1]; ez = X[j, 2] - X[i, 2]
            en = np.sqrt(ex * ex + ey * ey + ez * ez)
            if en < emin:
                emin = en
            ex /= en; ey /= en; ez /= en
            # the two vertices off this edge
            kk = -1; ll = -1
            for v in range(4):
                if v != i and v != j:
                    if kk < 0:
                        kk = v
                    else:
                        ll = v
            ux = X[kk, 0] - X[i, 0]; uy = X[kk, 1] - X[i, 1]; uz = X[kk, 2] - X[i, 2]
            vx = X[ll, 0] - X[i, 0]; vy = X[ll, 1] - X[i, 1]; vz = X[ll, 2] - X[i, 2]
            du = ux * ex + uy * ey + uz * ez
            dv = vx * ex + vy * ey + vz * ez
            ux -= du * ex; uy -= du * ey; uz -= du * ez
            vx -= dv * ex; vy -= dv * ey; vz -= dv * ez
            c = (ux * vx + uy * vy + uz * vz) / np.sqrt(
                (ux * ux + uy * uy + uz * uz) * (vx * vx + vy * vy + vz * vz))
            if c > 1.0:
                c = 1.0
            if c < -1.0:
                c = -1.0
            dih[k] = np.degrees(np.arccos(c))
            k += 1
    return cx, cy, cz, R, R / emin, det / 48.0


@njit(cache=True)
def quality_arrays(T):
    m = T.shape[0]
    cen = np.empty((m, 3))
    R = np.empty(m)
    hR = np.empty((m, 4))
    face = np.empty((m, 12))
    dih = np.empty((m, 6))
    rl = np.empty(m)
    vol = np.empty(m)
    for t in range(m):
        cx, cy, cz, rr, rle, vv = _quality_one(T[t], hR[t], face[t], dih[t])
        cen[t, 0] = cx; cen[t, 1] = cy; cen[t, 2] = cz
        R[t] = rr; rl[t] = rle; vol[t] = vv
    return cen, R, hR, face, dih, rl, vol


@njit(cache=True)
def _tet_objective(X, mode):
    cx, cy, cz, det = _circumcenter(X)
    R = np.sqrt((cx - X[0, 0]) ** 2 + (cy - X[0, 1]) ** 2 + (cz - X[0, 2]) ** 2)
    minhr = 1e300
    for f in range(4):
        hr = _facet_hr(X, cx, cy, cz, R, f)
        if hr < minhr:
            minhr = hr
    if mode == 1:
        return minhr
    mincos = 1e300
    for f in range(4):
        idx = np.empty(3, np.int64)
        n = 0
        for v in range(4):
            if v != f:
                idx[n] = v
                n += 1
        for a in range(3):
            ap = idx[a]; u = idx[(a + 1) % 3]; w = idx[(a + 2) % 3]
            ux = X[u, 0] - X[ap, 0]; uy = X[u, 1] - X[ap, 1]; uz = X[u, 2] - X[ap, 2]
            wx = X[w, 0] - X[ap, 0]; wy = X[w, 1] - X[ap, 1]; wz = X[w, 2] - X[ap, 2]
            c = (ux * wx + uy * wy + uz * wz) / np.sqrt(
                (ux * ux + uy * uy + uz * uz) * (wx * wx + wy * wy + wz * wz))
            if c < mincos:
                mincos = c
    if mincos > 1.0:
        mincos = 1.0
    if mincos < -1.0:
        mincos = -1.0
    margin = (90.0 - np.degrees(np.arccos(mincos))) / 90.0
    return minhr if minhr < margin else margin


@njit(cache=True)
def per_tet_objective(T, mode):
    out = np.empty(T.shape[0])
    for i in range(T.shape[0]):
        out[i] = _tet_objective(T[i], mode)
    return out


@njit(cache=True)
def min_objective(T, mode):
    m = 1e300
    for i in range(T.shape[0]):
        v = _tet_objective(T[i], mode)
        if v < m:
            m = v
    return m


@njit(cache=True)
def volume_signs_ok(T, sgn):
    for i in range(T.shape[0]):
        X = T[i]
        d = ((X[1, 0] - X[0, 0]) * ((X[2, 1] - X[0, 1]) * (X[3, 2] - X[0, 2]) - (X[2, 2] - X[0, 2]) * (X[3, 1] - X[0, 1]))
             - (X[1, 1] - X[0, 1]) * ((X[2, 0] - X[0, 0]) * (X[3, 2] - X[0, 2]) - (X[2, 2] - X[0, 2]) * (X[3, 0] - X[0, 0]))
             + (X[1, 2] - X[0, 2]) * ((X[2, 0] - X[0, 0]) * (X[3, 1] - X[0, 1]) - (X[2, 1] - X[0, 1]) * (X[3, 0] - X[0, 0])))
        if d * sgn[i] <= 0.0:
            return False
    return True


@njit(cache=True)
def wc_margins(T):
    m = T.shape[0]
    out = np.empty(m * 16)
    for t in range(m):
        X = T[t]
        cx, cy, cz, det = _circumcenter(X)
        R = np.sqrt((cx - X[0, 0]) ** 2 + (cy - X[0, 1]) ** 2 + (cz - X[0, 2]) ** 2)
        k = t * 16
        for f in range(4):
            out[k] = _facet_hr(X, cx, cy, cz, R, f)
            k += 1
        for f in range(4):
            idx = np.empty(3, np.int64)
            n = 0
            for v in range(4):
                if v != f:
                    idx[n] = v
                    n += 1
            for a in range(3):
                ap = idx[a]; u = idx[(a + 1) % 3]; w = idx[(a + 2) % 3]
                ux = X[u, 0] - X[ap, 0]; uy = X[u, 1] - X[ap, 1]; uz = X[u, 2] - X[ap, 2]
                wx = X[w, 0] - X[ap, 0]; wy = X[w, 1] - X[ap, 1]; wz = X[w, 2] - X[ap, 2]
                c = (ux * wx + uy * wy + uz * wz) / np.sqrt(
                    (ux * ux + uy * uy + uz * uz) * (wx * wx + wy * wy + wz * wz))
                if c > 1.0:
                    c = 1.0
                if c < -1.0:
                    c = -1.0
                out[k] = (90.0 - np.degrees(np.arccos(c))) / 90.0
                k += 1
    return out
