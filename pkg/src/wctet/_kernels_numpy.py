"""Vectorized numpy implementations of the per-tet quality kernels.

All functions take T of shape (m, 4, 3): a batch of tetrahedra.  This module
is the reference backend; _kernels_numba mirrors it function for function.
"""
import itertools

import numpy as np

# facet f is the triangle opposite vertex f
FACES = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
EDGES = np.array(list(itertools.combinations(range(4), 2)))

# the 12 face angles as (apex, other, other) index triples
_ANGLES = []
for _f in range(4):
    _fv = FACES[_f]
    for _a in range(3):
        _ANGLES.append((_fv[_a], _fv[(_a + 1) % 3], _fv[(_a + 2) % 3]))
_ANGLES = np.array(_ANGLES)


def quality_arrays(T):
    """Batch quality metrics.

    Returns (center, radius, h_over_r, face_deg, dihedral_deg, r_over_l, vol):
    shapes (m,3), (m,), (m,4), (m,12), (m,6), (m,), (m,).  vol is signed.
    Degeneracy is the caller's problem; singular elements raise LinAlgError.
    """
    T = np.asarray(T, float)
    m = T.shape[0]
    p0 = T[:, 0]
    # circumcenter from the three perpendicular-bisector planes:
    # 2(p_i - p0) . c = |p_i|^2 - |p0|^2
    A = 2.0 * (T[:, 1:] - p0[:, None, :])
    sq = np.einsum('mij,mij->mi', T, T)
    b = sq[:, 1:] - sq[:, :1]
    cen = np.linalg.solve(A, b[..., None])[..., 0]
    R = np.linalg.norm(cen - p0, axis=1)
    vol = np.linalg.det(A) / 48.0

    hR = np.empty((m, 4))
    for f in range(4):
        a, b2, c = T[:, FACES[f][0]], T[:, FACES[f][1]], T[:, FACES[f][2]]
        n = np.cross(b2 - a, c - a)
        nn = np.linalg.norm(n, axis=1)
        # sign: positive when the circumcenter is on the opposite vertex's side
        s = np.sign(np.einsum('mi,mi->m', n, T[:, f] - a))
        hR[:, f] = s * np.einsum('mi,mi->m', n, cen - a) / (nn * R)

    face = np.empty((m, 12))
    for k, (ap, u, v) in enumerate(_ANGLES):
        e1 = T[:, u] - T[:, ap]
        e2 = T[:, v] - T[:, ap]
        cosv = np.einsum('mi,mi->m', e1, e2) / (
            np.linalg.norm(e1, axis=1) * np.linalg.norm(e2, axis=1))
        face[:, k] = np.degrees(np.arccos(np.clip(cosv, -1.0, 1.0)))

    dih = np.empty((m, 6))
    for k, (i, j) in enumerate(EDGES):
        kk, ll = (v for v in range(4) if v not in (i, j))
        e = T[:, j] - T[:, i]
        e = e / np.linalg.norm(e, axis=1, keepdims=True)
        u = T[:, kk] - T[:, i]
        v = T[:, ll] - T[:, i]
        u = u - np.einsum('mi,mi->m', u, e)[:, None] * e
        v = v - np.einsum('mi,mi->m', v, e)[:, None] * e
        cosv = np.einsum('mi,mi->m', u, v) / (
            np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1))
        dih[:, k] = np.degrees(np.arccos(np.clip(cosv, -1.0, 1.0)))

    el = np.stack([np.linalg.norm(T[:, j] - T[:, i], axis=1) for i, j in EDGES], axis=1)
    return cen, R, hR, face, dih, R / el.min(axis=1), vol


def per_tet_objective(T, mode):
    """mode 0: min(min h/R, (90 - max face angle)/90); mode 1: min h/R only."""
    _, _, hR, face, _, _, _ = quality_arrays(T)
    minhr = hR.min(axis=1)
    if mode == 1:
        return minhr
    return np.minimum(minhr, (90.0 - face.max(axis=1)) / 90.0)


def min_objective(T, mode):
    return per_tet_objective(T, mode).min()


def volume_signs_ok(T, sgn):
    """True iff every signed volume matches its reference sign (never zero)."""
    T = np.asarray(T, float)
    d = np.linalg.det(T[:, 1:] - T[:, :1])
    return bool((d * sgn > 0.0).all())


def wc_margins(T):
    """Per-tet well-centeredness margins, concatenated.

    16 values per tet: 4 facet h/R then 12 face-angle margins (90 - a)/90.
    All positive iff the batch is completely well-centered.
    """
    _, _, hR, face, _, _, _ = quality_arrays(T)
    return np.concatenate([hR, (90.0 - face) / 90.0], axis=1).ravel()
