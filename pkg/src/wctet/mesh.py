"""Indexed tetrahedral mesh: conformity, boundary, quality aggregation, Delaunay check."""
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (DegenerateTet, DuplicateTet, IndexOutOfRange, NotConforming)


@dataclass(frozen=True)
class QualityReport:
    h_over_r_min: float
    h_over_r_max: float
    face_angle_min: float
    face_angle_max: float
    dihedral_min: float
    dihedral_max: float
    r_over_l_min: float
    r_over_l_max: float
    n_vertices: int
    n_edges: int
    n_faces: int
    n_tets: int
    all_2wc: bool
    all_3wc: bool
    # tet indices attaining each extremum, for report consumers
    argext: dict = field(default_factory=dict, compare=False)

    @property
    def completely_wc(self):
        return self.all_2wc and self.all_3wc


class TetMesh:
    """Vertices (n, 3) plus a connectivity table (m, 4) of vertex indices.

    Construction canonicalizes every tet to positive signed volume and
    freezes both arrays.  Derived face/edge maps are built lazily.
    """

    def __init__(self, vertices, tets):
        vertices = np.array(vertices, float)
        tets = np.array(tets, np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise ValueError("vertices must be (n, 3)")
        if tets.ndim != 2 or tets.shape[1] != 4:
            raise ValueError("tets must be (m, 4)")
        n = len(vertices)
        if tets.size and (tets.min() < 0 or tets.max() >= n):
            bad = tets[(tets < 0) | (tets >= n)][0]
            raise IndexOutOfRange("tet references vertex %d of %d" % (bad, n))
        for ti, t in enumerate(tets):
            if len(set(t.tolist())) != 4:
                raise DegenerateTet("tet %d repeats a vertex" % ti, index=ti)
        seen = {}
        for ti, t in enumerate(tets):
            key = tuple(sorted(t.tolist()))
            if key in seen:
                raise DuplicateTet("tets %d and %d share the same vertex set" % (seen[key], ti))
            seen[key] = ti
        # canonical orientation: swap one pair where the signed volume is negative
        T = vertices[tets]
        vol6 = np.linalg.det(T[:, 1:] - T[:, :1])
        if tets.size:
            scale = np.abs(T - T[:, :1]).max(axis=(1, 2)) ** 3
            dead = np.abs(vol6) <= 1e-12 * np.maximum(scale, 1e-300)
            if dead.any():
                ti = int(np.where(dead)[0][0])
                raise DegenerateTet("tet %d has zero volume" % ti, index=ti)
            flip = vol6 < 0
            tets[flip] = tets[flip][:, [0, 1, 3, 2]]
        self.vertices = vertices
        self.tets = tets
        self.vertices.setflags(write=False)
        self.tets.setflags(write=False)
        self._faces = None
        self._edges = None

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_tets(self):
        return len(self.tets)

    def tet_coords(self):
        return self.vertices[self.tets]

    def volumes(self):
        T = self.tet_coords()
        return np.linalg.det(T[:, 1:] - T[:, :1]) / 6.0

    def volume(self):
        return float(self.volumes().sum())

    def faces(self):
        """Map sorted vertex triple -> list of incident tet indices."""
        if self._faces is None:
            fmap = {}
            for ti, t in enumerate(self.tets):
                s = sorted(t.tolist())
                for k in range(4):
                    f = tuple(s[:k] + s[k + 1:])
                    fmap.setdefault(f, []).append(ti)
            self._faces = fmap
        return self._faces

    def edges(self):
        if self._edges is None:
            es = set()
            for t in self.tets:
                s = t.tolist()
                for i, j in itertools.combinations(s, 2):
                    es.add((i, j) if i < j else (j, i))
            self._edges = sorted(es)
        return self._edges

    def boundary_faces(self):
        """Faces incident to exactly one tet.  Requires a conforming mesh."""
        diag = is_conforming(self)
        if not diag:
            raise NotConforming(diag.reason)
        return sorted(f for f, ts in self.faces().items() if len(ts) == 1)

    def interior_vertices(self):
        """Ids of vertices not on any boundary face.  Requires conforming."""
        on_bdry = set()
        for f in self.boundary_faces():
            on_bdry.update(f)
        return np.array(sorted(set(range(self.n_vertices)) - on_bdry), dtype=np.int64)

    def with_vertices(self, vertices):
        """Same connectivity, new coordinates."""
        return TetMesh(vertices, self.tets.copy())


def build(vertices, tets) -> TetMesh:
    return TetMesh(vertices, tets)


@dataclass
class ConformityDiagnostics:
    ok: bool
    reason: str = ""
    bad_faces: list = field(default_factory=list)
    bad_pairs: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


_EDGE_IX = np.array(list(itertools.combinations(range(4), 2)))


def _tet_planes(T):
    """Outward unit facet normals N and offsets d with N@p <= d inside."""
    N = np.empty((4, 3))
    d = np.empty(4)
    for f in range(4):
        tri = np.delete(T, f, axis=0)
        n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
        if np.dot(n, T[f] - tri[0]) > 0.0:
            n = -n
        N[f] = n / np.linalg.norm(n)
        d[f] = N[f] @ tri[0]
    return N, d


def _dist_to_simplex(p, S):
    """Distance from p to the convex hull of 0, 1 or 2 points."""
    if len(S) == 0:
        return np.inf
    if len(S) == 1:
        return float(np.linalg.norm(p - S[0]))
    a, b = S
    u = b - a
    t = np.clip(np.dot(p - a, u) / np.dot(u, u), 0.0, 1.0)
    return float(np.linalg.norm(p - (a + t * u)))


def _improper_contact(A, B, NA, dA, NB, dB, S, ctol, ftol):
    """True when A and B touch beyond the simplex S of their shared vertices.

    Candidate contact points (vertices of the intersection polytope: a
    vertex of one tet in the other, or an edge of one crossing a facet
    plane of the other inside both) are collected with slack ctol; a
    candidate farther than ftol from S makes the contact improper.  Pairs
    sharing a full face never reach here.
    """
    cands = []
    sa = A @ NB.T - dB                      # (4 verts, 4 planes)
    for k in np.where(sa.max(axis=1) <= ctol)[0]:
        cands.append(A[k])
    sb = B @ NA.T - dA
    for k in np.where(sb.max(axis=1) <= ctol)[0]:
        cands.append(B[k])
    for P, NQ, dQ in ((A, NB, dB), (B, NA, dA)):
        p = P[_EDGE_IX[:, 0]]
        u = P[_EDGE_IX[:, 1]] - p
        den = u @ NQ.T                      # (6 edges, 4 planes)
        num = dQ[None, :] - p @ NQ.T
        with np.errstate(divide="ignore", invalid="ignore"):
            t = num / den
        ok = np.isfinite(t) & (t > -1e-9) & (t < 1.0 + 1e-9)
        es, fs = np.where(ok)
        if len(es):
            X = p[es] + t[es, fs, None] * u[es]
            keep = ((X @ NA.T - dA).max(axis=1) <= ctol) \
                & ((X @ NB.T - dB).max(axis=1) <= ctol)
            cands.extend(X[keep])
    return any(_dist_to_simplex(x, S) > ftol for x in cands)


def is_conforming(m: TetMesh) -> ConformityDiagnostics:
    """Face-to-face check plus pairwise improper-intersection scan.

    Two tets may only meet in their shared face, edge, vertex, or not at
    all.  Contacts are resolved down to about 1e-7 of the coordinate
    scale; thinner improper overlaps pass undetected.
    """
    bad_faces = [f for f, ts in m.faces().items() if len(ts) > 2]
    if bad_faces:
        return ConformityDiagnostics(False, "face shared by >2 tets", bad_faces=bad_faces)
    # pairwise scan, bounding boxes first
    T = m.tet_coords()
    if len(T) == 0:
        return ConformityDiagnostics(True)
    lo = T.min(axis=1)
    hi = T.max(axis=1)
    scale = float(np.abs(m.vertices).max()) if m.n_vertices else 1.0
    tol = 1e-9 * max(scale, 1.0)
    ctol = 1e-11 * max(scale, 1.0)
    ftol = 1e-7 * max(scale, 1.0)
    V = m.vertices
    planes = [_tet_planes(t) for t in T]
    vsets = [set(t.tolist()) for t in m.tets]
    order = np.argsort(lo[:, 0])
    bad_pairs = []
    reason = ""
    for oi in range(len(order)):
        i = order[oi]
        NA, dA = planes[i]
        for oj in range(oi + 1, len(order)):
            j = order[oj]
            if lo[j, 0] > hi[i, 0] + tol:
                break
            if (lo[j] > hi[i] + tol).any() or (lo[i] > hi[j] + tol).any():
                continue
            NB, dB = planes[j]
            shared = sorted(vsets[i] & vsets[j])
            if len(shared) == 3:
                # the pair meets exactly face to face iff their apexes lie
                # on opposite sides of the shared face's plane
                f = int(np.where(~np.isin(m.tets[i], shared))[0][0])
                apex = V[m.tets[j][~np.isin(m.tets[j], shared)][0]]
                if NA[f] @ apex - dA[f] <= ctol:
                    bad_pairs.append((int(min(i, j)), int(max(i, j))))
                    reason = reason or "tet interiors intersect"
                continue
            if _improper_contact(T[i], T[j], NA, dA, NB, dB, V[shared],
                                 ctol, ftol):
                bad_pairs.append((int(min(i, j)), int(max(i, j))))
                reason = reason or "tets touch beyond their shared face/edge/vertex"
    if bad_pairs:
        return ConformityDiagnostics(False, reason, bad_pairs=sorted(set(bad_pairs)))
    return ConformityDiagnostics(True)


def mesh_quality(m: TetMesh) -> QualityReport:
    """Element-wise min/max aggregation over the whole mesh."""
    T = m.tet_coords()
    vol6 = np.linalg.det(T[:, 1:] - T[:, :1])
    scale = np.abs(T - T[:, :1]).max(axis=(1, 2)) ** 3
    dead = np.abs(vol6) <= 1e-12 * np.maximum(scale, 1e-300)
    if dead.any():
        raise DegenerateTet("tet %d is degenerate" % int(np.where(dead)[0][0]),
                            index=int(np.where(dead)[0][0]))
    _, _, hR, face, dih, rl, _ = kernels.quality_arrays(T)
    argext = {
        'h_over_r_min': int(np.unravel_index(hR.argmin(), hR.shape)[0]),
        'h_over_r_max': int(np.unravel_index(hR.argmax(), hR.shape)[0]),
        'face_angle_min': int(np.unravel_index(face.argmin(), face.shape)[0]),
        'face_angle_max': int(np.unravel_index(face.argmax(), face.shape)[0]),
        'dihedral_min': int(np.unravel_index(dih.argmin(), dih.shape)[0]),
        'dihedral_max': int(np.unravel_index(dih.argmax(), dih.shape)[0]),
        'r_over_l_min': int(rl.argmin()),
        'r_over_l_max': int(rl.argmax()),
    }
    return QualityReport(
        h_over_r_min=float(hR.min()), h_over_r_max=float(hR.max()),
        face_angle_min=float(face.min()), face_angle_max=float(face.max()),
        dihedral_min=float(dih.min()), dihedral_max=float(dih.max()),
        r_over_l_min=float(rl.min()), r_over_l_max=float(rl.max()),
        n_vertices=m.n_vertices, n_edges=len(m.edges()),
        n_faces=len(m.faces()), n_tets=m.n_tets,
        all_2wc=bool(face.max() < 90.0), all_3wc=bool(hR.min() > 0.0),
        argext=argext,
    )


def is_delaunay(m: TetMesh, rel_tol=1e-9) -> bool:
    """No vertex strictly inside any tet circumsphere (depth > rel_tol * R)."""
    bad = [f for f, ts in m.faces().items() if len(ts) > 2]
    if bad:
        raise NotConforming("face shared by >2 tets")
    T = m.tet_coords()
    cen, R, _, _, _, _, _ = kernels.quality_arrays(T)
    V = m.vertices
    for i in range(len(T)):
        d = np.linalg.norm(V - cen[i], axis=1)
        inside = d < R[i] * (1.0 - rel_tol)
        if inside.any():
            hits = set(np.where(inside)[0].tolist()) - set(m.tets[i].tolist())
            if hits:
                return False
    return True
