"""Incremental 3D Delaunay (Bowyer-Watson) with symbolic perturbation.

Hull handling uses an explicit infinite vertex rather than a finite
super-simplex: a fake enclosing box corrupts the insphere tests of real
points near the hull, while infinite tets reduce conflict checks to exact
orientation tests against their hull face.

Cospherical and cocircular ties (rife in lattice and cube inputs) are
resolved by lifting each point with a weight |p|^2 - eps * m_i, where the
multipliers m_i in [1, 2) come from a splitmix64 hash of the point index.
The perturbed insphere determinant is exactly linear in eps, so its sign
at a tie is the sign of a second determinant in the multipliers; plain
lexicographic multipliers would invite systematic cancellation there.
Coplanar hull ties fall back to a projected 2D weighted incircle.

The outcome is a deterministic triangulation of every input, general
position or not.
"""
import itertools

import numpy as np

from .errors import AllCoplanar, TooFewPoints
from .mesh import TetMesh

_INF = -1


def _mults(n, salt=0x9E3779B97F4A7C15):
    """Deterministic per-index perturbation multipliers in [1, 2)."""
    out = np.empty(n)
    for i in range(n):
        z = (i + 1 + salt) & 0xFFFFFFFFFFFFFFFF
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & 0xFFFFFFFFFFFFFFFF
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB & 0xFFFFFFFFFFFFFFFF
        z = z ^ (z >> 31)
        out[i] = 1.0 + (z >> 11) * (1.0 / (1 << 53))
    return out


class _Triangulator:
    def __init__(self, pts):
        pts = np.asarray(pts, float)
        order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
        keep = []
        seen = set()
        for i in order:
            k = (pts[i, 0], pts[i, 1], pts[i, 2])
            if k not in seen:
                seen.add(k)
                keep.append(int(i))
        if len(keep) < 4:
            raise TooFewPoints("need at least 4 distinct points")
        self.order = keep
        self.pts = pts
        self.m = _mults(len(pts))
        self.scale = max(1.0, float(np.abs(pts).max()))
        self.tets = []
        self.alive = []
        self._build()

    # ---------------- predicates ----------------

    def orient(self, a, b, c, d):
        P = self.pts
        A = np.array([P[b] - P[a], P[c] - P[a], P[d] - P[a]])
        det = np.linalg.det(A)
        tol = 8e-13 * self.scale ** 3
        if det > tol:
            return 1
        if det < -tol:
            return -1
        return 0

    def insphere(self, t, e):
        """+1 iff point e is inside the perturbed circumsphere of finite tet t.

        t must be positively oriented.  With rows (p_v - p_e | |p_v|^2 - |p_e|^2)
        the unperturbed determinant D0 is negative for an interior point; the
        perturbed determinant is D(eps) = D0 - eps * DM exactly.
        """
        P = self.pts
        m = self.m
        pe = P[e]
        le = P[e] @ P[e]
        me = m[e]
        X = np.empty((4, 4))
        M = np.empty(4)
        for r, v in enumerate(t):
            X[r, :3] = P[v] - pe
            X[r, 3] = P[v] @ P[v] - le
            M[r] = m[v] - me
        D0 = np.linalg.det(X)
        tol0 = 3.2e-10 * self.scale ** 5
        if D0 < -tol0:
            return 1
        if D0 > tol0:
            return -1
        XM = X.copy()
        XM[:, 3] = M
        DM = np.linalg.det(XM)
        tol1 = 8e-11 * self.scale ** 3
        if DM > tol1:
            return 1
        if DM < -tol1:
            return -1
        return 0  # deep tie: treat as non-conflict

    def incircle_plane(self, a, b, c, e):
        """Perturbed 2D incircle for coplanar a, b, c, e, projected in-plane."""
        P = self.pts
        m = self.m
        u = P[b] - P[a]
        w = P[c] - P[a]
        n = np.cross(u, w)
        nn = np.linalg.norm(n)
        if nn < 1e-300:
            return -1
        n = n / nn
        e1 = u / np.linalg.norm(u)
        e2 = np.cross(n, e1)

        def proj(v):
            d = P[v] - P[a]
            return np.array([d @ e1, d @ e2])

        pa, pb, pc = proj(a), proj(b), proj(c)
        vb, vc = b, c
        ux, uy = pb - pa
        wx, wy = pc - pa
        if ux * wy - uy * wx < 0:   # force ccw in this basis
            pb, pc = pc, pb
            vb, vc = c, b
        pe = proj(e)
        le = pe @ pe
        me = m[e]
        X = np.empty((3, 3))
        M = np.empty(3)
        for r, (q, v) in enumerate(((pa, a), (pb, vb), (pc, vc))):
            X[r, :2] = q - pe
            X[r, 2] = q @ q - le
            M[r] = m[v] - me
        D0 = np.linalg.det(X)   # ccw 2D convention: positive means inside
        tol0 = 1.6e-10 * self.scale ** 4
        if D0 > tol0:
            return 1
        if D0 < -tol0:
            return -1
        XM = X.copy()
        XM[:, 2] = M
        D1 = -np.linalg.det(XM)
        tol1 = 4e-11 * self.scale ** 2
        if D1 > tol1:
            return 1
        if D1 < -tol1:
            return -1
        return 0

    def conflict(self, ti, e):
        t = self.tets[ti]
        if _INF in t:
            f = [v for v in t if v != _INF]
            o = self.orient(f[0], f[1], f[2], e)   # interior side stored negative
            if o > 0:
                return True
            if o < 0:
                return False
            return self.incircle_plane(f[0], f[1], f[2], e) > 0
        return self.insphere(t, e) > 0

    # ---------------- construction ----------------

    def _build(self):
        order = self.order
        init = [order[0]]
        rest = list(order[1:])
        for i in list(rest):
            if len(init) == 2:
                u = self.pts[init[1]] - self.pts[init[0]]
                w = self.pts[i] - self.pts[init[0]]
                if np.linalg.norm(np.cross(u, w)) > 1e-12 * self.scale ** 2:
                    init.append(i)
                    rest.remove(i)
            elif len(init) == 3:
                if self.orient(init[0], init[1], init[2], i) != 0:
                    init.append(i)
                    rest.remove(i)
            else:
                init.append(i)
                rest.remove(i)
            if len(init) == 4:
                break
        if len(init) < 4:
            raise AllCoplanar("all points coplanar")
        a, b, c, d = init
        if self.orient(a, b, c, d) < 0:
            b, c = c, b
        self._add([a, b, c, d])
        for f in ((a, c, b), (a, b, d), (b, c, d), (a, d, c)):
            other = next(v for v in (a, b, c, d) if v not in f)
            x, y, z = f
            if self.orient(x, y, z, other) > 0:
                x, y = y, x
            self._add([x, y, z, _INF])
        for p in rest:
            self._insert(p)

    def _add(self, t):
        self.tets.append(list(t))
        self.alive.append(True)

    def _insert(self, p):
        conf = [i for i in range(len(self.tets)) if self.alive[i] and self.conflict(i, p)]
        if not conf:
            return
        # keep only the conflict component containing the first hit; the
        # perturbed predicates make disconnected spurious hits unlikely but
        # a split cavity would corrupt the boundary walk
        adj = {}
        for i in conf:
            for f in itertools.combinations(sorted(self.tets[i]), 3):
                adj.setdefault(f, []).append(i)
        cavity = set()
        stack = [conf[0]]
        while stack:
            i = stack.pop()
            if i in cavity:
                continue
            cavity.add(i)
            for f in itertools.combinations(sorted(self.tets[i]), 3):
                for j in adj[f]:
                    if j not in cavity:
                        stack.append(j)
        fc = {}
        for i in cavity:
            t = self.tets[i]
            for k in range(4):
                f = tuple(sorted(t[j] for j in range(4) if j != k))
                fc[f] = fc.get(f, 0) + 1
        for i in cavity:
            self.alive[i] = False
        for f, count in fc.items():
            if count == 2:
                continue   # interior to the cavity
            if _INF in f:
                e0, e1 = (v for v in f if v != _INF)
                self._add([e0, e1, p, _INF])
            else:
                x, y, z = f
                if self.orient(x, y, z, p) < 0:
                    x, y = y, x
                self._add([x, y, z, p])
        # restore the hull invariant: each infinite tet's face keeps the
        # interior on its negative side
        ref = None
        for i in range(len(self.tets)):
            if self.alive[i] and _INF not in self.tets[i]:
                ref = self.pts[self.tets[i]].mean(axis=0)
                break
        for i in range(len(self.tets)):
            if self.alive[i] and _INF in self.tets[i]:
                x, y, z = (v for v in self.tets[i] if v != _INF)
                A = np.array([self.pts[y] - self.pts[x],
                              self.pts[z] - self.pts[x],
                              ref - self.pts[x]])
                if np.linalg.det(A) > 0:
                    self.tets[i] = [y, x, z, _INF]
                else:
                    self.tets[i] = [x, y, z, _INF]

    def finite_tets(self):
        out = []
        for i in range(len(self.tets)):
            if self.alive[i] and _INF not in self.tets[i]:
                out.append(tuple(sorted(self.tets[i])))
        return sorted(out)


def delaunay3d(points) -> TetMesh:
    """Delaunay triangulation of a 3D point set.

    Ties from cospherical inputs resolve deterministically (see module
    docstring); the result is conforming and covers the convex hull.
    """
    points = np.asarray(points, float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError("points must be (n, 3)")
    if len(points) < 4:
        raise TooFewPoints("need at least 4 points")
    tri = _Triangulator(points)
    return TetMesh(points, np.array(tri.finite_tets(), np.int64))


def brute_force_delaunay(points, rel_tol=1e-9):
    """Empty-circumsphere enumeration over all 4-subsets.

    Only meaningful for small inputs in general position; used as the
    testing oracle for delaunay3d.
    """
    pts = np.asarray(points, float)
    out = []
    for comb in itertools.combinations(range(len(pts)), 4):
        T = pts[list(comb)]
        A = 2.0 * (T[1:] - T[0])
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        b = (T[1:] ** 2).sum(axis=1) - (T[0] ** 2).sum()
        c = np.linalg.solve(A, b)
        R = np.linalg.norm(T[0] - c)
        d = np.linalg.norm(pts - c, axis=1)
        if not (d < R * (1.0 - rel_tol)).any():
            out.append(tuple(sorted(comb)))
    return sorted(out)
