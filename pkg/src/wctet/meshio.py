"""Mesh file I/O: node/ele ASCII pairs and VTK legacy unstructured grids.

Coordinates are written with 17 significant digits, which round-trips
float64 exactly.  Writes are atomic (temp file in the target directory,
then rename).  The node/ele writer emits zero-based indices; the reader
accepts one-based files too, detected from the first data line's index.
"""

import os
import tempfile

import numpy as np

from .errors import ParseError
from .mesh import TetMesh

FMT_NODEELE = "nodeele"
FMT_VTK = "vtk"


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def nodeele_paths(path):
    """Map any of base, base.node, base.ele to the (node, ele) pair."""
    base, ext = os.path.splitext(path)
    if ext not in (".node", ".ele"):
        base = path
    return base + ".node", base + ".ele"


def _tokens(path):
    """Non-empty, non-comment lines as (lineno, fields)."""
    out = []
    with open(path) as f:
        for ln, raw in enumerate(f, 1):
            s = raw.split("#", 1)[0].strip()
            if s:
                out.append((ln, s.split()))
    return out


def _write_nodeele(m: TetMesh, path):
    npath, epath = nodeele_paths(path)
    lines = ["%d 3 0 0" % m.n_vertices]
    for i, p in enumerate(m.vertices):
        lines.append("%d %.17g %.17g %.17g" % (i, p[0], p[1], p[2]))
    _atomic_write(npath, "\n".join(lines) + "\n")
    lines = ["%d 4 0" % m.n_tets]
    for i, t in enumerate(m.tets):
        lines.append("%d %d %d %d %d" % (i, t[0], t[1], t[2], t[3]))
    _atomic_write(epath, "\n".join(lines) + "\n")


def _parse_count(fields, lineno, path):
    try:
        n = int(fields[0])
    except ValueError:
        raise ParseError("bad count in %s" % path, line=lineno)
    if n < 0:
        raise ParseError("negative count", line=lineno)
    return n


def _read_nodeele(path):
    npath, epath = nodeele_paths(path)
    rows = _tokens(npath)
    if not rows:
        raise ParseError("empty node file %s" % npath, line=1)
    ln, fields = rows[0]
    n = _parse_count(fields, ln, npath)
    if len(rows) - 1 != n:
        raise ParseError("expected %d vertex lines, found %d" % (n, len(rows) - 1),
                         line=ln)
    one_based = n > 0 and rows[1][1][0] == "1"
    verts = np.empty((n, 3))
    for k, (ln, f) in enumerate(rows[1:]):
        if len(f) < 4:
            raise ParseError("vertex line needs index and 3 coordinates", line=ln)
        try:
            idx = int(f[0])
            verts[k] = [float(f[1]), float(f[2]), float(f[3])]
        except ValueError:
            raise ParseError("bad vertex line", line=ln)
        if idx - (1 if one_based else 0) != k:
            raise ParseError("vertex indices must be consecutive", line=ln)

    rows = _tokens(epath)
    if not rows:
        raise ParseError("empty ele file %s" % epath, line=1)
    ln, fields = rows[0]
    nt = _parse_count(fields, ln, epath)
    if len(rows) - 1 != nt:
        raise ParseError("expected %d tet lines, found %d" % (nt, len(rows) - 1),
                         line=ln)
    tets = np.empty((nt, 4), np.int64)
    off = 1 if (nt > 0 and rows[1][1][0] == "1") else 0
    for k, (ln, f) in enumerate(rows[1:]):
        if len(f) < 5:
            raise ParseError("tet line needs index and 4 vertex ids", line=ln)
        try:
            tets[k] = [int(x) - off for x in f[1:5]]
        except ValueError:
            raise ParseError("bad tet line", line=ln)
    return TetMesh(verts, tets)


def _write_vtk(m: TetMesh, path):
    lines = ["# vtk DataFile Version 3.0",
             "tetrahedral mesh",
             "ASCII",
             "DATASET UNSTRUCTURED_GRID",
             "POINTS %d double" % m.n_vertices]
    for p in m.vertices:
        lines.append("%.17g %.17g %.17g" % (p[0], p[1], p[2]))
    lines.append("CELLS %d %d" % (m.n_tets, 5 * m.n_tets))
    for t in m.tets:
        lines.append("4 %d %d %d %d" % (t[0], t[1], t[2], t[3]))
    lines.append("CELL_TYPES %d" % m.n_tets)
    lines.extend(["10"] * m.n_tets)
    _atomic_write(path, "\n".join(lines) + "\n")


def _read_vtk(path):
    rows = []
    with open(path) as f:
        for ln, raw in enumerate(f, 1):
            rows.append((ln, raw.strip()))
    # flatten the data sections into a token stream with line tracking
    i = 0
    verts = tets = None
    ncells = None
    while i < len(rows):
        ln, s = rows[i]
        up = s.upper()
        if up.startswith("POINTS"):
            f = s.split()
            if len(f) < 3:
                raise ParseError("malformed POINTS header", line=ln)
            n = _parse_count(f[1:], ln, path)
            vals = []
            j = i + 1
            while j < len(rows) and len(vals) < 3 * n:
                ln2, s2 = rows[j]
                for tok in s2.split():
                    try:
                        vals.append(float(tok))
                    except ValueError:
                        raise ParseError("bad coordinate %r" % tok, line=ln2)
                j += 1
            if len(vals) < 3 * n:
                raise ParseError("POINTS section truncated", line=rows[-1][0])
            verts = np.array(vals[:3 * n]).reshape(n, 3)
            i = j
            continue
        if up.startswith("CELLS"):
            f = s.split()
            if len(f) < 3:
                raise ParseError("malformed CELLS header", line=ln)
            ncells = _parse_count(f[1:], ln, path)
            tets = np.empty((ncells, 4), np.int64)
            j = i + 1
            for k in range(ncells):
                if j >= len(rows):
                    raise ParseError("CELLS section truncated", line=rows[-1][0])
                ln2, s2 = rows[j]
                f2 = s2.split()
                if not f2 or f2[0] != "4" or len(f2) < 5:
                    raise ParseError("only 4-vertex cells are supported", line=ln2)
                try:
                    tets[k] = [int(x) for x in f2[1:5]]
                except ValueError:
                    raise ParseError("bad cell line", line=ln2)
                j += 1
            i = j
            continue
        if up.startswith("CELL_TYPES"):
            j = i + 1
            seen = 0
            while j < len(rows) and seen < (ncells or 0):
                ln2, s2 = rows[j]
                for tok in s2.split():
                    if tok != "10":
                        raise ParseError("cell type %s is not tetrahedron" % tok,
                                         line=ln2)
                    seen += 1
                j += 1
            i = j
            continue
        i += 1
    if verts is None:
        raise ParseError("no POINTS section", line=1)
    if tets is None:
        raise ParseError("no CELLS section", line=1)
    return TetMesh(verts, tets)


def write_mesh(m: TetMesh, path, fmt=None):
    """Write a mesh; fmt 'nodeele' or 'vtk', inferred from the extension
    when omitted (.vtk is VTK, anything else the node/ele pair)."""
    if fmt is None:
        fmt = FMT_VTK if path.endswith(".vtk") else FMT_NODEELE
    if fmt == FMT_NODEELE:
        _write_nodeele(m, path)
    elif fmt == FMT_VTK:
        _write_vtk(m, path)
    else:
        raise ValueError("unknown format %r" % (fmt,))


def read_mesh(path, fmt=None) -> TetMesh:
    if fmt is None:
        fmt = FMT_VTK if path.endswith(".vtk") else FMT_NODEELE
    if fmt == FMT_NODEELE:
        return _read_nodeele(path)
    if fmt == FMT_VTK:
        return _read_vtk(path)
    raise ValueError("unknown format %r" % (fmt,))


def read_points(path):
    """Plain-text points: one 'x y z' triple per line, or a .node file."""
    if path.endswith(".node"):
        rows = _tokens(path)
        if not rows:
            raise ParseError("empty node file", line=1)
        ln, fields = rows[0]
        n = _parse_count(fields, ln, path)
        pts = []
        for ln2, f in rows[1:]:
            if len(f) < 4:
                raise ParseError("vertex line needs index and 3 coordinates",
                                 line=ln2)
            pts.append([float(f[1]), float(f[2]), float(f[3])])
        if len(pts) != n:
            raise ParseError("expected %d vertices, found %d" % (n, len(pts)),
                             line=ln)
        return np.array(pts)
    pts = []
    for ln, f in _tokens(path):
        if len(f) != 3:
            raise ParseError("expected 'x y z'", line=ln)
        try:
            pts.append([float(x) for x in f])
        except ValueError:
            raise ParseError("bad coordinate", line=ln)
    return np.array(pts)
