"""Command-line interface.

Exit codes: 0 success (for `check`: completely well-centered), 1 check
failed, 2 usage error, 3 file parse error, 4 degenerate or infeasible
geometry.  All diagnostics go to standard error; outputs are deterministic
for identical invocations.
"""

import argparse
import sys

import numpy as np

from .cube import cube_pipeline
from .delaunay import delaunay3d
from .errors import ParseError, WctetError
from .mesh import TetMesh, mesh_quality
from .meshio import read_mesh, read_points, write_mesh
from .optimize import OptimizeSpec, optimize
from .reporting import format_report
from .subdivision import REGULAR_TET, SlideScheme, Subdiv49Params, \
    midpoint_subdivide, subdivide_49
from .tilings import LatticeParams, PrismSpec, SQRT2_OVER_2, TilingExtent, \
    prism_tiling, slab_tiling, sommerville_tet, space_tiling


def _build_parser():
    p = argparse.ArgumentParser(prog="wctet",
                                description="well-centered tetrahedral meshing toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="construct a mesh")
    g.add_argument("what", choices=["sommerville", "lattice", "slab", "prism",
                                    "subdiv8", "subdiv49", "cube"])
    g.add_argument("--a", type=float, default=SQRT2_OVER_2)
    g.add_argument("--b", type=float, default=SQRT2_OVER_2)
    g.add_argument("--layers", type=int, default=1)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--q", type=int, default=1)
    g.add_argument("--scheme", choices=["uniform", "a", "b"], default="uniform")
    g.add_argument("--t", type=float, default=0.0)
    g.add_argument("--out", required=True)
    g.add_argument("--format", choices=["nodeele", "vtk"], default=None)

    c = sub.add_parser("check", help="quality report and well-centeredness; "
                                     "exit 0 iff completely well-centered")
    c.add_argument("path")
    c.add_argument("--json", action="store_true")

    o = sub.add_parser("optimize", help="move free vertices to improve the mesh")
    o.add_argument("path")
    o.add_argument("--free", default="interior",
                   help="'interior' or a comma-separated vertex id list")
    o.add_argument("--objective", choices=["minhr", "cwc"], default="cwc")
    o.add_argument("--max-iters", type=int, default=200)
    o.add_argument("--tol", type=float, default=None)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--step-init", type=float, default=0.1)
    o.add_argument("--out", required=True)
    o.add_argument("--format", choices=["nodeele", "vtk"], default=None)

    d = sub.add_parser("delaunay", help="triangulate a point set")
    d.add_argument("points_file")
    d.add_argument("--out", required=True)
    d.add_argument("--format", choices=["nodeele", "vtk"], default=None)

    r = sub.add_parser("report", help="print a quality report")
    r.add_argument("path")
    r.add_argument("--format", choices=["table", "json"], default="table")
    return p


def _generate(args) -> TetMesh:
    if args.what == "sommerville":
        return TetMesh(sommerville_tet(), np.array([[0, 1, 2, 3]]))
    if args.what == "lattice":
        return space_tiling(LatticeParams(args.a, args.b), TilingExtent())
    if args.what == "slab":
        return slab_tiling(LatticeParams(args.a, args.b), layers=args.layers)
    if args.what == "prism":
        return prism_tiling(PrismSpec(args.p, args.q))
    if args.what == "subdiv8":
        return midpoint_subdivide(REGULAR_TET, SlideScheme(args.scheme, args.t))
    if args.what == "subdiv49":
        return subdivide_49(Subdiv49Params())
    if args.what == "cube":
        return cube_pipeline().mesh
    raise ValueError(args.what)


def _parse_free(spec: str, m: TetMesh):
    if spec == "interior":
        ids = m.interior_vertices()
        if len(ids) == 0:
            raise WctetError("mesh has no interior vertices to free")
        return tuple(int(v) for v in ids)
    try:
        return tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise ValueError("--free must be 'interior' or a comma-separated id list")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        if args.cmd == "generate":
            write_mesh(_generate(args), args.out, args.format)
            return 0
        if args.cmd == "check":
            report = mesh_quality(read_mesh(args.path))
            print(format_report(report, "json" if args.json else "table"))
            return 0 if report.completely_wc else 1
        if args.cmd == "optimize":
            m = read_mesh(args.path)
            spec = OptimizeSpec(free_vertices=_parse_free(args.free, m),
                                objective=args.objective,
                                max_iters=args.max_iters,
                                step_init=args.step_init,
                                tol=args.tol,
                                seed=args.seed)
            out, trace = optimize(m, spec)
            write_mesh(out, args.out, args.format)
            print("objective: %.6f -> %.6f (%s, %d moves)"
                  % (trace.objective[0], trace.objective[-1],
                     trace.termination, trace.moves), file=sys.stderr)
            return 0
        if args.cmd == "delaunay":
            write_mesh(delaunay3d(read_points(args.points_file)),
                       args.out, args.format)
            return 0
        if args.cmd == "report":
            print(format_report(mesh_quality(read_mesh(args.path)), args.format))
            return 0
        return 2
    except ParseError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except FileNotFoundError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except WctetError as e:
        print("error: %s" % e, file=sys.stderr)
        return 4
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
