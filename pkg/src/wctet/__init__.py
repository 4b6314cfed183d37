"""wctet: construct, check, subdivide, and optimize tetrahedral meshes for
well-centeredness.

A tetrahedron is 3-well-centered when it strictly contains its
circumcenter (equivalently min h/R > 0 over its four facets), 2-well-
centered when all twelve face angles are strictly acute, and completely
well-centered when both hold.
"""

from .errors import (AllCoplanar, DegenerateParams, DegenerateSimplex,
                     DegenerateTet, DuplicateTet, IndexOutOfRange,
                     InvalidParams, InvalidSlide, InvertedElement,
                     NotConforming, ParseError, TooFewPoints, WctetError)
from .geometry import (Circumsphere, R_OVER_L_MIN, TetQuality, WcClass,
                       circumcircle_tri, circumsphere_tet, classify,
                       outside_equatorial_ball, signed_facet_height,
                       tet_quality)
from .mesh import (ConformityDiagnostics, QualityReport, TetMesh, build,
                   is_conforming, is_delaunay, mesh_quality)
from .delaunay import brute_force_delaunay, delaunay3d
from .tilings import (LatticeParams, PrismSpec, SQRT2_OVER_2, TilingExtent,
                      lattice_point, lattice_points, prism_tiling,
                      slab_tiling, sommerville_tet, space_tiling)
from .subdivision import (REGULAR_TET, SlideScan, SlideScheme,
                          Subdiv49Params, cube_corner_is_not_3wc,
                          cube_corner_tet, midpoint_subdivide,
                          scan_slide_parameter, subdivide_49,
                          subdivide_49_well_centered,
                          subdivision_constraints)
from .optimize import (OptimizeSpec, OptimizeTrace, objective_value,
                       optimize, softmin_polish)
from .cube import (CubePipelineResult, MARKED_CORNERS, cube_pipeline,
                   cube_surface_points, default_interior_seeds)
from .meshio import nodeele_paths, read_mesh, read_points, write_mesh
from .reporting import format_report, report_json, report_table
from . import kernels

__version__ = "0.1.0"

__all__ = [
    "AllCoplanar", "DegenerateParams", "DegenerateSimplex", "DegenerateTet",
    "DuplicateTet", "IndexOutOfRange", "InvalidParams", "InvalidSlide",
    "InvertedElement", "NotConforming", "ParseError", "TooFewPoints",
    "WctetError",
    "Circumsphere", "R_OVER_L_MIN", "TetQuality", "WcClass",
    "circumcircle_tri", "circumsphere_tet", "classify",
    "outside_equatorial_ball", "signed_facet_height", "tet_quality",
    "ConformityDiagnostics", "QualityReport", "TetMesh", "build",
    "is_conforming", "is_delaunay", "mesh_quality",
    "brute_force_delaunay", "delaunay3d",
    "LatticeParams", "PrismSpec", "SQRT2_OVER_2", "TilingExtent",
    "lattice_point", "lattice_points", "prism_tiling", "slab_tiling",
    "sommerville_tet", "space_tiling",
    "REGULAR_TET", "SlideScan", "SlideScheme", "Subdiv49Params",
    "cube_corner_is_not_3wc", "cube_corner_tet", "midpoint_subdivide",
    "scan_slide_parameter", "subdivide_49", "subdivide_49_well_centered",
    "subdivision_constraints",
    "OptimizeSpec", "OptimizeTrace", "objective_value", "optimize",
    "softmin_polish",
    "CubePipelineResult", "MARKED_CORNERS", "cube_pipeline",
    "cube_surface_points", "default_interior_seeds",
    "nodeele_paths", "read_mesh", "read_points", "write_mesh",
    "format_report", "report_json", "report_table",
    "kernels",
]
