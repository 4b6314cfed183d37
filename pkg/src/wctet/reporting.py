"""Quality-report rendering: paper-style table and versioned JSON."""

import json

from .mesh import QualityReport

SCHEMA_VERSION = 1


def report_table(r: QualityReport) -> str:
    """Min/Max table with angles to 2 decimals and ratios to 3."""
    rows = [
        ("h/R", "%.3f" % r.h_over_r_min, "%.3f" % r.h_over_r_max),
        ("Face Angle", "%.2f" % r.face_angle_min, "%.2f" % r.face_angle_max),
        ("Dihedral Angle", "%.2f" % r.dihedral_min, "%.2f" % r.dihedral_max),
        ("R/l", "%.3f" % r.r_over_l_min, "%.3f" % r.r_over_l_max),
    ]
    w0 = max(len(q) for q, _, _ in rows + [("Quantity",) * 3])
    w1 = max(len(x) for _, x, _ in rows + [("", "Min", "")])
    w2 = max(len(x) for _, _, x in rows + [("", "", "Max")])
    lines = ["%-*s  %*s  %*s" % (w0, "Quantity", w1, "Min", w2, "Max")]
    for q, lo, hi in rows:
        lines.append("%-*s  %*s  %*s" % (w0, q, w1, lo, w2, hi))
    lines.append("")
    lines.append("tets: %d  vertices: %d  edges: %d  faces: %d"
                 % (r.n_tets, r.n_vertices, r.n_edges, r.n_faces))
    lines.append("3-well-centered: %s  2-well-centered: %s  completely: %s"
                 % _ynl(r))
    return "\n".join(lines)


def _ynl(r):
    f = lambda b: "yes" if b else "no"
    return f(r.all_3wc), f(r.all_2wc), f(r.completely_wc)


def report_json(r: QualityReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n_vertices": r.n_vertices,
        "n_edges": r.n_edges,
        "n_faces": r.n_faces,
        "n_tets": r.n_tets,
        "h_over_r": {"min": r.h_over_r_min, "max": r.h_over_r_max,
                     "argmin_tet": r.argext.get("h_over_r_min"),
                     "argmax_tet": r.argext.get("h_over_r_max")},
        "face_angle_deg": {"min": r.face_angle_min, "max": r.face_angle_max,
                           "argmin_tet": r.argext.get("face_angle_min"),
                           "argmax_tet": r.argext.get("face_angle_max")},
        "dihedral_angle_deg": {"min": r.dihedral_min, "max": r.dihedral_max,
                               "argmin_tet": r.argext.get("dihedral_min"),
                               "argmax_tet": r.argext.get("dihedral_max")},
        "r_over_l": {"min": r.r_over_l_min, "max": r.r_over_l_max,
                     "argmin_tet": r.argext.get("r_over_l_min"),
                     "argmax_tet": r.argext.get("r_over_l_max")},
        "all_3wc": r.all_3wc,
        "all_2wc": r.all_2wc,
        "completely_wc": r.completely_wc,
    }
    return json.dumps(doc, indent=2)


def format_report(r: QualityReport, fmt: str = "table") -> str:
    if fmt == "table":
        return report_table(r)
    if fmt == "json":
        return report_json(r)
    raise ValueError("unknown report format %r" % (fmt,))
