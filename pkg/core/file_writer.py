# core/file_writer.py
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
import trimesh

from common.errors import UnsupportedDimension
from common.logger import log
from common.tolerances import EPS_HYPOTHESIS
from common.models import (Certificate, CoveringReport, HypothesisReport, MonotonicityReport, Polytope,
                           SimplexTriple)
from core.polytope import polytope_volume


def _finite_or_none(x: Optional[float]) -> Optional[float]:
    """JSON has no Infinity or NaN."""
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def _sig(x: Optional[float]) -> str:
    """Text reports show 12 significant digits."""
    return "n/a" if x is None else f"{x:.12g}"


# --- JSON documents ---

def polytope_to_dict(P: Polytope) -> Dict[str, Any]:
    return {
        "dim": P.dim,
        "halfspaces": [{"normal": h.normal.tolist(), "offset": h.offset} for h in P.halfspaces],
        "vertices": P.vertices.tolist(),
        "volume": polytope_volume(P),
    }


def hypothesis_to_dict(report: HypothesisReport) -> Dict[str, Any]:
    return {
        "mode": report.mode,
        "pass": report.passed,
        "min_margin": _finite_or_none(report.min_margin),
        "entries": [
            {"face": e.face, "codim": e.codim, "distance": e.distance, "threshold": e.threshold, "margin": e.margin}
            for e in report.entries
        ],
    }


def certificate_to_dict(cert: Certificate) -> Dict[str, Any]:
    simplices = []
    for s in cert.simplices:
        row = {"flag": s.flag, "vol": s.volume, "omega": s.omega, "facet_area": s.facet_area, "margin": s.margin}
        if s.degenerate:
            row["degenerate"] = True
        if s.omega_error:
            row["omega_error"] = s.omega_error
        if s.facet_ratio_a is not None:
            row["facet_ratio_a"] = s.facet_ratio_a
            row["facet_ratio_b"] = s.facet_ratio_b
        simplices.append(row)

    return {
        "kind": cert.kind,
        "mode": cert.mode,
        "dim": cert.dim,
        "claimed_bound": cert.claimed_bound,
        "total": cert.total,
        "pass": cert.passed,
        "hypothesis": hypothesis_to_dict(cert.hypothesis),
        "simplices": simplices,
        "omega_sum": cert.omega_sum,
        "checks": {k: (v.item() if isinstance(v, np.generic) else v) for k, v in cert.checks.items()},
    }


def subdivision_to_list(triples: List[SimplexTriple]) -> List[Dict[str, Any]]:
    return [
        {"flag": list(t.flag.faces), "a": t.a.tolist(), "b": t.b.tolist(), "degenerate": bool(t.degenerate)}
        for t in triples
    ]


def covering_to_dict(report: CoveringReport) -> Dict[str, Any]:
    return {
        "volume_gap": report.volume_gap,
        "overlap_hits": report.max_overlap_hits,
        "uncovered_hits": report.uncovered_hits,
        "tested_points": report.tested_points,
        "sample_count": report.sample_count,
        "seed": report.seed,
        "pass": report.passed,
    }


def write_json(document: Any, path: Optional[str] = None):
    """Full doubles, stable key order. No path means stdout."""
    text = json.dumps(document, indent=2)
    if path is None:
        sys.stdout.write(text + "\n")
        return
    Path(path).write_text(text + "\n", encoding="utf-8")
    log.info(f"Wrote {path}")


# --- Meshes ---

def subdivision_mesh(triples: List[SimplexTriple]) -> trimesh.Trimesh:
    """
    Every non-degenerate simplex A as its own set of triangles: the triangle itself for
    n = 2 (lifted to z = 0), the four faces of the tetrahedron for n = 3.
    """
    live = [t for t in triples if not t.degenerate]
    if not live:
        raise ValueError("Nothing to export: every simplex is degenerate")
    n = live[0].a.shape[1]
    if n == 2:
        vertices = np.vstack([np.hstack([t.a, np.zeros((3, 1))]) for t in live])
        faces = np.arange(3 * len(live)).reshape(-1, 3)
    elif n == 3:
        vertices = np.vstack([t.a for t in live])
        local = np.array([[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]])
        faces = np.vstack([local + 4 * i for i in range(len(live))])
    else:
        raise UnsupportedDimension(f"OFF export needs n = 2 or 3, got n = {n}")
    return trimesh.Trimesh(vertices=vertices, faces=faces, process=False)


def write_off(triples: List[SimplexTriple], path: str):
    mesh = subdivision_mesh(triples)
    mesh.export(path, file_type="off")
    log.info(f"Wrote {len(mesh.faces)} triangles to {path}")


# --- Curves ---

def write_curve_csv(frame: pd.DataFrame, report: MonotonicityReport, path: Optional[str] = None):
    """CSV rows of the curve table plus one trailing verdict comment."""
    text = frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    verdict = "pass" if report.passed else "fail"
    text += f"# monotone ratio: {verdict} (min difference {_sig(report.min_difference)})\n"
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    log.info(f"Wrote {len(frame)} curve rows to {path}")


# --- Text reports ---

def format_hypothesis(report: HypothesisReport) -> str:
    lines = [f"Hypothesis ({report.mode}): {'PASS' if report.passed else 'FAIL'}",
             f"  faces checked: {len(report.entries)}",
             f"  min margin:    {_sig(_finite_or_none(report.min_margin))}"]
    failing = [] if report.passed else [e for e in report.entries if e.margin < -EPS_HYPOTHESIS]
    for e in failing[:10]:
        lines.append(f"  face {e.face} (codim {e.codim}): distance {_sig(e.distance)} < {_sig(e.threshold)}")
    return "\n".join(lines)


def format_certificate(cert: Certificate) -> str:
    verdict = {True: "PASS", False: "FAIL", None: "EXPERIMENTAL (no verdict)"}[cert.passed]
    lines = [f"Certificate ({cert.kind}, n = {cert.dim}): {verdict}",
             f"  total:      {_sig(cert.total)}",
             f"  bound:      {_sig(cert.claimed_bound)}",
             f"  min margin: {_sig(_finite_or_none(cert.min_margin))}",
             f"  simplices:  {len(cert.simplices)} ({cert.checks.get('degenerate', 0)} degenerate)",
             f"  omega sum:  {_sig(cert.omega_sum)}"]
    if "surface_area" in cert.checks:
        lines.append(f"  surface:    {_sig(cert.checks['surface_area'])}")
    return "\n".join(lines)


def format_covering(report: CoveringReport) -> str:
    return "\n".join([
        f"Covering: {'PASS' if report.passed else 'FAIL'}",
        f"  volume gap:     {_sig(report.volume_gap)}",
        f"  uncovered hits: {report.uncovered_hits}",
        f"  overlap hits:   {report.max_overlap_hits}",
        f"  tested points:  {report.tested_points} of {report.sample_count} (seed {report.seed})",
    ])
