# cli/commands.py
"""
One function per CLI command. Each takes a RunConfig and returns the exit code:
0 pass, 1 certified failure, 2 input error, 3 unsupported dimension.
Data goes to stdout or --out; logs go to stderr.
"""

import json
import math

import numpy as np

from analytics.corpus import random_orthoscheme_pair, random_section, random_unit_vectors
from analytics.lemmas import obtuse_pair_bound, orthoscheme_contraction_check, sin_ratio_monotonicity_check
from common import config
from common.errors import HypothesisFailed, InputError
from common.logger import log
from common.models import Orthoscheme, RunConfig
from common.parameters import (CONTRACTION_DIMS, CONTRACTION_POINTS, CURVE_STEPS, CURVE_T_MAX, CURVE_T_MIN,
                               OBTUSE_MAX_DIM)
from common.tolerances import EPS_VARIATIONAL
from core import file_writer
from core.certify import certify_surface, certify_volume, check_distance_hypothesis
from core.file_reader import FileReader, read_polytope
from core.geometry import make_generator
from core.measures import curve_frame
from core.subdivision import build_simplices, covering_check

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


def _emit(cfg: RunConfig, document, text: str):
    """JSON goes to --out when given; otherwise stdout gets JSON or text per --format."""
    if cfg.output_path:
        file_writer.write_json(document, cfg.output_path)
    if cfg.format == "json" and not cfg.output_path:
        file_writer.write_json(document)
    elif cfg.format != "json":
        print(text)


def _samples(cfg: RunConfig) -> int:
    return cfg.samples or config.DEFAULT_SAMPLES


def _require_input(cfg: RunConfig) -> str:
    if not cfg.input_path:
        raise InputError(f"'{cfg.command}' needs an input file")
    return cfg.input_path


def cmd_check(cfg: RunConfig) -> int:
    P = read_polytope(_require_input(cfg))
    report = check_distance_hypothesis(P, cfg.mode)
    _emit(cfg, file_writer.hypothesis_to_dict(report), file_writer.format_hypothesis(report))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_certify(cfg: RunConfig) -> int:
    kind = cfg.options.get("kind", "volume")
    P = read_polytope(_require_input(cfg))
    if cfg.mode != "vaaler":
        log.warning(f"Certificates are issued under the vaaler hypothesis; ignoring mode '{cfg.mode}'")

    try:
        if kind == "volume":
            cert = certify_volume(P, sample_count=cfg.samples, seed=cfg.seed)
        else:
            cert = certify_surface(P, sample_count=cfg.samples, seed=cfg.seed,
                                   experimental=cfg.options.get("experimental", False))
    except HypothesisFailed as e:
        log.error(f"Hypothesis failed: {e}")
        _emit(cfg, {"kind": kind, "pass": False, "hypothesis": file_writer.hypothesis_to_dict(e.report)},
              file_writer.format_hypothesis(e.report))
        return EXIT_FAIL

    _emit(cfg, file_writer.certificate_to_dict(cert), file_writer.format_certificate(cert))
    return EXIT_FAIL if cert.passed is False else EXIT_PASS


def cmd_section(cfg: RunConfig) -> int:
    shape = cfg.options.get("random")
    if shape:
        n, N = shape
        P = random_section(n, N, cfg.seed)
    else:
        P = read_polytope(_require_input(cfg))

    document = file_writer.polytope_to_dict(P)
    _emit(cfg, document, json.dumps(document, indent=2))
    return EXIT_PASS


def cmd_subdivide(cfg: RunConfig) -> int:
    P = read_polytope(_require_input(cfg))
    triples = build_simplices(P)
    report = covering_check(P, triples, _samples(cfg), cfg.seed)

    if cfg.output_path:
        file_writer.write_json(file_writer.subdivision_to_list(triples), cfg.output_path)
    if cfg.options.get("off"):
        file_writer.write_off(triples, cfg.options["off"])

    if cfg.format == "json":
        document = {"covering": file_writer.covering_to_dict(report)}
        if not cfg.output_path:
            document["triples"] = file_writer.subdivision_to_list(triples)
        file_writer.write_json(document)
    else:
        print(f"Subdivision: {len(triples)} flags, {sum(t.degenerate for t in triples)} degenerate")
        print(file_writer.format_covering(report))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_curve(cfg: RunConfig) -> int:
    c = cfg.options.get("c", math.pi / 4)
    t_min = cfg.options.get("t_min", CURVE_T_MIN)
    t_max = cfg.options.get("t_max", CURVE_T_MAX)
    steps = cfg.options.get("steps", CURVE_STEPS)
    if not 0.0 < t_min <= t_max < math.pi / 2 or steps < 1:
        raise InputError(f"Need 0 < t_min <= t_max < pi/2 and steps >= 1, got {t_min}, {t_max}, {steps}")

    grid = np.linspace(t_min, t_max, steps) if steps > 1 else np.array([t_min])
    frame = curve_frame(c, grid)
    report = sin_ratio_monotonicity_check(c, grid)
    disagreement = float((frame["area_integral"] - frame["area_girard"]).abs().max())
    if disagreement > EPS_VARIATIONAL:
        log.warning(f"Quadrature and Girard areas differ by {disagreement:.3g}")

    file_writer.write_curve_csv(frame, report, cfg.output_path)
    return EXIT_PASS if report.passed and disagreement <= EPS_VARIATIONAL else EXIT_FAIL


def _lemma_obtuse(cfg: RunConfig) -> dict:
    if cfg.input_path:
        vectors = FileReader(cfg.input_path).read_arrays("vectors")["vectors"]
        best, ok = obtuse_pair_bound(vectors)
        return {"lemma": "obtuse", "families": 1, "failures": int(not ok), "max_dot": best,
                "threshold": -1.0 / (len(vectors) - 1)}

    max_dim = cfg.options.get("max_dim", OBTUSE_MAX_DIM)
    if max_dim > config.MAX_DIM:
        raise InputError(f"--max-dim {max_dim} exceeds VAALER_MAX_DIM={config.MAX_DIM}")
    families = _samples(cfg)
    rng = make_generator(cfg.seed)
    failures = 0
    for trial in range(families):
        n = int(rng.integers(1, max_dim + 1))
        k = int(rng.integers(1, n + 1))
        _, ok = obtuse_pair_bound(random_unit_vectors(k + 1, n, seed=cfg.seed + trial + 1))
        failures += not ok
    return {"lemma": "obtuse", "families": families, "failures": failures}


def _lemma_contraction(cfg: RunConfig) -> dict:
    per_pair = cfg.options.get("points", CONTRACTION_POINTS)
    if cfg.input_path:
        arrays = FileReader(cfg.input_path).read_arrays("B", "C")
        pairs = [(Orthoscheme(arrays["B"], np.linalg.norm(np.diff(arrays["B"], axis=0), axis=1)),
                  Orthoscheme(arrays["C"], np.linalg.norm(np.diff(arrays["C"], axis=0), axis=1)))]
    else:
        dims = cfg.options.get("dims", CONTRACTION_DIMS)
        if max(dims) > config.MAX_DIM:
            raise InputError(f"--dims {max(dims)} exceeds VAALER_MAX_DIM={config.MAX_DIM}")
        pairs = [random_orthoscheme_pair(dims[i % len(dims)], seed=cfg.seed + 3 * i) for i in range(_samples(cfg))]

    failures = 0
    unmet = 0
    worst = -math.inf
    for i, (B, C) in enumerate(pairs):
        report = orthoscheme_contraction_check(B, C, per_pair, seed=cfg.seed + i)
        if report.status == "precondition_unmet":
            unmet += 1
            continue
        failures += not report.passed
        worst = max(worst, report.max_excess)
    return {"lemma": "contraction", "pairs": len(pairs), "failures": failures, "precondition_unmet": unmet,
            "max_excess": worst if math.isfinite(worst) else None}


def cmd_lemma(cfg: RunConfig) -> int:
    lemma = cfg.options.get("lemma")
    if lemma == "obtuse":
        summary = _lemma_obtuse(cfg)
    elif lemma == "contraction":
        summary = _lemma_contraction(cfg)
    else:
        raise InputError(f"Unknown lemma '{lemma}'. Must be 'obtuse' or 'contraction'.")

    passed = summary["failures"] == 0 and not summary.get("precondition_unmet")
    summary["pass"] = passed
    text = "\n".join(f"{key}: {value:.12g}" if isinstance(value, float) else f"{key}: {value}"
                     for key, value in summary.items())
    _emit(cfg, summary, text)
    return EXIT_PASS if passed else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "certify": cmd_certify,
    "section": cmd_section,
    "subdivide": cmd_subdivide,
    "curve": cmd_curve,
    "lemma": cmd_lemma,
}
