# core/certify.py

import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from common.errors import HypothesisFailed, UnsupportedDimension
from common.logger import log
from common.models import (Certificate, Estimate, HypothesisEntry, HypothesisReport, LedgerEntry,
                           Polytope, SimplexTriple)
from common.tolerances import CERT_REL, EPS_HYPOTHESIS, MC_SIGMAS, OMEGA_SUM_TOL
from core.geometry import facet_volume, simplex_volume
from core.measures import solid_angle
from core.polytope import surface_area
from core.subdivision import build_simplices

# Gram entries are rounded to this many digits to key congruence classes of cones
GRAM_DIGITS = 9


def threshold(mode: str, k: int) -> float:
    """Required dist(0, aff F) for a face of codimension k."""
    if mode == "vaaler":
        return math.sqrt(k)
    if mode == "rogers":
        return math.sqrt(2.0 * k / (k + 1))
    raise ValueError(f"Unknown hypothesis mode '{mode}'. Must be 'vaaler' or 'rogers'.")


def check_distance_hypothesis(P: Polytope, mode: str = "vaaler") -> HypothesisReport:
    """One entry per proper face: distance of its affine span from the origin against tau(k)."""
    entries = []
    for face in P.faces:
        if face.codim == 0:
            continue
        tau = threshold(mode, face.codim)
        distance = float(np.linalg.norm(P.affine_feet[face.id]))
        entries.append(HypothesisEntry(face=face.id, codim=face.codim, distance=distance,
                                       threshold=tau, margin=distance - tau))

    passed = all(e.margin >= -EPS_HYPOTHESIS for e in entries)
    report = HypothesisReport(mode=mode, entries=entries, passed=passed)
    if passed:
        log.info(f"Hypothesis ({mode}) holds on {len(entries)} faces, min margin {report.min_margin:.6g}")
    else:
        failing = sum(e.margin < -EPS_HYPOTHESIS for e in entries)
        log.info(f"Hypothesis ({mode}) fails on {failing} of {len(entries)} faces, min margin {report.min_margin:.6g}")
    return report


def _require_hypothesis(P: Polytope) -> HypothesisReport:
    report = check_distance_hypothesis(P, "vaaler")
    if not report.passed:
        worst = min(report.entries, key=lambda e: e.margin)
        message = (f"Face {worst.face} (codim {worst.codim}) sits at distance {worst.distance:.12g} "
                   f"< {worst.threshold:.12g}")
        log.error(f"Certificate refused: {message}")
        raise HypothesisFailed(message, report)
    return report


def _unit_gram_key(triple: SimplexTriple) -> Tuple[float, ...]:
    gens = triple.a[1:]
    units = gens / np.linalg.norm(gens, axis=1)[:, None]
    gram = np.round(units @ units.T, GRAM_DIGITS) + 0.0
    return tuple(gram.ravel().tolist())


def cone_fractions(triples: List[SimplexTriple], sample_count: Optional[int] = None,
                   seed: int = 0) -> List[Estimate]:
    """
    omega(A) for every triple, 0 for degenerate ones.
    Exact in dimension <= 3. Above that, cones sharing the Gram matrix of their unit
    generators are congruent: if they all are, omega = 1/K exactly since the cones
    tile the sphere; otherwise one Monte Carlo estimate per class, streamed by the
    index of its first flag.
    """
    if not triples:
        return []
    n = triples[0].a.shape[1]
    origin = np.zeros((1, n))
    live = [i for i, t in enumerate(triples) if not t.degenerate]
    omegas = [Estimate(value=0.0) for _ in triples]

    if n <= 3:
        for i in live:
            omegas[i] = solid_angle(np.vstack([origin, triples[i].a[1:]]))
        return omegas

    classes: Dict[Tuple[float, ...], List[int]] = {}
    for i in live:
        classes.setdefault(_unit_gram_key(triples[i]), []).append(i)

    if len(classes) == 1:
        share = 1.0 / len(live)
        for i in live:
            omegas[i] = Estimate(value=share)
        return omegas

    log.warning(f"{len(classes)} cone classes in dimension {n}: solid angles by Monte Carlo")
    for members in classes.values():
        first = members[0]
        estimate = solid_angle(np.vstack([origin, triples[first].a[1:]]), sample_count, seed, stream=first)
        for i in members:
            omegas[i] = estimate
    return omegas


def _omega_sum(omegas: List[Estimate]) -> Tuple[float, float]:
    """Sum of omega and its tolerance; estimates shared by a class have correlated errors."""
    total = math.fsum(w.value for w in omegas)
    shared: Dict[int, Tuple[Estimate, int]] = {}
    for w in omegas:
        if not w.exact:
            est, count = shared.get(id(w), (w, 0))
            shared[id(w)] = (est, count + 1)
    sigma = math.sqrt(sum((count * est.standard_error) ** 2 for est, count in shared.values()))
    return total, OMEGA_SUM_TOL + MC_SIGMAS * sigma


def certify_volume(P: Polytope, sample_count: Optional[int] = None, seed: int = 0) -> Certificate:
    """
    Per-simplex ledger of vol A >= 2^n omega(A). Under the hypothesis the opposite facet of
    every A avoids the open unit ball, so vol(B_0(1) ∩ A) = omega(A) kappa_n and the
    simplex inequality is the cone identity rearranged.
    """
    hypothesis = _require_hypothesis(P)
    n = P.dim
    claimed = float(2 ** n)
    eps_cert = CERT_REL * claimed

    triples = build_simplices(P)
    omegas = cone_fractions(triples, sample_count, seed)

    # --- Ledger, in flag order ---
    ledger = []
    margins_ok = True
    for flag_id, (t, w) in enumerate(zip(triples, omegas)):
        if t.degenerate:
            ledger.append(LedgerEntry(flag=flag_id, volume=t.volume, omega=0.0, bound=0.0, margin=0.0,
                                      degenerate=True))
            continue
        bound = claimed * w.value
        margin = t.volume - bound
        allowance = eps_cert + MC_SIGMAS * claimed * w.standard_error
        margins_ok &= margin >= -allowance
        ledger.append(LedgerEntry(flag=flag_id, volume=t.volume, omega=w.value, bound=bound, margin=margin,
                                  omega_error=w.standard_error))

    total = math.fsum(e.volume for e in ledger if not e.degenerate)
    omega_sum, omega_tol = _omega_sum(omegas)
    omega_ok = abs(omega_sum - 1.0) <= omega_tol
    passed = hypothesis.passed and margins_ok and omega_ok and total >= claimed - eps_cert

    checks = {
        "omega_sum_ok": omega_ok,
        "omega_sum_tolerance": omega_tol,
        "monte_carlo": any(not w.exact for w in omegas),
        "degenerate": sum(e.degenerate for e in ledger),
    }
    if not omega_ok:
        log.warning(f"Solid angles sum to {omega_sum:.12g}, expected 1")
    log.info(f"Volume certificate: total {total:.12g} vs bound {claimed:.12g}, pass={passed}")
    return Certificate(kind="volume", mode="vaaler", dim=n, claimed_bound=claimed, total=total,
                       passed=passed, hypothesis=hypothesis, simplices=ledger, omega_sum=omega_sum,
                       checks=checks)


def certify_surface(P: Polytope, sample_count: Optional[int] = None, seed: int = 0,
                    experimental: bool = False) -> Certificate:
    """
    Per-simplex ledger of vol_{n-1} conv{a_1..a_n} >= n 2^n omega(A), summed over the
    boundary. Only n = 2, 3 carry a verdict; with experimental=True any dimension is
    evaluated and the certificate has passed = None.
    """
    n = P.dim
    if n not in (2, 3) and not experimental:
        raise UnsupportedDimension(f"Surface certificates exist for n = 2, 3 only, got n = {n}")

    hypothesis = _require_hypothesis(P)
    claimed = float(n * 2 ** n)
    eps_cert = CERT_REL * claimed

    triples = build_simplices(P)
    omegas = cone_fractions(triples, sample_count, seed)

    ledger = []
    margins_ok = True
    for flag_id, (t, w) in enumerate(zip(triples, omegas)):
        if t.degenerate:
            ledger.append(LedgerEntry(flag=flag_id, volume=t.volume, omega=0.0, bound=0.0, margin=0.0,
                                      degenerate=True, facet_area=0.0))
            continue
        area = facet_volume(t.a[1:])
        bound = claimed * w.value
        margin = area - bound
        allowance = eps_cert + MC_SIGMAS * claimed * w.standard_error
        margins_ok &= margin >= -allowance

        vol_b = simplex_volume(t.b)
        ratio_b = facet_volume(t.b[1:]) / vol_b if vol_b > 0.0 else None
        ledger.append(LedgerEntry(flag=flag_id, volume=t.volume, omega=w.value, bound=bound, margin=margin,
                                  omega_error=w.standard_error, facet_area=area,
                                  facet_ratio_a=area / t.volume, facet_ratio_b=ratio_b))

    total = math.fsum(e.facet_area for e in ledger if not e.degenerate)
    boundary = surface_area(P)
    boundary_ok = abs(total - boundary) <= CERT_REL * boundary
    omega_sum, omega_tol = _omega_sum(omegas)
    omega_ok = abs(omega_sum - 1.0) <= omega_tol

    checks = {
        "omega_sum_ok": omega_ok,
        "omega_sum_tolerance": omega_tol,
        "surface_area": boundary,
        "surface_match": boundary_ok,
        "monte_carlo": any(not w.exact for w in omegas),
        "degenerate": sum(e.degenerate for e in ledger),
    }
    if not boundary_ok:
        log.warning(f"Facet areas sum to {total:.12g} but the boundary measures {boundary:.12g}")

    if experimental and n not in (2, 3):
        log.warning(f"Surface evaluation in dimension {n} is experimental and carries no verdict")
        return Certificate(kind="surface-experimental", mode="vaaler", dim=n, claimed_bound=claimed,
                           total=total, passed=None, hypothesis=hypothesis, simplices=ledger,
                           omega_sum=omega_sum, checks=checks)

    passed = (hypothesis.passed and margins_ok and omega_ok and boundary_ok
              and total >= claimed - eps_cert)
    log.info(f"Surface certificate: total {total:.12g} vs bound {claimed:.12g}, pass={passed}")
    return Certificate(kind="surface", mode="vaaler", dim=n, claimed_bound=claimed, total=total,
                       passed=passed, hypothesis=hypothesis, simplices=ledger, omega_sum=omega_sum,
                       checks=checks)
