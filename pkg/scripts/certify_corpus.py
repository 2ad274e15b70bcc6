# scripts/certify_corpus.py

import argparse
import math
import time

import pandas as pd

from analytics.corpus import named_polytopes, section_corpus
from common.errors import HypothesisFailed
from common.parameters import CORPUS_SEED, QUICK_SECTION_COUNTS, SECTION_COUNTS, SECTION_FAMILIES
from core.certify import certify_surface, certify_volume
from core.polytope import polytope_volume
from core.subdivision import build_simplices, covering_check

# --- Configuration ---
COVERING_SAMPLES = 10_000


def run_section(n: int, N: int, index: int, P) -> dict:
    """Hypothesis, both certificates and the covering check for one section."""
    row = {"n": n, "N": N, "index": index, "volume": polytope_volume(P)}
    try:
        volume_cert = certify_volume(P)
        surface_cert = certify_surface(P)
    except HypothesisFailed:
        row.update({"hypothesis": False, "volume_pass": False, "surface_pass": False})
        return row

    covering = covering_check(P, build_simplices(P), COVERING_SAMPLES, seed=index)
    row.update({
        "hypothesis": True,
        "volume_pass": volume_cert.passed,
        "volume_slack": volume_cert.total - volume_cert.claimed_bound,
        "surface_pass": surface_cert.passed,
        "surface_slack": surface_cert.total - surface_cert.claimed_bound,
        "covering_pass": covering.passed,
        "flags": len(volume_cert.simplices),
    })
    return row


def run_named(seed: int) -> pd.DataFrame:
    """Volume certificate, plus the surface one for n = 2, 3, for each named polytope."""
    rows = []
    for name, P in named_polytopes(seed):
        volume_cert = certify_volume(P)
        surface = certify_surface(P).passed if P.dim in (2, 3) else None
        rows.append({"name": name, "n": P.dim, "volume": polytope_volume(P),
                     "volume_slack": volume_cert.total - volume_cert.claimed_bound,
                     "volume_pass": volume_cert.passed, "surface_pass": surface})
    return pd.DataFrame(rows)


def summarize(rows: pd.DataFrame) -> pd.DataFrame:
    """Count, smallest slack above each bound and pass rates per (n, N)."""
    return rows.groupby(["n", "N"]).agg(
        count=("index", "size"),
        min_volume_slack=("volume_slack", "min"),
        min_surface_slack=("surface_slack", "min"),
        volume_pass_rate=("volume_pass", "mean"),
        surface_pass_rate=("surface_pass", "mean"),
        covering_pass_rate=("covering_pass", "mean"),
        mean_flags=("flags", "mean"),
    )


def main():
    parser = argparse.ArgumentParser(description="Certify the seeded cube-section corpus.")
    parser.add_argument("--full", action="store_true", help="acceptance-size corpus instead of the quick one")
    parser.add_argument("--seed", type=int, default=CORPUS_SEED)
    args = parser.parse_args()

    counts = SECTION_COUNTS if args.full else QUICK_SECTION_COUNTS
    started = time.perf_counter()
    rows = []
    for n, sizes in SECTION_FAMILIES.items():
        print(f"Certifying {counts[n]} sections of dimension {n} (N in {sizes})...")
        for N, index, P in section_corpus(n, sizes, counts[n], args.seed + n):
            rows.append(run_section(n, N, index, P))

    frame = pd.DataFrame(rows)
    print("\n--- Corpus Summary ---")
    print(summarize(frame).to_string())
    print("----------------------\n")

    named = run_named(args.seed)
    print("--- Named Polytopes ---")
    print(named.to_string(index=False))
    print("-----------------------\n")
    named_ok = bool(named["volume_pass"].all()) and named["surface_pass"].dropna().astype(bool).all()

    passed = frame[["volume_pass", "surface_pass", "covering_pass"]].fillna(False).astype(bool).all(axis=1)
    failures = frame[~passed]
    elapsed = time.perf_counter() - started
    if failures.empty and named_ok:
        print(f"✅ All {len(frame)} sections and {len(named)} named polytopes certified in {elapsed:.1f}s.")
    elif failures.empty:
        print("❌ A named polytope failed its certificate.")
    else:
        print(f"❌ {len(failures)} of {len(frame)} sections failed:")
        print(failures.to_string(index=False))
    smallest = frame["volume"].min()
    print(f"Smallest section volume: {smallest:.12g} (bound for n = 2 is 4, for n = 3 is 8)")
    return 0 if failures.empty and named_ok and not math.isnan(smallest) else 1


if __name__ == "__main__":
    raise SystemExit(main())
