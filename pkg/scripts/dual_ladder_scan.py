#!/usr/bin/env python3
"""Scan dual-set verdicts for a few weight sequences across spaces and duals.

Prints one verdict table per weight family, showing how the truncation-ladder
evidence separates summable, bounded, and divergent weights.

Usage: python3 scripts/dual_ladder_scan.py [--ladder 32,64,128,256]
"""

import argparse

import numpy as np

from seqcore import duals
from seqcore.types import BandSystem, ExponentSeq, FiniteSeq


def weight_families(n):
    k = np.arange(n)
    return (
        ("geometric 2^-k", FiniteSeq(0.5**k)),
        ("harmonic-squared 1/(k+1)^2", FiniteSeq(1.0 / (k + 1.0) ** 2)),
        ("constant ones", FiniteSeq(np.ones(n))),
        ("linear k+1", FiniteSeq(k + 1.0)),
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ladder", default="32,64,128,256")
    args = parser.parse_args()
    ladder = [int(v) for v in args.ladder.split(",")]
    n = max(ladder)

    sys = BandSystem.constant(1.0, 1.0, 1.0, n)
    p = ExponentSeq.constant(1.0, n)
    pairs = [(s, d) for s in ("s0", "sc", "sinf") for d in ("alpha", "beta", "gamma")]

    for label, a in weight_families(n):
        print(f"\nweights: {label}   (system r=s=alpha=1, p=1, ladder {ladder})")
        for space, dual in pairs:
            report = duals.dual_report(a, sys, p, space, dual, ladder)
            conds = " ".join(f"{c.cond_id}:{c.verdict[:4]}" for c in report.conditions)
            print(f"  {space:>4}.{dual:<5} -> {report.aggregate:<12} [{conds}]")


if __name__ == "__main__":
    main()
