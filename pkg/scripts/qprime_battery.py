"""Run the quotient-smallness battery over a list of circle actions.

For each action the battery samples the quotient, measures cone points
and diameter, checks three-point extents of the quotient and of every
double branched cover over a pair of cone points, and prints a verdict
line.  With --json each full report is dumped as one JSON object per
line, suitable for jq or for archiving alongside the sampled matrices.

Usage:
    python3 scripts/qprime_battery.py [--samples 220] [--seed 5] [--tol 0.02] [--json]
"""

import argparse
import json
import sys

from x4circle.extent_lab import (
    IsometricActionSpec,
    check_condition_qprime,
    gamma_binary_dihedral,
    gamma_cyclic,
)
from x4circle.serialize import dumps_canonical, encode_qprime_report

BATTERY = [
    ("hopf", (1, 1), None),
    ("football-3", (1, 3), None),
    ("hopf/Z3", (1, 1), gamma_cyclic(3)),
    ("hopf/Z4", (1, 1), gamma_cyclic(4)),
    ("hopf/D2*", (1, 1), gamma_binary_dihedral(2)),
    ("hopf/D3*", (1, 1), gamma_binary_dihedral(3)),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=220)
    parser.add_argument("--seed", type=int, default=5)
    parser.add_argument("--tol", type=float, default=0.02)
    parser.add_argument("--json", action="store_true", help="one report object per line")
    args = parser.parse_args()

    failures = 0
    for name, weights, gamma in BATTERY:
        kwargs = {} if gamma is None else {"gamma": gamma}
        spec = IsometricActionSpec(
            weights=weights, samples=args.samples, seed=args.seed, **kwargs
        )
        report = check_condition_qprime(spec, tol=args.tol)
        if args.json:
            payload = {"name": name, "report": encode_qprime_report(report)}
            sys.stdout.write(dumps_canonical(payload))
            continue
        verdict = "pass" if report.all_passed else "FAIL"
        applicable = [c for c in report.checks if c.applicable]
        worst = min((c.margin for c in applicable), default=float("nan"))
        print(
            f"{name:<12} cones={report.cone_points} "
            f"checks={len(applicable)} worst_margin={worst:+.5f} {verdict}"
        )
        if not report.all_passed:
            failures += 1
            for item in applicable:
                if not item.passed:
                    print(f"  failed: {item.name} margin={item.margin:+.5f}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
