"""Study double-branched-cover statistics across sampling resolutions.

Builds the quotient of a binary dihedral action at a ladder of sample
counts, takes the double cover branched over two of its cone points at
each rung, and reports how the certified statistics (diameter and
three-point extent of the cover) drift between consecutive rungs.  The
drift column is the evidence that the glued metric is converging rather
than depending on the mesh.

With --export DIR the cover distance matrix at each rung is written in
the binary matrix format next to a small JSON sidecar with the
certificate, so later runs can reload them without resampling.

Usage:
    python3 scripts/cover_resolution.py [--ladder 150,300,600] [--seed 42]
        [--m 3] [--tol 0.05] [--export DIR]
"""

import argparse
import json
import pathlib

from x4circle.extent_lab import (
    IsometricActionSpec,
    double_branched_cover,
    extent,
    gamma_binary_dihedral,
    sample_quotient,
    write_distance_matrix,
)


def branch_pair(space, labels=("singular:0", "singular:1")):
    marks = {m.label: m.index for m in space.finite_isotropy_marks()}
    return marks[labels[0]], marks[labels[1]]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ladder", default="150,300,600")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--m", type=int, default=3, help="binary dihedral order parameter")
    parser.add_argument("--tol", type=float, default=0.05)
    parser.add_argument("--export", type=pathlib.Path, default=None)
    args = parser.parse_args()

    ladder = [int(tok) for tok in args.ladder.split(",")]
    gamma = gamma_binary_dihedral(args.m)

    header = f"{'N':>6} {'diam':>9} {'xt3':>9} {'drift':>9} {'cert':>6}"
    print(header)
    print("-" * len(header))
    for n in ladder:
        spec = IsometricActionSpec(weights=(1, 1), gamma=gamma, samples=n, seed=args.seed)
        base = sample_quotient(spec)
        cover = double_branched_cover(base, branch_pair(base), tol=args.tol)
        cert = cover.certificate
        xt3 = extent(cover, 3).value
        print(
            f"{n:>6d} {cover.diameter():>9.5f} {xt3:>9.5f} "
            f"{cert.drift:>9.6f} {'ok' if cert.passed else 'FAIL':>6}"
        )
        if args.export is not None:
            args.export.mkdir(parents=True, exist_ok=True)
            stem = args.export / f"cover_m{args.m}_n{n}_s{args.seed}"
            write_distance_matrix(stem.with_suffix(".x4ext1"), cover.dist)
            sidecar = {
                "samples": n,
                "seed": args.seed,
                "m": args.m,
                "drift": cert.drift,
                "passed": cert.passed,
                "diameter": cover.diameter(),
                "xt3": xt3,
            }
            stem.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n")
            print(f"       wrote {stem}.x4ext1")


if __name__ == "__main__":
    main()
