"""Survey extents across a family of circle-action quotients.

Prints one row per action: the two-point and three-point extents, the
diameter, and the margin against the pi/3 smallness bound.  The row set
covers the weighted footballs, a few cyclic refinements, and the binary
dihedral quotients whose covers the smallness battery exercises.

Usage:
    python3 scripts/extent_survey.py [--samples 400] [--seed 0]
"""

import argparse
from math import pi

from x4circle.extent_lab import (
    IsometricActionSpec,
    SMALL_BOUND,
    extent,
    gamma_binary_dihedral,
    gamma_cyclic,
    sample_quotient,
)

SURVEY = [
    ("hopf", (1, 1), None),
    ("football-2", (1, 2), None),
    ("football-3", (1, 3), None),
    ("football-2:3", (2, 3), None),
    ("hopf/Z2", (1, 1), gamma_cyclic(2)),
    ("hopf/Z3", (1, 1), gamma_cyclic(3)),
    ("football-2/Z3", (1, 2), gamma_cyclic(3)),
    ("hopf/D2*", (1, 1), gamma_binary_dihedral(2)),
    ("hopf/D3*", (1, 1), gamma_binary_dihedral(3)),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=400)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    header = f"{'action':<16} {'cones':>5} {'xt2':>9} {'xt3':>9} {'diam':>9} {'margin':>9}"
    print(header)
    print("-" * len(header))
    for name, weights, gamma in SURVEY:
        kwargs = {} if gamma is None else {"gamma": gamma}
        space = sample_quotient(
            IsometricActionSpec(
                weights=weights, samples=args.samples, seed=args.seed, **kwargs
            )
        )
        xt2 = extent(space, 2).value
        xt3 = extent(space, 3).value
        cones = len(space.finite_isotropy_marks())
        margin = SMALL_BOUND - xt3
        print(
            f"{name:<16} {cones:>5d} {xt2:>9.5f} {xt3:>9.5f} "
            f"{space.diameter():>9.5f} {margin:>+9.5f}"
        )
    print(f"\nsmallness bound pi/3 = {pi / 3:.5f}; positive margin means small")


if __name__ == "__main__":
    main()
