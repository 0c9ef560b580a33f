"""Smallness battery for sampled circle-action quotients.

A positively curved quotient passes when the quotient itself is small
(third extent at most pi/3), every double branched cover over a pair of
finite-isotropy marked points is small, and, when exactly three such
marked points exist, the diameter is at most pi/4.  Each item reports a
margin (positive means passed with room) so near-threshold geometries are
visible in the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import pi

from .actions import IsometricActionSpec
from .cover import double_branched_cover
from .extents import SMALL_BOUND, extent, is_small
from .spaces import SampledMetricSpace, regenerate, sample_quotient


@dataclass
class CheckItem:
    name: str
    applicable: bool
    passed: bool
    margin: float
    details: str = ""


@dataclass
class ConditionQPrimeReport:
    checks: list[CheckItem] = field(default_factory=list)
    cone_points: int = 0
    diameter: float = 0.0
    tol: float = 0.02

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)


def check_condition_qprime(
    target: IsometricActionSpec | SampledMetricSpace,
    tol: float = 0.02,
) -> ConditionQPrimeReport:
    """Run the full smallness battery on an action spec or a sampled space."""
    if isinstance(target, IsometricActionSpec):
        space = sample_quotient(target)
    else:
        space = target
    report = ConditionQPrimeReport(tol=tol)

    small, margin = is_small(space, tol)
    report.checks.append(
        CheckItem(
            name="quotient-small",
            applicable=True,
            passed=small,
            margin=margin,
            details=f"xt3 = {SMALL_BOUND - margin:.6f}",
        )
    )

    finite = space.finite_isotropy_marks()
    report.cone_points = len(finite)
    high_base = None
    if len(finite) >= 2 and space.kind == "quotient":
        high_base = regenerate(space, 2 * space.requested_samples)
    for a, b in combinations(finite, 2):
        cover = double_branched_cover(
            space, (a.index, b.index), tol=tol, high_base=high_base
        )
        c_small, c_margin = is_small(cover, tol)
        report.checks.append(
            CheckItem(
                name=f"cover-small:{a.label}|{b.label}",
                applicable=True,
                passed=c_small,
                margin=c_margin,
                details=(
                    f"xt3 = {SMALL_BOUND - c_margin:.6f}, drift = "
                    f"{cover.certificate.drift:.6f}"
                ),
            )
        )

    xt2 = extent(space, 2)
    report.diameter = xt2.value
    three = len(finite) == 3
    report.checks.append(
        CheckItem(
            name="three-cone-diameter",
            applicable=three,
            passed=(xt2.value <= pi / 4.0 + tol) if three else True,
            margin=pi / 4.0 - xt2.value,
            details=f"diameter = {xt2.value:.6f}",
        )
    )
    return report
