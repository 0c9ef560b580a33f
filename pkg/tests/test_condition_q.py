"""Tests for the three-part smallness battery on sampled quotients."""

from math import pi

import pytest

from x4circle.extent_lab import (
    IsometricActionSpec,
    check_condition_qprime,
    gamma_binary_dihedral,
    gamma_cyclic,
    sample_quotient,
)


@pytest.fixture(scope="module")
def dihedral_report():
    spec = IsometricActionSpec(
        weights=(1, 1), gamma=gamma_binary_dihedral(3), samples=220, seed=5
    )
    return check_condition_qprime(spec, tol=0.02)


class TestDihedralBattery:
    def test_all_checks_pass(self, dihedral_report):
        assert dihedral_report.all_passed

    def test_three_cone_points(self, dihedral_report):
        assert dihedral_report.cone_points == 3

    def test_diameter(self, dihedral_report):
        assert dihedral_report.diameter == pytest.approx(pi / 4, abs=0.02)

    def test_quotient_smallness_value(self, dihedral_report):
        item = next(c for c in dihedral_report.checks if c.name == "quotient-small")
        assert item.applicable and item.passed
        # xt3 of the order-12 dihedral quotient is 2*pi/9
        assert item.margin == pytest.approx(pi / 3 - 2 * pi / 9, abs=0.01)

    def test_cover_items_enumerate_cone_pairs(self, dihedral_report):
        names = {c.name for c in dihedral_report.checks if c.name.startswith("cover-")}
        assert names == {
            "cover-small:z2=0|singular:0",
            "cover-small:z2=0|singular:1",
            "cover-small:singular:0|singular:1",
        }
        for c in dihedral_report.checks:
            if c.name.startswith("cover-"):
                assert c.applicable and c.passed
                assert "drift" in c.details

    def test_mixed_order_cover_value(self, dihedral_report):
        # branching over the order-3 and an order-2 point yields a football
        # with a flat total angle budget: xt3 = 5*pi/18, resolution-exact
        item = next(
            c
            for c in dihedral_report.checks
            if c.name == "cover-small:z2=0|singular:0"
        )
        assert item.margin == pytest.approx(pi / 3 - 5 * pi / 18, abs=1e-6)

    def test_three_cone_diameter_item(self, dihedral_report):
        item = next(
            c for c in dihedral_report.checks if c.name == "three-cone-diameter"
        )
        assert item.applicable and item.passed
        # the bound pi/4 is attained exactly by this quotient
        assert item.margin == pytest.approx(0.0, abs=1e-9)


class TestApplicability:
    def test_free_action_has_vacuous_cover_items(self):
        report = check_condition_qprime(
            IsometricActionSpec(weights=(1, 1), samples=120, seed=3), tol=0.02
        )
        assert report.cone_points == 0
        assert not any(c.name.startswith("cover-") for c in report.checks)
        three = next(c for c in report.checks if c.name == "three-cone-diameter")
        assert not three.applicable
        assert report.all_passed

    def test_two_cone_points_skip_diameter_bound(self):
        # cyclic:3 on the diagonal action leaves two order-3 cone points
        report = check_condition_qprime(
            IsometricActionSpec(
                weights=(1, 1), gamma=gamma_cyclic(3), samples=150, seed=4
            ),
            tol=0.02,
        )
        assert report.cone_points == 2
        three = next(c for c in report.checks if c.name == "three-cone-diameter")
        assert not three.applicable
        names = [c.name for c in report.checks if c.name.startswith("cover-")]
        assert len(names) == 1
        assert report.all_passed

    def test_accepts_presampled_space(self):
        spec = IsometricActionSpec(weights=(1, 2), samples=120, seed=6)
        space = sample_quotient(spec)
        report = check_condition_qprime(space, tol=0.02)
        # one finite cone point: no pair to branch over
        assert report.cone_points == 1
        assert not any(c.name.startswith("cover-") for c in report.checks)
        assert report.all_passed
