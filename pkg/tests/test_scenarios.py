"""Scenario drivers: oracle outcomes, report structure, and property suites."""

import math
import random
from fractions import Fraction

import pytest

from vortexsym import targets
from vortexsym.groebner import Ideal, buchberger
from vortexsym.ratpoly import GrevLex, Poly
from vortexsym.realroots import RatInterval, sturm_isolate, coeffs_from_poly
from vortexsym.scenarios import check_f1_on_plane, run_kite, run_square
from vortexsym.scenarios.kite import count_configurations
from vortexsym.scenarios.trapezoid import (
    InconclusiveEnclosureError,
    a_from_b,
    f1_plane_identity_in_ideal,
)
from vortexsym.trigvortex import KITE, pipeline

_ORD = GrevLex()


def checks_by_name(report):
    return {c.name: c for c in report.oracle_checks}


class TestSquare:
    def test_all_oracles_pass(self, square_report):
        assert square_report.passed(), square_report.failures()

    def test_conditions(self, square_report):
        assert square_report.conditions == ["mu1 - mu3", "mu2 - mu4"]

    def test_never_stable_certificate_present(self, square_report):
        checks = checks_by_name(square_report)
        assert "never_linearly_stable" in checks
        assert square_report.stability["verdict"] == "never linearly stable"

    def test_uniform_eigencounts(self, square_report):
        counts = square_report.stability["eigencounts"]
        assert counts == {"positive": 1, "negative": 2, "zero": 1}
        assert sorted(square_report.stability["weighted_eigenvalues"]) == sorted(
            ["0/1", "-1/2", "-1/2", "2/1"]
        )

    def test_degenerate_sample(self):
        report = run_square(mus=(3, 2, 3, 2))
        assert report.passed()
        assert report.stability["eigencounts"]["zero"] == 2  # the 2:3 ratio

    def test_document_shape(self, square_report):
        doc = square_report.to_document()
        assert set(doc) == {
            "scenario",
            "pipeline_polynomials",
            "elimination_basis",
            "conditions",
            "roots",
            "stability",
            "oracle_checks",
        }


class TestKite:
    def test_all_oracles_pass(self, kite_report):
        assert kite_report.passed(), kite_report.failures()

    def test_elimination_is_equal_offaxis_pair(self, kite_report):
        assert kite_report.elimination_basis == ["mu2 - mu4"]

    def test_uniform_circulations_give_six_kites(self, kite_report):
        assert len(kite_report.roots) == 6
        angles = sorted(round(abs(r.theta2), 6) for r in kite_report.roots)
        expected = sorted(
            round(x, 6)
            for x in (math.pi / 3, math.pi / 2, 2 * math.pi / 3) * 2
        )
        assert angles == expected

    def test_window_endpoints(self, kite_report):
        window = kite_report.stability["special_angle"]["window"]
        assert abs(window["lower"]["decimal"] - (-0.335544)) < 1e-5
        assert window["upper"]["exact"] == "-1/3"
        assert window["lower"]["included"] and not window["upper"]["included"]

    def test_requires_matching_pair(self):
        with pytest.raises(ValueError):
            run_kite(mus=(1, 2, 1, 3))
        with pytest.raises(ValueError):
            run_kite(mus=(1, 0, 1, 0))

    def test_root_count_parity_over_random_circulations(self):
        # the configuration count is even and at most six, across many samples
        rng = random.Random(20240810)
        comps = pipeline(KITE)
        factor = comps[2].r_poly.primitive(_ORD)
        eps = Fraction(1, 10**6)
        for _ in range(100):
            mu1 = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
            mu2 = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
            mu3 = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
            if 0 in (mu1, mu2, mu3) or 2 * mu1 + mu2 == 0:
                continue
            roots = count_configurations(factor, (mu1, mu2, mu3, mu2), eps)
            assert len(roots) % 2 == 0
            assert len(roots) <= 6


class TestRectangle:
    def test_all_oracles_pass(self, rectangle_report):
        assert rectangle_report.passed(), rectangle_report.failures()

    def test_square_and_diagonal_angles(self, rectangle_report):
        angles = sorted(round(r.theta2 % (2 * math.pi), 6) for r in rectangle_report.roots)
        expected = sorted(
            round(x, 6)
            for x in (
                math.pi / 2,
                3 * math.pi / 2,
                math.pi / 4,
                3 * math.pi / 4,
                5 * math.pi / 4,
                7 * math.pi / 4,
            )
        )
        assert angles == expected

    def test_instability_verdict(self, rectangle_report):
        assert "never" in rectangle_report.stability["verdict"]


class TestTrapezoid:
    def test_all_oracles_pass(self, trapezoid_report):
        assert trapezoid_report.passed(), trapezoid_report.failures()

    def test_expected_checks_present(self, trapezoid_report):
        names = set(checks_by_name(trapezoid_report))
        assert {
            "pipeline_polynomials",
            "elimination_basis_exact",
            "elimination_ideal_equality",
            "f6_factorisation",
            "parametric_remainder",
            "ab_ideal_basis",
            "b_quintic_roots",
            "a_values",
            "quintic_full_split",
            "cofactor_inertia",
            "cofactor_numerics",
            "linear_coefficients",
            "annihilator_basis",
            "hermite_signature",
            "line_count",
            "table_of_lines",
            "angle_projection_ideal",
            "angle_polynomial",
            "angle_roots",
            "plane_pairing",
            "unique_true_trapezoid",
        } <= names

    def test_nine_basis_elements(self, trapezoid_report):
        assert len(trapezoid_report.elimination_basis) == 9

    def test_six_angle_roots_with_thetas(self, trapezoid_report):
        assert len(trapezoid_report.roots) == 6
        for r in trapezoid_report.roots:
            assert r.width < 1e-8
            assert abs(r.theta2 - math.atan2(2 * r.decimal, r.decimal**2 - 1)) < 1e-12

    def test_true_trapezoid_angle(self, trapezoid_report):
        assert abs(trapezoid_report.stability["true_trapezoid_theta2"] - 0.687197) < 1e-5


@pytest.fixture(scope="module")
def gb_ab():
    from vortexsym.ratpoly import lex

    coeffs = [Poly.parse(targets.AB_REGISTRY, t) for t in targets.REMAINDER_COEFFS]
    return buchberger(Ideal.of(*coeffs), lex(targets.AB_REGISTRY))


class TestReferenceBasis:
    def test_reference_elements_are_integer_primitive(self):
        # the stated basis elements carry no hidden rational content
        for f in targets.f_basis():
            content, _ = f.content_strip(_ORD)
            assert abs(content) == 1

    def test_random_combinations_reduce_to_zero(self, trapezoid_report):
        gb = trapezoid_report.artifacts["elimination_gb"]
        rng = random.Random(64)
        reg = gb.registry
        fs = [f.map_to(reg) for f in targets.f_basis()]
        for _ in range(5):
            combo = Poly.zero(reg)
            for f in rng.sample(fs, 3):
                mono = [0] * len(reg)
                mono[rng.randrange(1, 5)] = rng.randrange(2)
                h = Poly(reg, {tuple(mono): Fraction(rng.randint(-3, 3), rng.randint(1, 2))})
                combo = combo + h * f
            assert gb.contains(combo)


class TestPlaneChecks:
    def test_symbolic_identity(self, gb_ab):
        assert f1_plane_identity_in_ideal(gb_ab)

    def test_plane_enclosures_pass(self, gb_ab):
        # each computed plane family satisfies the vanishing certificate
        quint = coeffs_from_poly(Poly.parse(targets.AB_REGISTRY, targets.B_QUINTIC), "b")
        for iv in sturm_isolate(quint):
            iv.refine(Fraction(1, 10**12))
            b_iv = RatInterval(iv.lo, iv.hi)
            a_lo, a_hi = a_from_b(iv.lo), a_from_b(iv.hi)
            a_iv = RatInterval(min(a_lo, a_hi), max(a_lo, a_hi))
            alpha = -1 * b_iv
            beta = -1 * a_iv
            assert check_f1_on_plane(alpha, beta, gb_ab=gb_ab)

    def test_generic_plane_fails(self, gb_ab):
        assert not check_f1_on_plane(1, 1, gb_ab=gb_ab)
        assert not check_f1_on_plane(Fraction(1, 2), Fraction(-2), gb_ab=gb_ab)

    def test_inconclusive_raises_without_ideal(self):
        wide = RatInterval(Fraction(-1, 100), Fraction(1, 100))
        with pytest.raises(InconclusiveEnclosureError):
            check_f1_on_plane(wide, RatInterval(Fraction(0)), gb_ab=None)


class TestSolutionSetAnnihilation:
    def test_kite_solutions_kill_all_pipeline_polynomials(self):
        # on the mu2 = mu4 solution set, every isolated radius annihilates
        # all three reduced polynomials: the third vanishes identically and
        # the other two are proportional
        rng = random.Random(7)
        comps = pipeline(KITE)
        checked = 0
        while checked < 50:
            mu1 = Fraction(rng.randint(-40, 40), rng.randint(1, 10))
            mu2 = Fraction(rng.randint(-40, 40), rng.randint(1, 10))
            mu3 = Fraction(rng.randint(-40, 40), rng.randint(1, 10))
            if 0 in (mu1, mu2, mu3):
                continue
            values = {"mu1": mu1, "mu2": mu2, "mu3": mu3, "mu4": mu2}
            specialised = [c.r_poly.subs(values) for c in comps]
            assert specialised[1].is_zero()
            p0 = specialised[0].primitive(_ORD)
            p2 = specialised[2].primitive(_ORD)
            if specialised[0].is_zero():
                continue
            assert p0 == p2
            checked += 1
