"""Gradient components, trig reduction pipeline, and Hessian structure."""

import math
import random
from fractions import Fraction

import pytest

from vortexsym import targets
from vortexsym.ratpoly import GrevLex, Poly, VarRegistry
from vortexsym.trigvortex import (
    KITE,
    MU_REGISTRY,
    R_REGISTRY,
    RECTANGLE,
    SQUARE,
    TRAPEZOID3,
    TRIG_REGISTRY,
    CollisionError,
    Configuration,
    SymmetryScenario,
    angle_of_r,
    char_poly_in,
    cheb_cos,
    cheb_sin_factor,
    gradient,
    gradient_component,
    half_angle_polynomialize,
    hessian,
    hessian_exact,
    hessian_symbolic,
    pipeline,
    potential,
    reduce_component,
    s_reduce,
    strip_collision_factors,
    weighted_gradient_sum,
    weighted_hessian,
    weighted_hessian_symbolic,
    TrigRational,
)

ORD = GrevLex()


def T(text):
    return Poly.parse(TRIG_REGISTRY, text)


def proportional(p, q):
    return p.primitive(ORD) == q.primitive(ORD)


class TestChebyshev:
    def test_triple_angle(self):
        assert cheb_cos(3) == T("4*c^3 - 3*c")
        assert cheb_sin_factor(3) == T("4*c^2 - 1")

    def test_matches_numeric(self):
        for k in range(6):
            x = 0.7345
            assert abs(cheb_cos(k).evaluate({"s": 0.0, "c": math.cos(x), "mu1": 0, "mu2": 0, "mu3": 0, "mu4": 0}) - math.cos(k * x)) < 1e-12


class TestGradientComponents:
    def test_square_components_are_half_differences(self):
        mu = [T("mu1"), T("mu2"), T("mu3"), T("mu4")]
        expected = [
            (mu[3] - mu[1]) * Fraction(1, 2),
            (mu[0] - mu[2]) * Fraction(1, 2),
            (mu[1] - mu[3]) * Fraction(1, 2),
            (mu[2] - mu[0]) * Fraction(1, 2),
        ]
        for i in range(1, 5):
            t = gradient_component(i, SQUARE)
            assert t.num == s_reduce(expected[i - 1] * t.den)

    def test_kite_component3_proportional_to_displayed_form(self):
        t = gradient_component(3, KITE)
        core, factors = strip_collision_factors(t.num, KITE)
        assert proportional(core, T("mu2 - mu4") * T("1 + 2*c"))
        assert any(f == T("s") for f, _ in factors)

    def test_rectangle_component2_displayed_form(self):
        t = gradient_component(2, RECTANGLE)
        core, _ = strip_collision_factors(t.num, RECTANGLE)
        target = T("mu1 + mu3") * T("c") + T("mu1 - mu3") * T("2*c^2 - 1")
        assert proportional(core, target)

    def test_weighted_dependency_identity(self):
        for scenario in (SQUARE, KITE, RECTANGLE, TRAPEZOID3):
            assert weighted_gradient_sum(scenario).is_zero()

    def test_component_index_validation(self):
        with pytest.raises(ValueError):
            gradient_component(5, KITE)


class TestStripping:
    def test_kite_component2_strips_sin_cubed(self):
        t = gradient_component(2, KITE)
        core, factors = strip_collision_factors(t.num, KITE)
        product = Poly.constant(TRIG_REGISTRY, 1)
        for f, mult in factors:
            product = product * f**mult
        assert product == s_reduce(T("s") ** 3)
        expected = T("2*mu1 - 2*mu3 - 2*mu1*c - 2*mu3*c + 6*mu4*c - 4*mu1*c^2 + 4*mu3*c^2 - 8*mu4*c^3")
        assert proportional(core, expected)

    def test_r_world_strip(self):
        p = Poly.parse(R_REGISTRY, "r^2") * Poly.parse(R_REGISTRY, "r + 1")
        stripped, factors = strip_collision_factors(p, KITE)
        assert stripped == Poly.parse(R_REGISTRY, "r + 1")
        assert factors == [(Poly.parse(R_REGISTRY, "r"), 2)]

    def test_trapezoid_strips_collinear_factor(self):
        comp = reduce_component(4, TRAPEZOID3)
        assert any(f == Poly.parse(R_REGISTRY, "-1 + 3*r^2") for f, _ in comp.r_factors)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            strip_collision_factors(Poly.zero(R_REGISTRY), KITE)


class TestHalfAngle:
    def test_constant_passthrough(self):
        t = TrigRational(Poly.constant(TRIG_REGISTRY, 1))
        assert half_angle_polynomialize(t) == Poly.constant(R_REGISTRY, 1)

    def test_kite_component3_end_to_end(self):
        comp = reduce_component(3, KITE)
        target = Poly.parse(R_REGISTRY, "mu2 - mu4") * Poly.parse(R_REGISTRY, "-1 + 3*r^2")
        assert proportional(comp.r_poly, target)

    def test_rectangle_component2_end_to_end(self):
        comp = reduce_component(2, RECTANGLE)
        target = Poly.parse(R_REGISTRY, "-mu3 - 3*mu1*r^2 + 3*mu3*r^2 + mu1*r^4")
        assert proportional(comp.r_poly, target)

    def test_substitution_identity_on_samples(self):
        # c^k s^e (1+r^2)^(N-k-e)-clearing must agree with evaluating the
        # trig polynomial at the angle corresponding to r
        rng = random.Random(8)
        for _ in range(50):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                mono = (rng.randint(0, 1), rng.randint(0, 3), rng.randint(0, 1), 0, 0, 0)
                terms[mono] = Fraction(rng.randint(-4, 4))
            p = Poly(TRIG_REGISTRY, terms)
            if p.is_zero():
                continue
            rp = half_angle_polynomialize(p)
            theta = rng.uniform(0.1, math.pi - 0.1)
            rv = 1 / math.tan(theta / 2)
            si = TRIG_REGISTRY.index("s")
            ci = TRIG_REGISTRY.index("c")
            clear = max(m[si] + m[ci] for m in p.terms)
            lhs = p.evaluate({"s": math.sin(theta), "c": math.cos(theta), "mu1": 2.0, "mu2": 1.0, "mu3": 1.0, "mu4": 1.0})
            rhs = rp.evaluate({"r": rv, "mu1": 2.0, "mu2": 1.0, "mu3": 1.0, "mu4": 1.0}) / (1 + rv * rv) ** clear
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


class TestPipelines:
    @pytest.mark.parametrize(
        "scenario,target",
        [
            (KITE, targets.KITE_PIPELINE),
            (RECTANGLE, targets.RECTANGLE_PIPELINE),
            (TRAPEZOID3, targets.TRAPEZOID_PIPELINE),
        ],
        ids=["kite", "rectangle", "trapezoid"],
    )
    def test_pipeline_matches_reference(self, scenario, target):
        comps = pipeline(scenario)
        goals = targets.build_products(targets.R_REGISTRY, target)
        for comp, goal in zip(comps, goals):
            assert proportional(comp.r_poly, goal)

    def test_square_has_no_pipeline(self):
        with pytest.raises(ValueError):
            pipeline(SQUARE)

    def test_evaluation_consistency(self):
        # at random angles and circulations the reduced polynomial, times the
        # stripped factors and cleared denominators, recovers the original
        # trig component value
        rng = random.Random(99)
        for scenario in (KITE, RECTANGLE, TRAPEZOID3):
            comps = pipeline(scenario)
            count = 0
            while count < 34:
                theta2 = rng.uniform(-math.pi, math.pi)
                if min(abs(theta2), abs(theta2 - math.pi), abs(theta2 + math.pi)) < 0.2:
                    continue
                if scenario is TRAPEZOID3 and min(
                    abs(abs(theta2) - 2 * math.pi / 3), abs(abs(theta2) - math.pi / 2)
                ) < 0.2:
                    continue
                mus = [rng.uniform(0.5, 2.0) * rng.choice([-1, 1]) for _ in range(4)]
                for comp in comps:
                    direct = comp.trig.evaluate(theta2, mus)
                    rebuilt = comp.reconstruct_value(theta2, mus)
                    assert abs(direct - rebuilt) < 1e-9 * max(1.0, abs(direct), abs(rebuilt))
                count += 1


class TestAngleOfR:
    def test_unit(self):
        assert abs(angle_of_r(1.0) - math.pi / 2) < 1e-12

    def test_reference_values(self):
        assert abs(angle_of_r(2.79493) - 0.687197) < 1e-5
        assert abs(angle_of_r(0.199167) - 2.74840) < 1e-5
        assert abs(angle_of_r(0.375563) - 2.42306) < 1e-5

    def test_inverts_cotangent_half_angle(self):
        for theta in (0.3, 1.2, 2.9, -0.7, -2.4):
            r = 1 / math.tan(theta / 2)
            assert abs(angle_of_r(r) - theta) < 1e-12


class TestHessian:
    def test_annihilates_uniform_rotation(self):
        rng = random.Random(3)
        for _ in range(20):
            thetas = sorted(rng.uniform(0, 2 * math.pi) for _ in range(4))
            if min(b - a for a, b in zip(thetas, thetas[1:])) < 0.1:
                continue
            mus = tuple(rng.uniform(0.5, 2.0) * rng.choice([-1, 1]) for _ in range(4))
            config = Configuration(tuple(thetas), mus)
            h = hessian(config)
            for i in range(4):
                assert abs(h[i][0] + h[i][1] + h[i][2] + h[i][3]) <= 1e-12
                for j in range(4):
                    assert h[i][j] == h[j][i]

    def test_matches_finite_differences(self):
        rng = random.Random(17)
        checked = 0
        while checked < 20:
            thetas = sorted(rng.uniform(0, 2 * math.pi) for _ in range(4))
            if min(b - a for a, b in zip(thetas, thetas[1:])) < 0.3:
                continue
            if thetas[0] + 2 * math.pi - thetas[3] < 0.3:
                continue
            mus = tuple(rng.uniform(0.5, 2.0) * rng.choice([-1, 1]) for _ in range(4))
            config = Configuration(tuple(thetas), mus)
            h = hessian(config)
            step = 1e-5
            for j in range(4):
                up = list(thetas)
                dn = list(thetas)
                up[j] += step
                dn[j] -= step
                fd = [
                    (gu - gd) / (2 * step)
                    for gu, gd in zip(gradient(up, mus), gradient(dn, mus))
                ]
                for i in range(4):
                    scale = max(1.0, abs(h[i][j]))
                    assert abs(h[i][j] - fd[i]) < 1e-6 * scale
            checked += 1

    def test_square_exact_eigenvalues_at_samples(self):
        # eigenvalues 0, 2 m1 m2, (2 m1 m2 - 3 m1^2)/2, (2 m1 m2 - 3 m2^2)/2
        from vortexsym.realroots import char_poly, eval_at

        samples = [(1, 1), (3, 2), (2, 3), (5, 1), (1, 5), (-1, 2), (2, -1), (7, 3), (4, 9), (1, -1)]
        for m1, m2 in samples:
            m1, m2 = Fraction(m1), Fraction(m2)
            h = hessian_exact(SQUARE, (m1, m2, m1, m2))
            p = char_poly(h.rows)
            for lam in (
                Fraction(0),
                2 * m1 * m2,
                Fraction(1, 2) * (-3 * m1 * m1 + 2 * m1 * m2),
                Fraction(1, 2) * (2 * m1 * m2 - 3 * m2 * m2),
            ):
                assert eval_at(p, lam) == 0

    def test_square_symbolic_factorisation(self):
        reg = VarRegistry(["lam", "m1", "m2"])
        msym = VarRegistry(["m1", "m2"])
        m1, m2 = Poly.variable(msym, "m1"), Poly.variable(msym, "m2")
        rows = hessian_symbolic(SQUARE, [m1, m2, m1, m2])
        cp = char_poly_in(rows, reg, "lam")
        lam = Poly.variable(reg, "lam")
        factors = [
            lam,
            lam - Poly.parse(reg, "2*m1*m2"),
            lam - Poly.parse(reg, "-3/2*m1^2 + m1*m2"),
            lam - Poly.parse(reg, "m1*m2 - 3/2*m2^2"),
        ]
        prod = Poly.constant(reg, 1)
        for f in factors:
            prod = prod * f
        assert cp == prod

    def test_square_weighted_symbolic_factorisation(self):
        reg = VarRegistry(["lam", "m1", "m2"])
        msym = VarRegistry(["m1", "m2"])
        m1, m2 = Poly.variable(msym, "m1"), Poly.variable(msym, "m2")
        rows = weighted_hessian_symbolic(SQUARE, [m1, m2, m1, m2])
        cp = char_poly_in(rows, reg, "lam")
        lam = Poly.variable(reg, "lam")
        factors = [
            lam,
            lam - Poly.parse(reg, "m1 + m2"),
            lam - Poly.parse(reg, "m1 - 3/2*m2"),
            lam - Poly.parse(reg, "-3/2*m1 + m2"),
        ]
        prod = Poly.constant(reg, 1)
        for f in factors:
            prod = prod * f
        assert cp == prod

    def test_square_weighted_uniform_circulations(self):
        from vortexsym.realroots import char_poly, eval_at

        config = Configuration(
            (0.0, math.pi / 2, math.pi, 3 * math.pi / 2), (1.0, 1.0, 1.0, 1.0)
        )
        m = weighted_hessian(config)
        # exact counterpart with unit circulations: constant polynomial entries
        rows = weighted_hessian_symbolic(
            SQUARE,
            [Poly.constant(MU_REGISTRY, 1)] * 4,
        )
        exact_rows = [[Fraction(e.terms.get((0, 0, 0, 0), Fraction(0))) for e in row] for row in rows]
        cp = char_poly(exact_rows)
        for lam in (Fraction(0), Fraction(-1, 2), Fraction(2)):
            assert eval_at(cp, lam) == 0
        # numeric agreement
        for i in range(4):
            for j in range(4):
                assert abs(m[i][j] - float(exact_rows[i][j])) < 1e-12

    def test_kite_special_angle_weighted_factorisation(self):
        # weighted Hessian at theta2 = 2*pi/3 with mu1 = mu2 = mu4:
        # eigenvalues 0, (3*m3 - m1)/2, and a quadratic pair
        reg = VarRegistry(["lam", "m1", "m3"])
        msym = VarRegistry(["m1", "m3"])
        m1, m3 = Poly.variable(msym, "m1"), Poly.variable(msym, "m3")
        rows = weighted_hessian_symbolic(KITE, [m1, m1, m3, m1], cos_theta2=Fraction(-1, 2))
        cp = char_poly_in(rows, reg, "lam")
        lam = Poly.variable(reg, "lam")
        quad = (
            lam * lam
            - Poly.parse(reg, "7/4*m1 + 3/4*m3") * lam
            - Poly.parse(reg, "3/8") * Poly.parse(reg, "3*m1 + m3") * Poly.parse(reg, "m1 + 3*m3")
        )
        prod = lam * (lam - Poly.parse(reg, "-1/2*m1 + 3/2*m3")) * quad
        assert cp == prod

    def test_kite_special_angle_unweighted_factorisation(self):
        # Hessian spectrum at theta2 = 2*pi/3, mu1 = mu2 = mu4: eigenvalues
        # 0, -m1(m1 - 3 m3)/2, and a quadratic pair with rational symmetric
        # functions
        reg = VarRegistry(["lam", "m1", "m3"])
        msym = VarRegistry(["m1", "m3"])
        m1, m3 = Poly.variable(msym, "m1"), Poly.variable(msym, "m3")
        rows = hessian_symbolic(KITE, [m1, m1, m3, m1], cos_theta2=Fraction(-1, 2))
        cp = char_poly_in(rows, reg, "lam")
        lam = Poly.variable(reg, "lam")
        lam2 = Poly.parse(reg, "-1/2*m1^2 + 3/2*m1*m3")
        quad = (
            lam * lam
            - Poly.parse(reg, "1/2") * Poly.parse(reg, "m1") * Poly.parse(reg, "6*m3 - m1") * lam
            - Poly.parse(reg, "3/2*m1^2*m3") * Poly.parse(reg, "m1 + 3*m3")
        )
        assert cp == lam * (lam - lam2) * quad

    def test_kite_special_angle_exact_rational_entries(self):
        h = hessian_exact(KITE, (1, 1, 3, 1), cos_theta2=Fraction(-1, 2))
        from vortexsym.realroots import char_poly, eval_at

        p = char_poly(h.rows)
        assert eval_at(p, Fraction(0)) == 0
        assert eval_at(p, Fraction(-1, 2) * (1 - 9)) == 0  # -m1(m1-3m3)/2 = 4

    def test_collision_rejected(self):
        with pytest.raises(CollisionError):
            Configuration((0.0, 0.0, 1.0, 2.0), (1, 1, 1, 1))
        with pytest.raises(ValueError):
            Configuration((0.0, 1.0, 2.0, 3.0), (1, 0, 1, 1))

    def test_potential_gradient_consistency(self):
        # numeric gradient matches finite differences of the potential
        rng = random.Random(5)
        thetas = (0.0, 1.1, 2.9, 4.4)
        mus = (1.0, -0.7, 1.3, 0.9)
        g = gradient(thetas, mus)
        for i in range(4):
            up = list(thetas)
            dn = list(thetas)
            up[i] += 1e-6
            dn[i] -= 1e-6
            fd = (potential(up, mus) - potential(dn, mus)) / 2e-6
            assert abs(g[i] - fd) < 1e-6
        del rng


class TestScenarioDefinitions:
    def test_angles(self):
        assert SQUARE.angles(0.0) == (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
        assert KITE.angles(0.5) == (0.0, 0.5, math.pi, -0.5)
        t = RECTANGLE.angles(0.8)
        assert abs(t[3] - (0.8 + math.pi)) < 1e-15
        assert TRAPEZOID3.angles(0.3) == pytest.approx((0.0, 0.3, 0.6, 0.9))

    def test_validation(self):
        with pytest.raises(ValueError):
            SymmetryScenario("bad", (1, 0, 0, 0), (Fraction(0),) * 4)
        with pytest.raises(ValueError):
            SymmetryScenario("bad", (0, 1, 0, 0), (Fraction(0), Fraction(1, 3), Fraction(0), Fraction(0)))
        with pytest.raises(ValueError):
            SymmetryScenario(
                "bad", (0, 1, 0, 0), (Fraction(0), Fraction(1, 2), Fraction(0), Fraction(0))
            )
