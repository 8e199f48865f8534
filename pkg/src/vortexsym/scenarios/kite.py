"""Kites: equal circulations off the symmetry axis, counting, and stability.

The reflection axis holds vortices 1 and 3; vortices 2 and 4 mirror each
other at angles +-theta2.  Eliminating the position variable forces
mu2 = mu4; the surviving even degree-six polynomial in r bounds the number
of kite angles by six for any circulation choice.  At theta2 = 120 degrees
the gradient further forces mu1 = mu2 = mu4 and a genuine linear-stability
window in mu1/mu3 opens up, whose endpoints are certified by root isolation
of an exact boundary polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction

from vortexsym.groebner import Ideal, buchberger, eliminate
from vortexsym.ratpoly import GrevLex, Poly, VarRegistry
from vortexsym.realroots import (
    RatInterval,
    coeffs_from_poly,
    eval_at,
    eval_interval,
    sturm_isolate,
)
from vortexsym.scenarios.report import RootRecord, ScenarioReport, rat_str
from vortexsym.trigvortex import (
    KITE,
    R_REGISTRY,
    TRIG_REGISTRY,
    angle_of_r,
    char_poly_in,
    gradient_component,
    pipeline,
    weighted_hessian_symbolic,
)
from vortexsym import targets

_ORD = GrevLex()
_EPS = Fraction(1, 10**9)


def run_kite(mus=None, eps=_EPS):
    """Full kite analysis for circulations ``mus`` (defaults to all ones)."""
    report = ScenarioReport(scenario="kite")
    comps = pipeline(KITE)
    report.pipeline_polynomials = [c.r_poly.format(_ORD) for c in comps]

    goals = targets.build_products(targets.R_REGISTRY, targets.KITE_PIPELINE)
    report.check(
        "pipeline_polynomials",
        all(c.r_poly.primitive(_ORD) == g.primitive(_ORD) for c, g in zip(comps, goals)),
        "three reduced polynomials match the reference forms up to scalars",
    )

    gb = eliminate(Ideal.of(*(c.r_poly for c in comps)), ["r"])
    report.artifacts["pipeline"] = comps
    report.artifacts["elimination_gb"] = gb
    report.elimination_basis = [p.format(gb.order) for p in gb.polys]
    report.conditions = report.elimination_basis
    report.check(
        "elimination_basis",
        [p.primitive(gb.order) for p in gb.polys]
        == [Poly.parse(R_REGISTRY, "mu2 - mu4")],
        "projection onto circulation space is {mu2 - mu4}",
    )

    # the even configuration-counting factor (V_theta4 side, mu4 eliminated)
    config_factor = comps[2].r_poly.primitive(_ORD)
    report.check(
        "configuration_factor",
        config_factor == Poly.parse(R_REGISTRY, targets.KITE_CONFIG_FACTOR).primitive(_ORD),
        "degree-six even factor matches the reference form",
    )

    if mus is None:
        mus = (Fraction(1), Fraction(1), Fraction(1), Fraction(1))
    mus = tuple(Fraction(m) for m in mus)
    if any(m == 0 for m in mus):
        raise ValueError("circulation parameters must be nonzero")
    if mus[1] != mus[3]:
        raise ValueError("kite circulations require mu2 == mu4")

    counted = count_configurations(config_factor, mus, eps)
    report.roots = counted
    even_ok = len(counted) % 2 == 0 and len(counted) <= 6
    report.check(
        "root_count_even_and_bounded",
        even_ok,
        f"{len(counted)} kite angles for mu = {tuple(map(str, mus))}",
    )

    if mus == (1, 1, 1, 1):
        uni = _specialize(config_factor, mus)
        even_part = uni[::2]
        report.check(
            "uniform_circulation_exact_roots",
            eval_at(uni, Fraction(1)) == 0
            and all(c == 0 for c in uni[1::2])
            and eval_at(even_part, Fraction(1, 3)) == 0,
            "r = 1 and r^2 = 1/3 are exact roots at mu = (1,1,1,1)",
        )

    special = special_angle_analysis(report, eps)
    report.stability = {
        "verdict": "stable kites exist only at theta2 = 2*pi/3 with mu1 = mu2 = mu4",
        "special_angle": special,
    }
    return report


def _specialize(poly, mus):
    values = {f"mu{i+1}": Fraction(mus[i]) for i in range(4)}
    sub = poly.subs(values)
    return coeffs_from_poly(sub, "r")


def count_configurations(config_factor, mus, eps):
    """Isolate the real kite radii for given circulations, as root records."""
    uni = _specialize(config_factor, mus)
    records = []
    if len(uni) <= 1:
        return records
    for iv in sturm_isolate(uni):
        iv.refine(eps)
        mid = float(iv.midpoint())
        records.append(
            RootRecord(
                poly="kite configuration factor",
                interval=(iv.lo, iv.hi),
                decimal=mid,
                theta2=angle_of_r(mid),
            )
        )
    return records


def special_angle_analysis(report, eps):
    """The theta2 = 2*pi/3 kite: forced circulations and stability window."""
    # gradient at cos(theta2) = -1/2: mu_i * component_i = w_i / sqrt(3) with
    # w = (mu1(mu4-mu2), mu2(mu1-mu4), 0, mu4(mu2-mu1))
    half = Fraction(-1, 2)
    w_expected = [
        Poly.parse(TRIG_REGISTRY, "mu1*mu4 - mu1*mu2"),
        Poly.parse(TRIG_REGISTRY, "mu1*mu2 - mu2*mu4"),
        Poly.zero(TRIG_REGISTRY),
        Poly.parse(TRIG_REGISTRY, "mu2*mu4 - mu1*mu4"),
    ]
    display_ok = True
    for i in range(1, 5):
        t = gradient_component(i, KITE)
        num = t.num.subs({"c": half})
        den_val = t.den.subs({"c": half})
        groups = num.coefficients_in(["s"])
        s_free = groups.get((0,), Poly.zero(TRIG_REGISTRY))
        s_lin = groups.get((1,), Poly.zero(TRIG_REGISTRY))
        # value = sqrt(3)/2 * s_lin / den; times mu_i it must equal
        # w_i / sqrt(3), i.e. 3 * mu_i * s_lin = 2 * w_i * den
        mu_i = Poly.variable(TRIG_REGISTRY, f"mu{i}")
        if not s_free.is_zero():
            display_ok = False
        if 3 * mu_i * s_lin != 2 * w_expected[i - 1] * den_val:
            display_ok = False
    report.check(
        "special_angle_gradient",
        display_ok,
        "grad V at 2*pi/3 is (mu1(mu4-mu2), mu2(mu1-mu4), 0, mu4(mu2-mu1))/sqrt(3)",
    )

    # nonzero circulations annihilate the gradient only when all three agree
    mu_reg = VarRegistry(["mu1", "mu2", "mu4"])
    residuals = [
        Poly.parse(mu_reg, "mu4 - mu2"),
        Poly.parse(mu_reg, "mu1 - mu4"),
        Poly.parse(mu_reg, "mu2 - mu1"),
    ]
    forced = buchberger(Ideal.of(*residuals), GrevLex())
    forced_set = {p.primitive(forced.order).format(forced.order) for p in forced.polys}
    report.check(
        "special_angle_conditions",
        forced_set == {"mu1 - mu4", "mu2 - mu4"},
        "mu1 = mu2 = mu4 forced at theta2 = 2*pi/3",
    )

    # stability window in t = mu1/mu3 (mu3 > 0): weighted Hessian spectrum is
    # 0, (3 - t)/2, and the roots of lam^2 - S lam + P
    treg = VarRegistry(["t"])
    lreg = VarRegistry(["lam", "t"])
    t = Poly.variable(treg, "t")
    one = Poly.constant(treg, 1)
    rows = weighted_hessian_symbolic(KITE, [t, t, one, t], cos_theta2=Fraction(-1, 2))
    cp = char_poly_in(rows, lreg, "lam")
    lam = Poly.variable(lreg, "lam")
    cp = cp.divide_exact(lam)
    lam2 = Poly.parse(lreg, "3/2 - 1/2*t")
    cubic = cp
    quad = cubic.divide_exact(lam - lam2)
    groups = quad.coefficients_in(["lam"])
    s_poly = -groups[(1,)]
    p_poly = groups[(0,)]
    disc_poly = s_poly * s_poly - 4 * p_poly
    report.check(
        "special_angle_weighted_spectrum",
        groups.get((2,)) == Poly.constant(lreg, 1)
        and disc_poly.map_to(treg).primitive(_ORD)
        == Poly.parse(treg, "121*t^2 + 282*t + 81").primitive(_ORD),
        "quadratic pair discriminant is (121 t^2 + 282 t + 81)/16",
    )

    window = _stability_window(
        lam2.map_to(treg), s_poly.map_to(treg), p_poly.map_to(treg), eps
    )
    ok_lower = abs(window["lower_decimal"] - targets.KITE_WINDOW_LOWER) < targets.NUMERIC_TOL
    ok_upper = window["upper_exact"] == Fraction(-1, 3)
    report.check(
        "stability_window",
        ok_lower and ok_upper and window["unique"],
        f"mu1/mu3 in [{window['lower_decimal']:.6f}, -1/3) for mu3 > 0",
    )
    return {
        "theta2": 2 * math.pi / 3,
        "conditions": ["mu1 - mu4", "mu2 - mu4"],
        "parameter": "mu1/mu3",
        "requires": "mu3 > 0",
        "window": {
            "lower": {
                "decimal": window["lower_decimal"],
                "interval": [rat_str(window["lower_interval"].lo), rat_str(window["lower_interval"].hi)],
                "included": window["lower_included"],
                "defining_polynomial": "121*t^2 + 282*t + 81",
            },
            "upper": {
                "decimal": float(window["upper_exact"]),
                "exact": rat_str(window["upper_exact"]),
                "included": window["upper_included"],
            },
        },
    }


def _quad_positive_count(s, p, d):
    """Positive roots (with multiplicity) of lam^2 - s lam + p, disc d."""
    if d < 0:
        return 0
    if d == 0:
        return 2 if s > 0 else 0
    if p > 0:
        return 2 if s > 0 else 0
    if p < 0:
        return 1
    return 1 if s > 0 else 0


def _stability_window(lam2, s_poly, p_poly, eps):
    """Certified window of t where all three nonzero eigenvalues are positive.

    Boundary candidates are the roots of lam2, P, and the discriminant;
    sampling each complementary interval with exact arithmetic finds the
    stable range, and the boundary enclosures give its endpoints.
    """
    disc_poly = s_poly * s_poly - 4 * p_poly
    boundary = lam2 * p_poly * disc_poly
    coeffs = coeffs_from_poly(boundary, "t")
    intervals = sturm_isolate(coeffs)
    for iv in intervals:
        iv.refine(Fraction(1, 10**12))
    bounds = sorted(iv.midpoint() for iv in intervals)

    lam2_c = coeffs_from_poly(lam2, "t")
    s_c = coeffs_from_poly(s_poly, "t")
    p_c = coeffs_from_poly(p_poly, "t")
    d_c = coeffs_from_poly(disc_poly, "t")

    def count(tv):
        c = 1 if eval_at(lam2_c, tv) > 0 else 0
        return c + _quad_positive_count(eval_at(s_c, tv), eval_at(p_c, tv), eval_at(d_c, tv))

    stable_gaps = []
    for i in range(len(bounds) + 1):
        left = bounds[i - 1] if i > 0 else None
        right = bounds[i] if i < len(bounds) else None
        if left is None:
            tv = bounds[0] - 1
        elif right is None:
            tv = bounds[-1] + 1
        else:
            tv = (left + right) / 2
        if count(tv) == 3:
            stable_gaps.append((left, right))

    unique = len(stable_gaps) == 1 and all(v is not None for v in stable_gaps[0])
    left, right = stable_gaps[0]
    lower_iv = next(iv for iv in intervals if iv.contains(left))
    upper_iv = next(iv for iv in intervals if iv.contains(right))
    lower_iv.refine(eps)
    upper_iv.refine(eps)

    # endpoint inclusion, decided exactly on the boundary enclosures
    s_at_lower = eval_interval(s_c, RatInterval(lower_iv.lo, lower_iv.hi))
    lam2_at_lower = eval_interval(lam2_c, RatInterval(lower_iv.lo, lower_iv.hi))
    lower_included = s_at_lower.is_positive() and lam2_at_lower.is_positive()
    upper_exact = (
        upper_iv.lo
        if upper_iv.exact
        else Fraction(-1, 3) if upper_iv.contains(Fraction(-1, 3)) and eval_at(p_c, Fraction(-1, 3)) == 0
        else None
    )
    return {
        "unique": unique,
        "lower_interval": RatInterval(lower_iv.lo, lower_iv.hi),
        "lower_decimal": float(lower_iv.midpoint()),
        "lower_included": lower_included,
        "upper_exact": upper_exact,
        "upper_included": False,  # an eigenvalue vanishes exactly there
    }
