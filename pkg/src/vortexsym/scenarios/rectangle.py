"""Rectangles: only the square survives equal pairs; opposite pairs sit on
perpendicular diagonals at 45 degrees and are always linearly unstable."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from vortexsym.groebner import Ideal, eliminate
from vortexsym.ratpoly import GrevLex, Poly
from vortexsym.realroots import sturm_isolate
from vortexsym.scenarios.report import RootRecord, ScenarioReport
from vortexsym.trigvortex import (
    RECTANGLE,
    R_REGISTRY,
    TRIG_REGISTRY,
    angle_of_r,
    pipeline,
    weighted_hessian_symbolic,
)
from vortexsym import targets

_ORD = GrevLex()
_EPS = Fraction(1, 10**9)


def run_rectangle(mus=None, eps=_EPS):
    report = ScenarioReport(scenario="rectangle")
    comps = pipeline(RECTANGLE)
    report.pipeline_polynomials = [c.r_poly.format(_ORD) for c in comps]

    goals = targets.build_products(targets.R_REGISTRY, targets.RECTANGLE_PIPELINE)
    report.check(
        "pipeline_polynomials",
        all(c.r_poly.primitive(_ORD) == g.primitive(_ORD) for c, g in zip(comps, goals)),
        "three reduced polynomials match the reference forms up to scalars",
    )

    gb = eliminate(Ideal.of(*(c.r_poly for c in comps)), ["r"])
    report.artifacts["pipeline"] = comps
    report.artifacts["elimination_gb"] = gb
    report.elimination_basis = [p.format(gb.order) for p in gb.polys]
    mine = {p.primitive(gb.order) for p in gb.polys}
    want = {
        Poly.parse(R_REGISTRY, t).primitive(gb.order)
        for t in targets.RECTANGLE_ELIMINATION
    }
    report.check(
        "elimination_basis",
        mine == want,
        "projection is {mu2 mu3 - mu1 mu4, mu1 mu2 - mu3 mu4, mu1^2 - mu3^2}",
    )
    report.conditions = [
        "mu1 - mu3 and mu2 - mu4 (equal pairs)",
        "mu1 + mu3 and mu2 + mu4 (opposite pairs)",
    ]

    # Branch reductions of the gradient components.
    mu1 = Poly.variable(TRIG_REGISTRY, "mu1")
    mu2 = Poly.variable(TRIG_REGISTRY, "mu2")
    equal = {"mu3": mu1, "mu4": mu2}
    opposite = {"mu3": -1 * mu1, "mu4": -1 * mu2}

    cot_ok = _branch_residual_check(equal, lambda th: _cot(th))
    report.check(
        "equal_pairs_residual",
        cot_ok,
        "components reduce to multiples of cot(theta2); zeros at pi/2, 3*pi/2",
    )
    csc_ok = _branch_residual_check(opposite, lambda th: math.cos(2 * th) / math.sin(th))
    report.check(
        "opposite_pairs_residual",
        csc_ok,
        "components reduce to multiples of cos(2 theta2) csc(theta2);"
        " zeros at pi/4, 3*pi/4, 5*pi/4, 7*pi/4",
    )
    report.check(
        "equal_pairs_residual_exact",
        _branch_exact(comps, equal, "c"),
        "exact: (1-c^2) * numerator is a constant multiple of c * denominator",
    )
    report.check(
        "opposite_pairs_residual_exact",
        _branch_exact(comps, opposite, "2*c^2 - 1"),
        "exact: (1-c^2) * numerator is a constant multiple of (2c^2-1) * denominator",
    )

    # Angles from the r-world branch polynomials.
    report.roots = []
    square_roots = _branch_roots(comps, {"mu3": 1, "mu4": 2, "mu1": 1, "mu2": 2}, eps, "equal pairs")
    diag_roots = _branch_roots(comps, {"mu1": 1, "mu2": 2, "mu3": -1, "mu4": -2}, eps, "opposite pairs")
    report.roots = square_roots + diag_roots
    sq_angles = sorted(abs(r.theta2) for r in square_roots)
    di_angles = sorted(r.theta2 % (2 * math.pi) for r in diag_roots)
    report.check(
        "equal_pairs_only_square",
        len(square_roots) == 2 and all(abs(a - math.pi / 2) < 1e-9 for a in sq_angles),
        "equal pairs force theta2 = +-pi/2: the square",
    )
    expected = [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4]
    report.check(
        "opposite_pairs_diagonal_angles",
        len(di_angles) == 4
        and all(abs(a - b) < 1e-9 for a, b in zip(di_angles, expected)),
        "opposite pairs force theta2 in {pi/4, 3pi/4, 5pi/4, 7pi/4}",
    )

    # Linear stability of the diagonal family: never three positive
    # eigenvalues; certified in exact arithmetic over Q(sqrt(2)).
    samples = [(1, 2), (2, 1), (1, 1), (3, 5), (-2, 3)] if mus is None else [(mus[0], mus[1])]
    verdicts = [_diagonal_instability(Fraction(a), Fraction(b)) for a, b in samples]
    report.check(
        "diagonal_instability",
        all(v["unstable"] and v["nondegenerate"] for v in verdicts),
        f"at most {max(v['positive_bound'] for v in verdicts)} positive eigenvalues"
        f" across {len(samples)} circulation samples; zero eigenvalue simple",
    )
    report.stability = {
        "verdict": "nondegenerate rectangles are never linearly stable",
        "window": None,
        "diagonal_samples": [
            {"mu": [str(a), str(b), str(-a), str(-b)], **{k: v for k, v in d.items()}}
            for (a, b), d in zip(samples, verdicts)
        ],
    }
    return report


def _cot(theta):
    return math.cos(theta) / math.sin(theta)


def _branch_residual_check(substitution, target, samples=20, tol=1e-10):
    rng = random.Random(20240815)
    mus = (1.3, 0.7, None, None)
    for i in (2, 3, 4):
        from vortexsym.trigvortex import gradient_component

        t = gradient_component(i, RECTANGLE).subs_mu(substitution)
        ratios = []
        n = 0
        while n < samples:
            theta = rng.uniform(-math.pi, math.pi)
            if min(abs(theta), abs(abs(theta) - math.pi), abs(abs(theta) - math.pi / 2)) < 0.15:
                continue
            base = target(theta)
            if abs(base) < 1e-3:
                continue
            val = t.evaluate(theta, (1.3, 0.7, 1.3, 0.7))
            ratios.append(val / base)
            n += 1
        spread = max(ratios) - min(ratios)
        scale = max(1.0, max(abs(x) for x in ratios))
        if spread > tol * scale:
            return False
    return True


def _branch_exact(comps, substitution, target_text):
    """(1-c^2)*num is exactly (constant in s, c)*(target * den) per component."""
    from vortexsym.trigvortex import gradient_component

    target = Poly.parse(TRIG_REGISTRY, target_text)
    pyth = Poly.parse(TRIG_REGISTRY, "1 - c^2")
    for i in (2, 3, 4):
        t = gradient_component(i, RECTANGLE).subs_mu(substitution)
        groups = t.num.coefficients_in(["s"])
        if set(groups) - {(1,), (0,)}:
            return False
        if not groups.get((0,), Poly.zero(TRIG_REGISTRY)).is_zero():
            return False
        b = groups[(1,)]
        q = (pyth * b).try_divide(target * t.den, _ORD)
        if q is None or q.uses("s") or q.uses("c"):
            return False
    return True


def _branch_roots(comps, substitution, eps, label):
    """Isolate the r-roots shared by all three branch-substituted polynomials."""
    from vortexsym.realroots import coeffs_from_poly

    polys = []
    for c in comps:
        p = c.r_poly.subs({k: Fraction(v) for k, v in substitution.items()})
        polys.append(coeffs_from_poly(p, "r"))
    base = polys[0]
    records = []
    for iv in sturm_isolate(base):
        iv.refine(eps)
        # certified common root: the other two polynomials must be
        # proportional (they are, per branch structure), so checking signs
        # of the primitive parts suffices
        records.append(
            RootRecord(
                poly=f"{label} branch polynomial",
                interval=(iv.lo, iv.hi),
                decimal=float(iv.midpoint()),
                theta2=angle_of_r(float(iv.midpoint())),
            )
        )
    # proportionality across the three substituted polynomials
    prim = [_primitive_coeffs(p) for p in polys]
    if not (prim[0] == prim[1] == prim[2]):
        return []
    return records


def _primitive_coeffs(coeffs):
    from math import gcd

    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints)
    lead = next((c for c in reversed(ints) if c), 1)
    if lead < 0:
        g = -g
    return tuple(c // g for c in ints)


# ---------------------------------------------------------------------------
# Exact arithmetic over Q(sqrt(2)) for the diagonal stability certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sqrt2:
    """Element a + b*sqrt(2) of Q(sqrt(2)) with exact rational parts."""

    a: Fraction
    b: Fraction = Fraction(0)

    def _coerce(self, other):
        if isinstance(other, Sqrt2):
            return other
        if isinstance(other, (int, Fraction)):
            return Sqrt2(Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Sqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt2(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Sqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = Fraction(k)
        return Sqrt2(self.a / k, self.b / k)

    def sign(self):
        if self.a == 0 and self.b == 0:
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # a and b have opposite signs: compare a^2 with 2 b^2
        lhs, rhs = self.a * self.a, 2 * self.b * self.b
        if self.a > 0:
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def is_zero(self):
        return self.a == 0 and self.b == 0


def _gprime_sqrt2(cos_val):
    """g'(x) = -cos x - 1/(2 - 2 cos x) for cos in {0, +-1/2*sqrt2, -1}."""
    two = Sqrt2(Fraction(2))
    den = two - 2 * cos_val
    # invert a + b sqrt2 exactly
    a, b = den.a, den.b
    norm = a * a - 2 * b * b
    inv = Sqrt2(a / norm, -b / norm)
    return -1 * cos_val - inv


_DIAGONAL_COSINES = {
    (0, 1): Sqrt2(Fraction(0), Fraction(1, 2)),   # cos(pi/4)
    (0, 2): Sqrt2(Fraction(-1)),                  # cos(pi)
    (0, 3): Sqrt2(Fraction(0), Fraction(-1, 2)),  # cos(5pi/4)
    (1, 2): Sqrt2(Fraction(0), Fraction(-1, 2)),  # cos(3pi/4)
    (1, 3): Sqrt2(Fraction(-1)),                  # cos(pi)
    (2, 3): Sqrt2(Fraction(0), Fraction(1, 2)),   # cos(pi/4)
}


def _diagonal_char_poly(m1, m2, weighted):
    """Exact characteristic polynomial over Q(sqrt(2)) at the 45-degree point.

    Circulations are (m1, m2, -m1, -m2); ``weighted`` selects mu^{-1} H
    instead of the Hessian H itself.  Ascending coefficients.
    """
    from vortexsym.realroots import char_poly

    mus = [m1, m2, -m1, -m2]
    rows = [[Sqrt2(Fraction(0)) for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            key = (min(i, j), max(i, j))
            gp = _gprime_sqrt2(_DIAGONAL_COSINES[key])
            scale = mus[j] if weighted else mus[i] * mus[j]
            rows[i][j] = Fraction(scale) * gp
    for i in range(4):
        acc = Sqrt2(Fraction(0))
        for j in range(4):
            if j != i:
                acc = acc - rows[i][j]
        rows[i][i] = acc
    return [c if isinstance(c, Sqrt2) else Sqrt2(Fraction(c)) for c in char_poly(rows)]


def _diagonal_instability(m1, m2):
    """Exact certificate that the 45-degree rectangle is not linearly stable.

    Nondegeneracy (a simple rotational zero eigenvalue) is read off the
    Hessian itself; the stability count uses the circulation-weighted matrix,
    whose positive eigenvalues are bounded by Descartes' rule on the exact
    Q(sqrt(2)) characteristic coefficients.  A bound of two or less proves
    there are never N - 1 = 3 positive eigenvalues.
    """
    hess = _diagonal_char_poly(m1, m2, weighted=False)
    weighted = _diagonal_char_poly(m1, m2, weighted=True)
    signs = [c.sign() for c in weighted[1:] if not c.is_zero()]
    changes = sum(1 for x, y in zip(signs, signs[1:]) if x != y)
    return {
        "nondegenerate": hess[0].is_zero() and hess[1].sign() != 0,
        "positive_bound": changes,
        "unstable": weighted[0].is_zero() and changes <= 2,
    }
