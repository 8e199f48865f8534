"""Symbolic gradient and Hessian of the vortex interaction potential.

One dominant vortex sits at the origin and four infinitesimal vortices with
circulation parameters mu1..mu4 sit on the unit circle at angles theta1..4.
Critical points of

    V(theta) = -sum_{i<j} mu_i mu_j [cos(theta_i - theta_j)
                                     + 1/2 log(2 - 2 cos(theta_i - theta_j))]

give the symmetric relative equilibria.  This module builds the scaled
gradient components (1/mu_i) dV/dtheta_i symbolically for a symmetry
scenario that leaves only theta2 free, expands multiple angles into
polynomials in s = sin(theta2), c = cos(theta2) via Chebyshev recurrences,
and reduces each component to a polynomial in the half-angle variable r with

    sin(theta2) = 2r / (1 + r^2),     cos(theta2) = (r^2 - 1) / (1 + r^2),

discarding denominators and known collision factors along the way.  The
cosine convention here is the reflected one (r = cot(theta2/2)), so angles
are recovered as theta2 = atan2(2r, r^2 - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from vortexsym.ratpoly import GrevLex, Poly, VarRegistry
from vortexsym.realroots import SymMatrix

TRIG_REGISTRY = VarRegistry(["s", "c", "mu1", "mu2", "mu3", "mu4"])
R_REGISTRY = VarRegistry(["r", "mu1", "mu2", "mu3", "mu4"])
MU_REGISTRY = VarRegistry(["mu1", "mu2", "mu3", "mu4"])

_ORDER = GrevLex()

HALF = Fraction(1, 2)


class CollisionError(ValueError):
    """Two vortices coincide (an angle difference is a multiple of 2*pi)."""


@dataclass(frozen=True)
class Configuration:
    """Concrete positions and circulations: theta_i in radians, mu_i != 0."""

    thetas: tuple
    mus: tuple

    def __post_init__(self):
        if len(self.thetas) != 4 or len(self.mus) != 4:
            raise ValueError("a configuration has four angles and four circulations")
        for m in self.mus:
            if m == 0:
                raise ValueError("circulation parameters must be nonzero")
        for i in range(4):
            for j in range(i + 1, 4):
                d = (self.thetas[i] - self.thetas[j]) % (2 * math.pi)
                if min(d, 2 * math.pi - d) < 1e-9:
                    raise CollisionError(f"vortices {i + 1} and {j + 1} collide")


@dataclass(frozen=True)
class SymmetryScenario:
    """theta_i = multiple_i * theta2 + offset_i * pi, with theta1 = 0.

    Only theta2 is ever free, so every angle difference is an integer
    multiple of theta2 plus a half-integer multiple of pi; the construction
    rejects anything else.
    """

    kind: str
    multiples: tuple
    offsets: tuple
    r_collision_factors: tuple = ()

    def __post_init__(self):
        if len(self.multiples) != 4 or len(self.offsets) != 4:
            raise ValueError("scenario needs four angle definitions")
        if self.multiples[0] != 0 or self.offsets[0] != 0:
            raise ValueError("theta1 is pinned to zero")
        for k, q in zip(self.multiples, self.offsets):
            if not isinstance(k, int):
                raise ValueError("angle multiples must be integers")
            if Fraction(q) * 2 % 1 != 0:
                raise ValueError("angle offsets must be multiples of pi/2")
            if k != 0 and Fraction(q) % 1 != 0:
                raise ValueError("a theta2-dependent angle may only be offset by multiples of pi")

    @property
    def has_free_angle(self):
        return any(self.multiples)

    def angles(self, theta2):
        return tuple(k * theta2 + float(q) * math.pi for k, q in zip(self.multiples, self.offsets))

    def difference(self, i, j):
        """Angle difference theta_i - theta_j as (multiple, pi-offset)."""
        return (
            self.multiples[i - 1] - self.multiples[j - 1],
            Fraction(self.offsets[i - 1]) - Fraction(self.offsets[j - 1]),
        )


SQUARE = SymmetryScenario("square", (0, 0, 0, 0), (Fraction(0), HALF, Fraction(1), 3 * HALF))
KITE = SymmetryScenario("kite", (0, 1, 0, -1), (Fraction(0), Fraction(0), Fraction(1), Fraction(0)), ("r",))
RECTANGLE = SymmetryScenario(
    "rectangle", (0, 1, 0, 1), (Fraction(0), Fraction(0), Fraction(1), Fraction(1)), ("r",)
)
TRAPEZOID3 = SymmetryScenario(
    "trapezoid", (0, 1, 2, 3), (Fraction(0),) * 4, ("r", "-1 + 3*r^2")
)

SCENARIOS = {s.kind: s for s in (SQUARE, KITE, RECTANGLE, TRAPEZOID3)}


# ---------------------------------------------------------------------------
# Chebyshev expansion of sin/cos of angle differences
# ---------------------------------------------------------------------------

_cheb_cos_cache = {}
_cheb_sin_cache = {}


def _c_poly():
    return Poly.variable(TRIG_REGISTRY, "c")


def cheb_cos(k):
    """cos(k*theta) as a polynomial in c = cos(theta)."""
    k = abs(k)
    if k not in _cheb_cos_cache:
        c = _c_poly()
        t0, t1 = Poly.constant(TRIG_REGISTRY, 1), c
        polys = [t0, t1]
        while len(polys) <= k:
            polys.append(2 * c * polys[-1] - polys[-2])
        _cheb_cos_cache.update(enumerate(polys))
    return _cheb_cos_cache[k]


def cheb_sin_factor(k):
    """U_{k-1}(c) with sin(k*theta) = sin(theta) * U_{k-1}(cos(theta)), k >= 0."""
    if k not in _cheb_sin_cache:
        c = _c_poly()
        u0, u1 = Poly.constant(TRIG_REGISTRY, 1), 2 * c
        polys = [Poly.zero(TRIG_REGISTRY), u0, u1]  # index by k: U_{k-1}
        while len(polys) <= k:
            polys.append(2 * c * polys[-1] - polys[-2])
        _cheb_sin_cache.update(enumerate(polys))
    return _cheb_sin_cache[k]


def _half_turns(q):
    """(cos(q*pi), sin(q*pi)) for q a multiple of 1/2, as exact integers."""
    twice = Fraction(q) * 2
    if twice % 1 != 0:
        raise ValueError("offset must be a multiple of pi/2")
    quadrant = int(twice) % 4
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[quadrant]


def sin_of(k, q):
    """sin(k*theta2 + q*pi) as an s,c polynomial (s-degree at most one)."""
    cq, sq = _half_turns(q)
    sign = 1 if k >= 0 else -1
    s = Poly.variable(TRIG_REGISTRY, "s")
    out = Poly.zero(TRIG_REGISTRY)
    if cq:
        out = out + cq * sign * s * cheb_sin_factor(abs(k))
    if sq:
        out = out + sq * cheb_cos(k)
    return out


def cos_of(k, q):
    """cos(k*theta2 + q*pi) as an s,c polynomial."""
    cq, sq = _half_turns(q)
    sign = 1 if k >= 0 else -1
    out = Poly.zero(TRIG_REGISTRY)
    if cq:
        out = out + cq * cheb_cos(k)
    if sq:
        s = Poly.variable(TRIG_REGISTRY, "s")
        out = out - sq * sign * s * cheb_sin_factor(abs(k))
    return out


def s_reduce(p):
    """Rewrite s^2 -> 1 - c^2 until the s-degree is at most one."""
    reg = p.registry
    si = reg.index("s")
    ci = reg.index("c")
    out = {}
    pyth_cache = {}
    for mono, coeff in p.terms.items():
        e = mono[si]
        if e < 2:
            out[mono] = out.get(mono, Fraction(0)) + coeff
            continue
        half, rem = divmod(e, 2)
        if half not in pyth_cache:
            base = Poly.parse(reg, "1 - c^2")
            pyth_cache[half] = base**half
        stripped = list(mono)
        stripped[si] = rem
        for m2, c2 in pyth_cache[half].terms.items():
            mm = list(stripped)
            mm[ci] += m2[ci]
            key = tuple(mm)
            v = out.get(key, Fraction(0)) + coeff * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return Poly(reg, out)


class TrigRational:
    """Quotient of s,c,mu polynomials with an s-free denominator.

    The numerator is kept s-reduced (degree in s at most one); every
    denominator arising from the potential is a polynomial in c alone,
    which addition and multiplication preserve.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.constant(TRIG_REGISTRY, 1)
        if den.is_zero():
            raise ZeroDivisionError("trig rational with zero denominator")
        if den.uses("s"):
            raise ValueError("denominator must be free of s")
        self.num = s_reduce(num)
        self.den = den

    def __add__(self, other):
        if not isinstance(other, TrigRational):
            return NotImplemented
        return TrigRational(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return TrigRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TrigRational):
            return TrigRational(self.num * other.num, self.den * other.den)
        if isinstance(other, (int, Fraction, Poly)):
            return TrigRational(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self):
        return self.num.is_zero()

    def subs_mu(self, mapping):
        """Substitute circulation symbols (values or polynomials)."""
        return TrigRational(self.num.subs(mapping), self.den.subs(mapping))

    def evaluate(self, theta2, mus):
        values = {
            "s": math.sin(theta2),
            "c": math.cos(theta2),
            "mu1": float(mus[0]),
            "mu2": float(mus[1]),
            "mu3": float(mus[2]),
            "mu4": float(mus[3]),
        }
        return self.num.evaluate(values) / self.den.evaluate(values)

    def __repr__(self):
        return f"({self.num.format(_ORDER)}) / ({self.den.format(_ORDER)})"


def gradient_component(i, scenario):
    """(1/mu_i) dV/dtheta_i under the scenario substitution, as a TrigRational.

    Each pairwise term is mu_j sin(d_ij) (1 - 2cos(d_ij)) / (2 - 2cos(d_ij))
    with d_ij = theta_i - theta_j; an identically-one cosine means the
    scenario collides vortices i and j.
    """
    if i not in (1, 2, 3, 4):
        raise ValueError("vortex index must be 1..4")
    total = TrigRational(Poly.zero(TRIG_REGISTRY))
    for j in range(1, 5):
        if j == i:
            continue
        k, q = scenario.difference(i, j)
        sin_ij = sin_of(k, q)
        cos_ij = cos_of(k, q)
        den = Poly.constant(TRIG_REGISTRY, 2) - 2 * cos_ij
        if den.is_zero():
            raise CollisionError(f"scenario {scenario.kind} collides vortices {i} and {j}")
        mu_j = Poly.variable(TRIG_REGISTRY, f"mu{j}")
        num = mu_j * sin_ij * (den - 1)
        total = total + TrigRational(num, den)
    return total


def weighted_gradient_sum(scenario):
    """sum_i mu_i * gradient_component(i): identically zero by rotation symmetry."""
    total = TrigRational(Poly.zero(TRIG_REGISTRY))
    for i in range(1, 5):
        mu_i = Poly.variable(TRIG_REGISTRY, f"mu{i}")
        total = total + gradient_component(i, scenario) * mu_i
    return total


# ---------------------------------------------------------------------------
# Collision stripping and the half-angle change of variables
# ---------------------------------------------------------------------------


def _trig_collision_factors(scenario):
    # sin(theta2) vanishes at theta2 = 0 or pi, both collisions in every
    # scenario; in the s-reduced representation its powers appear as
    # s * (1-c)^a * (1+c)^b.  Scenario-specific factors (powers of r, the
    # 120-degree factor of the equal-sided trapezoid) are stripped after the
    # half-angle substitution instead.
    texts = ["s", "1 - c", "1 + c"]
    return [Poly.parse(TRIG_REGISTRY, t) for t in texts]


def _r_collision_factors(scenario):
    return [Poly.parse(R_REGISTRY, t) for t in scenario.r_collision_factors]


def strip_collision_factors(p, scenario):
    """Divide out all powers of the scenario's collision factors.

    Accepts a polynomial in either the trig world (s, c) or the half-angle
    world (r); returns (stripped polynomial, list of (factor, multiplicity)).
    """
    if p.is_zero():
        raise ValueError("cannot strip factors from the zero polynomial")
    if p.registry == TRIG_REGISTRY:
        factors = _trig_collision_factors(scenario)
    elif p.registry == R_REGISTRY:
        factors = _r_collision_factors(scenario)
    else:
        raise ValueError(f"unexpected registry {p.registry}")
    stripped = []
    for f in factors:
        count = 0
        while True:
            q = p.try_divide(f, _ORDER)
            if q is None:
                break
            p = q
            count += 1
        if count:
            stripped.append((f, count))
    return p, stripped


def half_angle_polynomialize(t):
    """Numerator polynomial in r after the tangent half-angle substitution.

    Accepts a TrigRational (its s-free denominator is dropped: solutions of
    numerator = 0 are preserved away from collisions) or a bare s,c
    polynomial.  Every term c^k s^e maps to (r^2-1)^k (2r)^e (1+r^2)^(N-k-e)
    with N the maximal k+e, clearing all half-angle denominators.
    """
    p = t.num if isinstance(t, TrigRational) else t
    if p.registry != TRIG_REGISTRY:
        raise ValueError("half-angle substitution expects the trig registry")
    si = TRIG_REGISTRY.index("s")
    ci = TRIG_REGISTRY.index("c")
    if p.is_zero():
        return Poly.zero(R_REGISTRY)
    clear = max(m[si] + m[ci] for m in p.terms)
    r = Poly.variable(R_REGISTRY, "r")
    one = Poly.constant(R_REGISTRY, 1)
    sin_num = 2 * r
    cos_num = r * r - one
    unit = r * r + one
    powers_sin = {0: one}
    powers_cos = {0: one}
    powers_unit = {0: one}

    def power(cache, base, e):
        if e not in cache:
            cache[e] = power(cache, base, e - 1) * base
        return cache[e]

    out = Poly.zero(R_REGISTRY)
    for mono, coeff in p.terms.items():
        e, k = mono[si], mono[ci]
        mu_mono = (0,) + mono[2:]
        term = Poly(R_REGISTRY, {mu_mono: coeff})
        term = term * power(powers_sin, sin_num, e)
        term = term * power(powers_cos, cos_num, k)
        term = term * power(powers_unit, unit, clear - e - k)
        out = out + term
    return out


def angle_of_r(r):
    """theta2 in (-pi, pi] with sin = 2r/(1+r^2) and cos = (r^2-1)/(1+r^2)."""
    r = float(r)
    return math.atan2(2 * r, r * r - 1)


@dataclass
class PipelineComponent:
    """One gradient component carried from trig form to an r-polynomial."""

    index: int
    trig: TrigRational
    trig_stripped: Poly
    trig_factors: list
    clear_power: int
    r_raw: Poly
    r_factors: list
    content: Fraction
    r_poly: Poly

    def reconstruct_value(self, theta2, mus):
        """Evaluate the original trig component from the reduced pieces.

        Multiplies the reduced polynomial back by everything that was
        stripped or cleared; used to certify that the reduction did not
        change the zero set away from collisions.
        """
        sv, cv = math.sin(theta2), math.cos(theta2)
        rv = 1 / math.tan(theta2 / 2)
        values = {"s": sv, "c": cv}
        rvalues = {"r": rv}
        for n, m in zip(("mu1", "mu2", "mu3", "mu4"), mus):
            values[n] = float(m)
            rvalues[n] = float(m)
        num = float(self.content) * self.r_poly.evaluate(rvalues)
        for f, mult in self.r_factors:
            num *= f.evaluate(rvalues) ** mult
        num /= (1 + rv * rv) ** self.clear_power
        for f, mult in self.trig_factors:
            num *= f.evaluate(values) ** mult
        return num / self.trig.den.evaluate(values)


def reduce_component(i, scenario):
    """Run one gradient component through stripping and the r-substitution."""
    trig = gradient_component(i, scenario)
    if trig.is_zero():
        raise ValueError(f"component {i} of {scenario.kind} vanishes identically")
    core, trig_factors = strip_collision_factors(trig.num, scenario)
    si = TRIG_REGISTRY.index("s")
    ci = TRIG_REGISTRY.index("c")
    clear = max(m[si] + m[ci] for m in core.terms)
    raw = half_angle_polynomialize(core)
    stripped, r_factors = strip_collision_factors(raw, scenario)
    content, canonical = stripped.content_strip(_ORDER)
    return PipelineComponent(
        index=i,
        trig=trig,
        trig_stripped=core,
        trig_factors=trig_factors,
        clear_power=clear,
        r_raw=raw,
        r_factors=r_factors,
        content=content,
        r_poly=canonical,
    )


def pipeline(scenario):
    """Reduced r-polynomials for the three independent components (i = 2, 3, 4)."""
    if not scenario.has_free_angle:
        raise ValueError(f"{scenario.kind} scenario has no free angle to reduce")
    return [reduce_component(i, scenario) for i in (2, 3, 4)]


# ---------------------------------------------------------------------------
# Potential, gradient, and Hessian evaluation
# ---------------------------------------------------------------------------


def potential(thetas, mus):
    total = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            d = thetas[i] - thetas[j]
            total -= float(mus[i] * mus[j]) * (
                math.cos(d) + 0.5 * math.log(2 - 2 * math.cos(d))
            )
    return total


def gradient(thetas, mus):
    """The four components of grad V (including the mu_i weights)."""
    out = []
    for i in range(4):
        acc = 0.0
        for j in range(4):
            if j == i:
                continue
            d = thetas[i] - thetas[j]
            acc += float(mus[j]) * math.sin(d) * (1 - 1 / (2 - 2 * math.cos(d)))
        out.append(float(mus[i]) * acc)
    return out


def _gprime_float(cos_d):
    return -cos_d - 1 / (2 - 2 * cos_d)


def _gprime_exact(cos_d):
    if cos_d == 1:
        raise CollisionError("coinciding vortices in Hessian")
    return -cos_d - Fraction(1) / (2 - 2 * cos_d)


def hessian(config):
    """Numeric Hessian of V; symmetric, rows summing to zero exactly.

    The i != j entry is mu_i mu_j g'(theta_i - theta_j) with
    g'(x) = -cos x - 1/(2 - 2 cos x); diagonals are the negated row sums,
    which realises the rotational degeneracy V_theta_theta * 1 = 0.
    """
    thetas, mus = config.thetas, config.mus
    h = [[0.0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i != j:
                h[i][j] = float(mus[i] * mus[j]) * _gprime_float(
                    math.cos(thetas[i] - thetas[j])
                )
    for i in range(4):
        h[i][i] = -sum(h[i][j] for j in range(4) if j != i)
    return h


def weighted_hessian(config):
    """mu^{-1} V_theta_theta: row i of the Hessian divided by mu_i."""
    h = hessian(config)
    return [[h[i][j] / float(config.mus[i]) for j in range(4)] for i in range(4)]


def scenario_cos_table(scenario, cos_theta2=None):
    """Exact cos(theta_i - theta_j) values, when they are rational.

    Needs a rational cos(theta2) whenever the scenario actually uses the
    free angle.  Entries come out of the Chebyshev expansion, so any
    rational cosine of theta2 yields rational cosines of all differences.
    """
    table = [[Fraction(1)] * 4 for _ in range(4)]
    x = None if cos_theta2 is None else Fraction(cos_theta2)
    c_idx = TRIG_REGISTRY.index("c")
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                continue
            k, q = scenario.difference(i, j)
            if k != 0 and x is None:
                raise ValueError("scenario needs a rational cos(theta2)")
            cq, sq = _half_turns(q)
            if k == 0:
                val = Fraction(cq)
            else:
                cheb = cheb_cos(k)
                val = cq * sum(
                    coeff * x ** m[c_idx] for m, coeff in cheb.terms.items()
                )
                if sq:
                    raise ValueError("pi/2 offsets cannot mix with free-angle terms")
            table[i - 1][j - 1] = val
    return table


def hessian_exact(scenario, mus, cos_theta2=None):
    """Exact rational Hessian at a scenario point with rational cosines."""
    cos_table = scenario_cos_table(scenario, cos_theta2)
    mus = [Fraction(m) for m in mus]
    h = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i != j:
                h[i][j] = mus[i] * mus[j] * _gprime_exact(cos_table[i][j])
    for i in range(4):
        h[i][i] = -sum(h[i][j] for j in range(4) if j != i)
    return SymMatrix(h)


def hessian_symbolic(scenario, mu_values, cos_theta2=None):
    """Hessian with polynomial circulation entries (a list of Poly rows).

    ``mu_values`` supplies the four circulations as polynomials over a
    shared registry, so equal-circulation constraints like (m1, m2, m1, m2)
    stay symbolic.
    """
    cos_table = scenario_cos_table(scenario, cos_theta2)
    reg = mu_values[0].registry
    zero = Poly.zero(reg)
    h = [[zero] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i != j:
                h[i][j] = mu_values[i] * mu_values[j] * _gprime_exact(cos_table[i][j])
    for i in range(4):
        diag = zero
        for j in range(4):
            if j != i:
                diag = diag - h[i][j]
        h[i][i] = diag
    return h


def weighted_hessian_symbolic(scenario, mu_values, cos_theta2=None):
    """mu^{-1} V_theta_theta with polynomial entries (not symmetric)."""
    cos_table = scenario_cos_table(scenario, cos_theta2)
    reg = mu_values[0].registry
    zero = Poly.zero(reg)
    h = [[zero] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i != j:
                h[i][j] = mu_values[j] * _gprime_exact(cos_table[i][j])
    for i in range(4):
        diag = zero
        for j in range(4):
            if j != i:
                diag = diag - h[i][j]
        h[i][i] = diag
    return h


def char_poly_in(rows, registry, var):
    """Characteristic polynomial of a Poly-entried matrix, as a Poly in ``var``.

    The matrix entries and the result live in ``registry`` (which must
    contain ``var``); exactness comes from Faddeev-LeVerrier over the
    polynomial ring.
    """
    from vortexsym.realroots import char_poly

    coeffs = char_poly(rows)
    lam = Poly.variable(registry, var)
    out = Poly.zero(registry)
    for k, ck in enumerate(coeffs):
        if isinstance(ck, (int, Fraction)):
            ck = Poly.constant(registry, ck)
        else:
            ck = ck.map_to(registry)
        out = out + ck * lam**k
    return out
