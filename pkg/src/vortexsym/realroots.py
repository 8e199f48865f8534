"""Exact real-root counting and isolation, matrix inertia, Hermite trace forms.

Univariate polynomials are handled as dense ascending coefficient lists of
exact rationals.  Root isolation runs Sturm-sequence bisection on the
squarefree part, with exact rational roots deflated out, so every interval
is certified to contain exactly one root.  The Hermite method builds the
trace form of a zero-dimensional quotient ring over its standard-monomial
basis; its signature counts distinct real solutions and its rank distinct
complex ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from vortexsym.groebner import GroebnerBasis, Ideal, buchberger, standard_monomials
from vortexsym.ratpoly import GrevLex, Poly


class PositiveDimensionalError(ValueError):
    """The ideal has infinitely many solutions; counting does not apply."""


# ---------------------------------------------------------------------------
# Dense univariate helpers (ascending coefficients, exact rationals)
# ---------------------------------------------------------------------------


def coeffs_from_poly(p, var=None):
    """Dense ascending coefficient list of a polynomial univariate in ``var``."""
    reg = p.registry
    if var is None:
        used = [n for n in reg.names if p.uses(n)]
        if len(used) > 1:
            raise ValueError(f"polynomial uses several variables: {used}")
        var = used[0] if used else reg.names[0]
    i = reg.index(var)
    deg = 0
    for m in p.terms:
        if any(e and j != i for j, e in enumerate(m)):
            raise ValueError(f"polynomial is not univariate in {var!r}")
        deg = max(deg, m[i])
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        out[m[i]] = c
    return _trim(out)


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def degree(coeffs):
    return len(coeffs) - 1


def eval_at(coeffs, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _primitive_int(coeffs):
    """Scale to integer coefficients with content 1, keeping the sign."""
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        ints = [c // g for c in ints]
    return [Fraction(c) for c in ints]


def _poly_rem(a, b):
    """Remainder of dense division a mod b (b nonzero), content-normalised."""
    a = list(a)
    db = degree(b)
    lb = b[-1]
    while degree(a) >= db and a:
        k = degree(a) - db
        f = a[-1] / lb
        for i in range(db + 1):
            a[k + i] -= f * b[i]
        a.pop()
        _trim(a)
    return _primitive_int(a)


def poly_gcd(a, b):
    a = _primitive_int(_trim(list(a)))
    b = _primitive_int(_trim(list(b)))
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def squarefree_part(coeffs):
    coeffs = _primitive_int(_trim(list(coeffs)))
    if degree(coeffs) < 1:
        return coeffs
    g = poly_gcd(coeffs, derivative(coeffs))
    if degree(g) == 0:
        return coeffs
    q, r = _poly_divmod(coeffs, g)
    assert not r, "gcd must divide exactly"
    return _primitive_int(q)


def _poly_divmod(a, b):
    a = list(a)
    db = degree(b)
    lb = b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    while degree(a) >= db and a:
        k = degree(a) - db
        f = a[-1] / lb
        q[k] = f
        for i in range(db + 1):
            a[k + i] -= f * b[i]
        a.pop()
        _trim(a)
    return q, a


# ---------------------------------------------------------------------------
# Descartes and Sturm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignSequence:
    """Coefficient sequence of a univariate polynomial, dense, ascending."""

    coefficients: tuple

    def sign_changes(self):
        signs = [1 if c > 0 else -1 for c in self.coefficients if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_positive(coeffs, all_roots_real=False):
    """Descartes bound on positive real roots: (count_or_bound, exact).

    The bound is exact when it is 0 or 1 (it can only drop by even numbers)
    or when the caller certifies that every root is real.
    """
    coeffs = _trim(list(coeffs))
    if not coeffs:
        raise ValueError("zero polynomial")
    changes = SignSequence(tuple(coeffs)).sign_changes()
    return changes, bool(all_roots_real or changes <= 1)


class SturmSequence:
    """Sturm chain of a squarefree polynomial, with sign-variation counting."""

    def __init__(self, coeffs):
        coeffs = _primitive_int(_trim(list(coeffs)))
        if not coeffs:
            raise ValueError("zero polynomial has no Sturm sequence")
        chain = [coeffs]
        if degree(coeffs) >= 1:
            chain.append(_primitive_int(derivative(coeffs)))
            while degree(chain[-1]) > 0:
                r = _poly_rem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append([-c for c in r])
            if not chain[-1]:
                chain.pop()
        self.chain = chain

    def variations_at(self, x):
        signs = []
        for p in self.chain:
            v = eval_at(p, x)
            if v != 0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_inf(self, positive):
        signs = []
        for p in self.chain:
            lc = p[-1]
            if not positive and degree(p) % 2 == 1:
                lc = -lc
            signs.append(1 if lc > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_open(self, lo, hi):
        """Number of distinct roots in the open interval (lo, hi).

        Endpoints must not be roots of the squarefree polynomial.
        """
        return self.variations_at(lo) - self.variations_at(hi)

    def count_all(self):
        return self.variations_at_inf(False) - self.variations_at_inf(True)


@dataclass
class IsolatingInterval:
    """Certified enclosure of exactly one real root: the root lies in
    [lo, hi], with lo == hi for an exact rational root and a strict sign
    change across the interval otherwise."""

    lo: Fraction
    hi: Fraction
    coeffs: tuple

    @property
    def exact(self):
        return self.lo == self.hi

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())

    def refine(self, eps):
        """Shrink by sign-preserving bisection until width < eps; returns the
        midpoint of the final enclosure."""
        eps = Fraction(eps) if not isinstance(eps, Fraction) else eps
        if self.exact:
            return self.lo
        lo, hi = self.lo, self.hi
        coeffs = list(self.coeffs)
        slo = 1 if eval_at(coeffs, lo) > 0 else -1
        while hi - lo >= eps:
            mid = (lo + hi) / 2
            v = eval_at(coeffs, mid)
            if v == 0:
                lo = hi = mid
                break
            if (1 if v > 0 else -1) == slo:
                lo = mid
            else:
                hi = mid
        self.lo, self.hi = lo, hi
        return self.midpoint()

    def contains(self, x):
        return self.lo <= x <= self.hi


def root_bound(coeffs):
    """Cauchy bound: every real root lies in (-B, B)."""
    lc = abs(coeffs[-1])
    m = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else Fraction(0)
    return Fraction(1) + m / lc


def sturm_isolate(coeffs, var=None):
    """Disjoint isolating intervals for all real roots of the polynomial.

    Accepts a dense coefficient list or a univariate :class:`Poly`.  The
    squarefree part is taken first; exact rational roots found during
    bisection are deflated out and reported as point intervals.
    """
    if isinstance(coeffs, Poly):
        coeffs = coeffs_from_poly(coeffs, var)
    sf = squarefree_part(coeffs)
    if degree(sf) < 1:
        return []
    intervals = []
    sturm = SturmSequence(sf)
    bound = root_bound(sf)
    stack = [(-bound, bound, sturm.count_open(-bound, bound))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            # one simple root inside, so the endpoint signs differ
            intervals.append(IsolatingInterval(lo, hi, tuple(sf)))
            continue
        mid = (lo + hi) / 2
        if eval_at(sf, mid) == 0:
            # exact rational root at the split point: report it as a point
            # interval and carve out a window certified to contain only it
            intervals.append(IsolatingInterval(mid, mid, tuple(sf)))
            delta = (hi - lo) / 4
            while True:
                a, b = mid - delta, mid + delta
                if (
                    lo < a
                    and b < hi
                    and eval_at(sf, a) != 0
                    and eval_at(sf, b) != 0
                    and sturm.count_open(a, b) == 1
                ):
                    break
                delta /= 2
            stack.append((lo, a, sturm.count_open(lo, a)))
            stack.append((b, hi, sturm.count_open(b, hi)))
            continue
        left = sturm.count_open(lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, count - left))
    intervals.sort(key=lambda iv: (iv.lo, iv.hi))
    return intervals


def refine(interval, eps):
    """Midpoint of the interval shrunk below ``eps`` by exact bisection."""
    return interval.refine(eps)


def count_real_roots(coeffs, var=None):
    if isinstance(coeffs, Poly):
        coeffs = coeffs_from_poly(coeffs, var)
    sf = squarefree_part(coeffs)
    if degree(sf) < 1:
        return 0
    return SturmSequence(sf).count_all()


def count_positive_roots(coeffs):
    sf = squarefree_part(coeffs)
    if degree(sf) < 1:
        return 0
    sturm = SturmSequence(sf)
    return sturm.variations_at(0) - sturm.variations_at_inf(True)


# ---------------------------------------------------------------------------
# Certified rational interval arithmetic
# ---------------------------------------------------------------------------


def _isqrt_floor(n):
    from math import isqrt

    return isqrt(n)


def sqrt_lower(q, bits=96):
    """A rational lower bound for sqrt(q), q >= 0, tight to ~2^-bits."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits
    n = q.numerator * scale * scale // q.denominator
    return Fraction(_isqrt_floor(n), scale)


def sqrt_upper(q, bits=96):
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits
    n = q.numerator * scale * scale // q.denominator
    r = _isqrt_floor(n)
    if r * r < n:
        r += 1
    return Fraction(r, scale)


class RatInterval:
    """Closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        self.lo, self.hi = lo, hi

    @classmethod
    def from_isolating(cls, interval):
        return cls(interval.lo, interval.hi)

    def __add__(self, other):
        other = _as_interval(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatInterval):
            if other.lo <= 0 <= other.hi:
                raise ZeroDivisionError("interval denominator straddles zero")
            return self * RatInterval(Fraction(1) / other.hi, Fraction(1) / other.lo)
        scalar = Fraction(other)
        if scalar == 0:
            raise ZeroDivisionError
        a, b = self.lo / scalar, self.hi / scalar
        return RatInterval(min(a, b), max(a, b))

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())

    def contains(self, x):
        return self.lo <= x <= self.hi

    def is_positive(self):
        return self.lo > 0

    def is_negative(self):
        return self.hi < 0

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("interval crosses zero; square root undefined")
        return RatInterval(sqrt_lower(self.lo), sqrt_upper(self.hi))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x):
    if isinstance(x, RatInterval):
        return x
    return RatInterval(x)


def eval_interval(coeffs, interval):
    """Interval Horner evaluation of a dense ascending coefficient list."""
    acc = RatInterval(0)
    for c in reversed(coeffs):
        acc = acc * interval + RatInterval(c)
    return acc


# ---------------------------------------------------------------------------
# Exact symmetric matrices
# ---------------------------------------------------------------------------


class SymMatrix:
    """Dense symmetric matrix with exact rational entries."""

    def __init__(self, rows):
        rows = [tuple(Fraction(c) for c in row) for row in rows]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")
        self.rows = tuple(rows)
        self.n = n

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def char_poly(self):
        """Characteristic polynomial det(lambda*I - A), ascending coefficients."""
        return char_poly(self.rows)

    def inertia(self):
        return inertia(self)


def char_poly(rows):
    """Faddeev-LeVerrier characteristic polynomial of a square matrix.

    Returns ascending rational coefficients of det(lambda*I - A).  Exact;
    works over any exact scalar supporting +, *, and division by integers.
    Integer matrices stay integer throughout.
    """
    n = len(rows)
    a = [[Fraction(c) if isinstance(c, int) else c for c in row] for row in rows]
    coeffs = [Fraction(1)] + [Fraction(0)] * n  # descending: lambda^n ... const
    m = [row[:] for row in a]
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                m[i][i] = m[i][i] + coeffs[k - 1]
            m = _mat_mul(a, m)
        trace = m[0][0]
        for i in range(1, n):
            trace = trace + m[i][i]
        coeffs[k] = -trace / k
    return list(reversed(coeffs))


def _mat_mul(a, b):
    n = len(a)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for j in range(n):
            s = ai[0] * b[0][j]
            for k in range(1, n):
                s = s + ai[k] * b[k][j]
            out[i][j] = s
    return out


def inertia(matrix):
    """Exact (n_pos, n_neg, n_zero) of a symmetric rational matrix.

    Small matrices go through the characteristic polynomial: symmetry makes
    every root real, so Descartes' rule on p(lambda) and p(-lambda) is
    exact and the zero multiplicity is the number of trailing zero
    coefficients.  Larger matrices (the Hermite trace forms) use symmetric
    congruence elimination instead, which is exact and avoids the coefficient
    blow-up of a characteristic polynomial in high dimension.
    """
    if not isinstance(matrix, SymMatrix):
        matrix = SymMatrix(matrix)
    if matrix.n == 0:
        return (0, 0, 0)
    if matrix.n <= 12:
        return _inertia_charpoly(matrix)
    return _inertia_congruence(matrix)


def _inertia_charpoly(matrix):
    p = char_poly(matrix.rows)
    n_zero = 0
    while p[n_zero] == 0:
        n_zero += 1
    core = p[n_zero:]
    n_pos, _ = descartes_positive(core, all_roots_real=True)
    flipped = [c if i % 2 == 0 else -c for i, c in enumerate(core)]
    n_neg, _ = descartes_positive(flipped, all_roots_real=True)
    assert n_pos + n_neg + n_zero == matrix.n
    return (n_pos, n_neg, n_zero)


def _inertia_congruence(matrix):
    """Symmetric Gaussian elimination by congruence transformations."""
    a = [list(row) for row in matrix.rows]
    n = matrix.n
    pos = neg = zero = 0
    idx = list(range(n))

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < n:
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot is not None:
                swap(k, pivot)
            else:
                off = next((i for i in range(k + 1, n) if a[k][i] != 0), None)
                if off is None:
                    if all(a[k][i] == 0 for i in range(k, n)):
                        zero += 1
                        k += 1
                        continue
                    row = next(i for i in range(k + 1, n) if any(a[i][j] != 0 for j in range(k, n)))
                    swap(k, row)
                    continue
                # congruence: add row/col `off` into k, making a[k][k] = 2*a[k][off] != 0
                for j in range(n):
                    a[k][j] += a[off][j]
                for i in range(n):
                    a[i][k] += a[i][off]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
        k += 1
    assert pos + neg + zero == n
    del idx
    return (pos, neg, zero)


def kernel_basis(rows):
    """Exact basis of the kernel of a rational matrix (list of row vectors)."""
    if not rows:
        return []
    m = [list(map(Fraction, row)) for row in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        d = m[r][c]
        m[r] = [x / d for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][c]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Hermite trace form
# ---------------------------------------------------------------------------


def multiplication_matrix(gb, qb, var):
    """Matrix of multiplication by ``var`` on the standard-monomial basis.

    Returned as a list of columns; column j holds the coordinates of the
    normal form of var * m_j.
    """
    return [_nf_coords(gb, qb, _shift(m, gb.registry.index(var))) for m in qb.standard_monomials]


def _shift(mono, i, by=1):
    out = list(mono)
    out[i] += by
    return tuple(out)


def _nf_coords(gb, qb, mono):
    index = {m: k for k, m in enumerate(qb.standard_monomials)}
    if mono in index:
        col = [Fraction(0)] * len(qb)
        col[index[mono]] = Fraction(1)
        return col
    p = Poly(gb.registry, {mono: Fraction(1)})
    nf = gb.normal_form(p)
    col = [Fraction(0)] * len(qb)
    for m, c in nf.terms.items():
        col[index[m]] = c
    return col


def hermite_matrix(gb, qb=None):
    """Trace form H_ij = Tr(mult by m_i * m_j) over the standard basis."""
    if qb is None:
        qb = standard_monomials(gb)
    if not qb.finite:
        raise PositiveDimensionalError("quotient ring is infinite-dimensional")
    basis = qb.standard_monomials
    d = len(basis)
    if d == 0:
        return SymMatrix([])
    index = {m: k for k, m in enumerate(basis)}
    reg = gb.registry
    nvar = len(reg)

    def nf_coords(mono):
        if mono in index:
            col = [Fraction(0)] * d
            col[index[mono]] = Fraction(1)
            return col
        nf = gb.normal_form(Poly(reg, {mono: Fraction(1)}))
        col = [Fraction(0)] * d
        for m, c in nf.terms.items():
            col[index[m]] = c
        return col

    # multiplication-by-variable matrices, built lazily from normal forms
    columns = {}
    vec_cache = {}

    def vec(mono):
        if mono in index:
            return nf_coords(mono)
        if mono in vec_cache:
            return vec_cache[mono]
        v = next(i for i in range(nvar) if mono[i] > 0)
        if v not in columns:
            columns[v] = [nf_coords(_shift(m, v)) for m in basis]
        base = vec(_shift(mono, v, -1))
        cols = columns[v]
        out = [Fraction(0)] * d
        for j, x in enumerate(base):
            if x:
                cj = cols[j]
                for i in range(d):
                    if cj[i]:
                        out[i] += x * cj[i]
        vec_cache[mono] = out
        return out

    # trace of multiplication by each standard monomial
    trace = []
    for m in basis:
        t = Fraction(0)
        for k, mk in enumerate(basis):
            t += vec(_mono_mul(m, mk))[k]
        trace.append(t)

    rows = []
    for i, mi in enumerate(basis):
        row = []
        for j, mj in enumerate(basis):
            if j < i:
                row.append(rows[j][i])
                continue
            v = vec(_mono_mul(mi, mj))
            row.append(sum((v[k] * trace[k] for k in range(d) if v[k]), Fraction(0)))
        rows.append(row)
    return SymMatrix(rows)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def hermite_count(ideal, order=None):
    """(distinct real roots, distinct complex roots) of a zero-dimensional ideal.

    The first is the signature of the Hermite matrix, the second its rank.
    Raises :class:`PositiveDimensionalError` when the quotient ring is
    infinite-dimensional.
    """
    if isinstance(ideal, GroebnerBasis):
        gb = ideal
        if not isinstance(gb.order, GrevLex):
            gb = buchberger(Ideal.of(*gb.polys), GrevLex())
    else:
        gb = buchberger(ideal, GrevLex())
    qb = standard_monomials(gb)
    if not qb.finite:
        raise PositiveDimensionalError("quotient ring is infinite-dimensional")
    h = hermite_matrix(gb, qb)
    n_pos, n_neg, _ = inertia(h)
    return (n_pos - n_neg, n_pos + n_neg)
