"""Polynomial division, Buchberger's algorithm, elimination ideals, normal forms.

The Buchberger kernel works fraction-free over the integers: every
polynomial is kept integer-primitive and reductions rescale by integer
gcd cofactors instead of dividing coefficients.  Pair management uses the
Gebauer-Moeller update, which realises both classical Buchberger criteria
(coprime leading monomials and the chain criterion).  Pair selection is by
(lcm degree, insertion indices), so runs are deterministic and the reduced
basis produced for a given ideal and order is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from vortexsym.ratpoly import (
    GrevLex,
    Poly,
    VarRegistry,
    elimination,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class Ideal:
    """A finite generating set for a polynomial ideal."""

    generators: tuple
    registry: VarRegistry

    @classmethod
    def of(cls, *polys):
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            raise ValueError("an ideal needs at least one nonzero generator")
        reg = polys[0].registry
        for p in polys:
            if p.registry != reg:
                raise ValueError("ideal generators must share a registry")
        return cls(tuple(polys), reg)


class GroebnerBasis:
    """A reduced Groebner basis: content-normalised, inter-reduced, sorted."""

    def __init__(self, polys, order, reduced=True):
        self.polys = tuple(polys)
        self.order = order
        self.reduced = reduced

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        body = ", ".join(p.format(self.order) for p in self.polys)
        return f"GroebnerBasis[{body}]"

    @property
    def registry(self):
        return self.polys[0].registry

    def normal_form(self, p):
        return normal_form(p, self)

    def contains(self, p):
        return normal_form(p, self).is_zero()

    def same_ideal_as(self, polys):
        """Two-sided membership: self and ``polys`` generate the same ideal."""
        other = buchberger(Ideal.of(*polys), self.order)
        return all(self.contains(p) for p in polys) and all(
            other.contains(g) for g in self.polys
        )

    def leading_monomials(self):
        return [p.leading_monomial(self.order) for p in self.polys]

    def verify(self):
        """Buchberger criterion: every S-polynomial reduces to zero."""
        for i in range(len(self.polys)):
            for j in range(i + 1, len(self.polys)):
                s = s_polynomial(self.polys[i], self.polys[j], self.order)
                if not normal_form(s, self).is_zero():
                    return False
        return True


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of a zero-dimensional quotient ring, grevlex source."""

    standard_monomials: tuple
    source: GroebnerBasis
    finite: bool

    def __len__(self):
        return len(self.standard_monomials)


def s_polynomial(f, g, order):
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    L = mono_lcm(mf, mg)
    tf = Poly(f.registry, {mono_div(L, mf): Fraction(1) / cf})
    tg = Poly(g.registry, {mono_div(L, mg): Fraction(1) / cg})
    return tf * f - tg * g


def reduce(p, divisors, order):
    """Multivariate division with remainder: ``p = sum q_i d_i + rem``.

    No term of ``rem`` is divisible by the leading monomial of any divisor;
    the result is deterministic in the divisor order (first match wins).
    """
    divisors = list(divisors)
    if any(d.is_zero() for d in divisors):
        raise ValueError("divisors must be nonzero")
    reg = p.registry
    lead = [d.leading_term(order) for d in divisors]
    quotients = [dict() for _ in divisors]
    remainder = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for i, (dm, dc) in enumerate(lead):
            if mono_divides(dm, m):
                qm = mono_div(m, dm)
                qc = c / dc
                quotients[i][qm] = quotients[i].get(qm, 0) + qc
                for m2, c2 in divisors[i].terms.items():
                    if m2 == dm:
                        continue
                    mm = mono_mul(qm, m2)
                    s = work.get(mm, Fraction(0)) - qc * c2
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = remainder.get(m, Fraction(0)) + c
    return (
        [Poly(reg, q) for q in quotients],
        Poly(reg, remainder),
    )


def normal_form(p, basis):
    """Remainder of ``p`` modulo a Groebner basis (unique for a true basis)."""
    if isinstance(basis, GroebnerBasis):
        divisors, order = basis.polys, basis.order
    else:
        raise TypeError("normal_form expects a GroebnerBasis")
    if p.is_zero():
        return p
    _, rem = reduce(p, divisors, order)
    return rem


# ---------------------------------------------------------------------------
# Fraction-free integer kernel
# ---------------------------------------------------------------------------


def _int_from_poly(p):
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return {m: int(c * denom) for m, c in p.terms.items()}


def _poly_from_int(reg, terms):
    return Poly(reg, {m: Fraction(c) for m, c in terms.items()})


def _int_strip(terms, key):
    """Make an integer coefficient dict primitive with positive leading sign."""
    if not terms:
        return terms
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = max(terms, key=key)
    if terms[lead] < 0:
        g = -g
    if g != 1:
        return {m: c // g for m, c in terms.items()}
    return dict(terms)


def _int_nf(p, basis, key, skip=-1):
    """Fraction-free normal form of integer dict ``p`` against basis entries.

    ``basis`` holds (lt_monomial, lt_coefficient, terms) triples; ``skip``
    excludes one index (used during inter-reduction).  The result equals the
    true normal form up to a positive rational scalar and is returned
    integer-primitive.
    """
    work = dict(p)
    rem = {}
    steps = 0
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, (dm, dc, dterms) in enumerate(basis):
            if i != skip and mono_divides(dm, m):
                g = gcd(c, dc)
                lam = dc // g
                mu = c // g
                if lam < 0:
                    lam, mu = -lam, -mu
                if lam != 1:
                    for k in work:
                        work[k] *= lam
                    for k in rem:
                        rem[k] *= lam
                shift = mono_div(m, dm)
                for m2, c2 in dterms.items():
                    if m2 == dm:
                        continue
                    mm = mono_mul(shift, m2)
                    s = work.get(mm, 0) - mu * c2
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = rem.get(m, 0) + c
        steps += 1
        if steps % 64 == 0 and work:
            g = 0
            for v in work.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                for v in rem.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
            if g > 1:
                work = {k: v // g for k, v in work.items()}
                rem = {k: v // g for k, v in rem.items()}
    return _int_strip(rem, key)


def _int_spoly(f, g, key):
    """Fraction-free S-polynomial of two basis entries."""
    fm, fc, fterms = f
    gm, gc, gterms = g
    L = mono_lcm(fm, gm)
    d = gcd(fc, gc)
    a = gc // d
    b = fc // d
    sf = mono_div(L, fm)
    sg = mono_div(L, gm)
    out = {}
    for m, c in fterms.items():
        out[mono_mul(sf, m)] = a * c
    for m, c in gterms.items():
        mm = mono_mul(sg, m)
        s = out.get(mm, 0) - b * c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _entry(terms, key):
    lt = max(terms, key=key)
    return (lt, terms[lt], terms)


def _gm_update(entries, pairs, new_terms, key):
    """Gebauer-Moeller pair update when appending a new basis element.

    Prunes existing pairs by the chain criterion and filters new pairs by
    the chain and coprimality criteria.
    """
    t = len(entries)
    lmf = max(new_terms, key=key)
    lm = [e[0] for e in entries]

    kept = set()
    for (i, j) in pairs:
        L = mono_lcm(lm[i], lm[j])
        if (
            not mono_divides(lmf, L)
            or mono_lcm(lm[i], lmf) == L
            or mono_lcm(lm[j], lmf) == L
        ):
            kept.add((i, j))

    lcm_groups = {}
    for i in range(t):
        lcm_groups.setdefault(mono_lcm(lm[i], lmf), []).append(i)
    minimal = []
    for L in sorted(lcm_groups, key=key):
        if all(not mono_divides(Lm, L) for Lm in minimal):
            minimal.append(L)
    for L in minimal:
        group = lcm_groups[L]
        if any(mono_lcm(lm[i], lmf) == mono_mul(lm[i], lmf) for i in group):
            continue  # coprime leading monomials: S-pair reduces to zero
        kept.add((min(group), t))

    entries.append(_entry(new_terms, key))
    return kept


def _buchberger_int(int_gens, key):
    """Reduced Groebner basis of integer-primitive generators (as int dicts)."""
    entries = []
    pairs = set()
    for g in int_gens:
        g = _int_strip(g, key)
        if not g:
            continue
        r = _int_nf(g, entries, key)
        if r:
            pairs = _gm_update(entries, pairs, r, key)

    def pair_sort(p):
        i, j = p
        return (mono_degree(mono_lcm(entries[i][0], entries[j][0])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_sort)
        pairs.discard((i, j))
        s = _int_spoly(entries[i], entries[j], key)
        r = _int_nf(s, entries, key)
        if r:
            pairs = _gm_update(entries, pairs, r, key)

    # Minimalise: drop entries whose leading monomial another one divides.
    order_idx = sorted(range(len(entries)), key=lambda i: key(entries[i][0]))
    minimal = []
    for i in order_idx:
        lt = entries[i][0]
        if all(not mono_divides(entries[k][0], lt) for k in minimal):
            minimal.append(i)
    basis = [entries[i] for i in minimal]

    # Inter-reduce tails for the unique reduced basis.
    reduced = []
    for i in range(len(basis)):
        others = basis[:i] + basis[i + 1 :]
        r = _int_nf(dict(basis[i][2]), others, key)
        reduced.append(_entry(r, key))
    reduced.sort(key=lambda e: key(e[0]))
    return [e[2] for e in reduced]


def buchberger(ideal, order):
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Basis elements are integer-primitive with positive leading coefficient
    and sorted by increasing leading monomial, so the output is canonical.
    A unit ideal collapses to the basis ``{1}``.
    """
    if isinstance(ideal, Ideal):
        gens, reg = ideal.generators, ideal.registry
    else:
        gens = [p for p in ideal if not p.is_zero()]
        if not gens:
            raise ValueError("cannot take a Groebner basis of the zero ideal")
        reg = gens[0].registry
    key = order.key
    int_gens = [_int_from_poly(p) for p in gens]
    basis = _buchberger_int(int_gens, key)
    polys = [_poly_from_int(reg, t) for t in basis]
    return GroebnerBasis(polys, order, reduced=True)


def eliminate(ideal, drop, inner_names=None):
    """Reduced basis of the elimination ideal dropping the named variables.

    Works through a block elimination order, then keeps the basis elements
    free of the dropped variables; by the elimination theorem these form a
    Groebner basis of the intersection ideal under the inner (grevlex)
    order, which is returned as the basis order.
    """
    reg = ideal.registry if isinstance(ideal, Ideal) else ideal[0].registry
    drop = list(drop)
    for name in drop:
        reg.index(name)
    order = elimination(reg, drop, inner_names=inner_names)
    gb = buchberger(ideal, order)
    drop_idx = {reg.index(n) for n in drop}
    kept = [
        p
        for p in gb.polys
        if all(all(m[i] == 0 for i in drop_idx) for m in p.terms)
    ]
    inner = GrevLex(order.rest)
    if not kept:
        return GroebnerBasis((), inner, reduced=True)
    key = inner.key
    basis = _buchberger_int([_int_from_poly(p) for p in kept], key)
    polys = [_poly_from_int(reg, t) for t in basis]
    return GroebnerBasis(polys, inner, reduced=True)


def bareiss_determinant(matrix):
    """Exact determinant of a square Poly matrix via fraction-free elimination.

    All entries must share a registry; intermediate divisions are exact by
    the Bareiss identity.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    reg = matrix[0][0].registry
    one = Poly.constant(reg, 1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = one
    order = GrevLex()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Poly.zero(reg)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divide_exact(prev, order)
            m[i][k] = Poly.zero(reg)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f, g, var):
    """Resultant of two polynomials with respect to ``var``.

    Treats both as univariate in ``var`` with coefficients in the remaining
    variables and evaluates the Sylvester determinant fraction-free; the
    result is free of ``var``.
    """
    reg = f.registry
    if g.registry != reg:
        raise ValueError("resultant operands must share a registry")
    i = reg.index(var)

    def coeff_list(p):
        deg = p.degree_in(var)
        rows = [dict() for _ in range(deg + 1)]
        for mono, c in p.terms.items():
            rest = tuple(0 if j == i else e for j, e in enumerate(mono))
            rows[mono[i]][rest] = rows[mono[i]].get(rest, 0) + c
        return [Poly(reg, t) for t in rows]

    fc = coeff_list(f)
    gc = coeff_list(g)
    m, n = len(fc) - 1, len(gc) - 1
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    size = m + n
    if size == 0:
        return Poly.constant(reg, 1)
    zero = Poly.zero(reg)
    rows = []
    for k in range(n):
        row = [zero] * size
        for jj, c in enumerate(reversed(fc)):
            row[k + jj] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for jj, c in enumerate(reversed(gc)):
            row[k + jj] = c
        rows.append(row)
    return bareiss_determinant(rows)


def standard_monomials(gb):
    """Monomials outside the leading-term ideal of a grevlex basis.

    Finite exactly when every variable has a pure power among the leading
    monomials; otherwise returns an empty ``QuotientBasis`` flagged
    infinite rather than raising.
    """
    if not isinstance(gb.order, GrevLex):
        raise ValueError("standard monomials are defined against a grevlex basis")
    lts = gb.leading_monomials()
    n = len(gb.registry)
    bounds = [None] * n
    for lt in lts:
        support = [i for i, e in enumerate(lt) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lt[i] < bounds[i]:
                bounds[i] = lt[i]
        elif len(support) == 0:
            return QuotientBasis((), gb, True)  # unit ideal: zero ring
    if any(b is None for b in bounds):
        return QuotientBasis((), gb, False)

    monos = [()]
    for b in bounds:
        monos = [m + (e,) for m in monos for e in range(b)]
    standard = [
        m for m in monos if not any(mono_divides(lt, m) for lt in lts)
    ]
    standard.sort(key=gb.order.key)
    return QuotientBasis(tuple(standard), gb, True)
