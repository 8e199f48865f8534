"""Exact multivariate polynomial arithmetic over Q with pluggable monomial orders.

Polynomials are sparse maps from exponent tuples to nonzero ``Fraction``
coefficients, tied to an immutable variable registry.  Mixing registries is
an error: the classification pipeline switches between several variable
worlds (trig variables, the half-angle variable, circulation parameters)
and silent coercion between them is the main source of bugs.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

# Coefficients are exact rationals throughout; floats only appear when a
# caller explicitly evaluates a polynomial numerically.
Rational = Fraction

# A monomial is a tuple of non-negative exponents, one per registry variable.
Monomial = tuple


class RegistryMismatchError(ValueError):
    """Raised when two polynomials over different registries are combined."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, remainder):
        self.remainder = remainder
        super().__init__(f"division is not exact; remainder {remainder}")


class VarRegistry:
    """Ordered collection of distinct variable names.

    The tuple order fixes the exponent positions of every monomial and the
    default variable precedence of the monomial orders.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarRegistry) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarRegistry({', '.join(self.names)})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} (registry has {self.names})") from None

    def contains(self, name):
        return name in self._index


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Quotient monomial a / b; caller must ensure divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


class MonomialOrder:
    """Total multiplicative monomial order exposed as a sort key function.

    ``key(m)`` returns a tuple that sorts ascending in the order, so the
    leading monomial of a polynomial is the key-maximum of its support.
    """

    kind = "abstract"

    def key(self, exps):
        raise NotImplementedError

    def sort_terms(self, terms):
        """Terms of a coefficient map sorted leading-first."""
        return sorted(terms.items(), key=lambda t: self.key(t[0]), reverse=True)


class Lex(MonomialOrder):
    kind = "lex"

    def __init__(self, vars=None):
        # vars: variable indices in decreasing precedence; None = registry order.
        self.vars = tuple(vars) if vars is not None else None

    def key(self, exps):
        if self.vars is None:
            return exps
        return tuple(exps[i] for i in self.vars)

    def __repr__(self):
        return "lex" if self.vars is None else f"lex{self.vars}"


class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    Higher total degree wins; ties break in favour of the monomial whose
    last differing exponent is smaller.
    """

    kind = "grevlex"

    def __init__(self, vars=None):
        self.vars = tuple(vars) if vars is not None else None

    def key(self, exps):
        if self.vars is not None:
            exps = tuple(exps[i] for i in self.vars)
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self):
        return "grevlex" if self.vars is None else f"grevlex{self.vars}"


class Elimination(MonomialOrder):
    """Block order: any monomial touching the first block beats any that does not."""

    kind = "elimination"

    def __init__(self, block, rest, outer=None, inner=None):
        self.block = tuple(block)
        self.rest = tuple(rest)
        self.outer = outer if outer is not None else GrevLex()
        self.inner = inner if inner is not None else GrevLex()

    def key(self, exps):
        head = tuple(exps[i] for i in self.block)
        tail = tuple(exps[i] for i in self.rest)
        return (self.outer.key(head), self.inner.key(tail))

    def __repr__(self):
        return f"elimination(block={self.block}, rest={self.rest})"


def lex(registry, names=None):
    """Lex order; ``names`` optionally gives an explicit precedence list."""
    if names is None:
        return Lex()
    return Lex([registry.index(n) for n in names])


def grevlex(registry, names=None):
    if names is None:
        return GrevLex()
    return GrevLex([registry.index(n) for n in names])


def elimination(registry, drop, inner_names=None, outer=None, inner=None):
    """Block order eliminating the variables in ``drop``.

    Remaining variables keep registry precedence unless ``inner_names``
    spells out a different one.  Both blocks default to grevlex internally.
    """
    block = [registry.index(n) for n in drop]
    if inner_names is not None:
        rest = [registry.index(n) for n in inner_names]
        if set(rest) & set(block):
            raise ValueError("inner_names overlaps the eliminated block")
    else:
        rest = [i for i in range(len(registry)) if i not in set(block)]
    return Elimination(block, rest, outer=outer, inner=inner)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry, terms=None):
        self.registry = registry
        clean = {}
        if terms:
            n = len(registry)
            for mono, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent tuple {mono} for registry of size {n}")
                clean[tuple(mono)] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, registry):
        return cls(registry, {})

    @classmethod
    def constant(cls, registry, value):
        zero = (0,) * len(registry)
        return cls(registry, {zero: _as_fraction(value)})

    @classmethod
    def variable(cls, registry, name, power=1):
        exps = [0] * len(registry)
        exps[registry.index(name)] = power
        return cls(registry, {tuple(exps): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(mono_degree(m) == 0 for m in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.registry.index(name)
        return max(m[i] for m in self.terms)

    def uses(self, name):
        i = self.registry.index(name)
        return any(m[i] for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.registry, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.registry == other.registry and self.terms == other.terms

    def __hash__(self):
        return hash((self.registry, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if self.registry != other.registry:
            raise RegistryMismatchError(
                f"cannot mix registries {self.registry} and {other.registry}"
            )

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.registry, other)
        if isinstance(other, Poly):
            self._check(other)
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Fraction(0)) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Poly._raw(self.registry, res)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.registry, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Fraction(0)) - c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Poly._raw(self.registry, res)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero(self.registry)
            other = _as_fraction(other)
            return Poly._raw(self.registry, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, Fraction(0)) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Poly._raw(self.registry, res)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = _as_fraction(scalar)
        if scalar == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (Fraction(1) / scalar)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.constant(self.registry, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    @classmethod
    def _raw(cls, registry, terms):
        p = object.__new__(cls)
        p.registry = registry
        p.terms = terms
        return p

    # -- leading data ------------------------------------------------------

    def leading_term(self, order):
        """The order-maximal (monomial, coefficient) pair; errors on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order):
        return self.leading_term(order)[1]

    def sorted_terms(self, order):
        return order.sort_terms(self.terms)

    # -- normalisation -----------------------------------------------------

    def content_strip(self, order=None):
        """Split ``p = c * q`` with ``q`` integer-primitive and positive-leading.

        Returns ``(c, q)``.  The zero polynomial yields ``(1, 0)``.
        """
        if not self.terms:
            return Fraction(1), self
        if order is None:
            order = GrevLex()
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        if self.leading_coefficient(order) < 0:
            content = -content
        q = Poly._raw(self.registry, {m: c / content for m, c in self.terms.items()})
        return content, q

    def primitive(self, order=None):
        return self.content_strip(order)[1]

    # -- division ----------------------------------------------------------

    def divide_exact(self, divisor, order=None):
        """Exact quotient ``q`` with ``q * divisor == self``.

        Raises :class:`ExactDivisionError` carrying the nonzero remainder
        when the division does not come out even.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if order is None:
            order = GrevLex()
        quotient, remainder = self.divmod_single(divisor, order)
        if not remainder.is_zero():
            raise ExactDivisionError(remainder)
        return quotient

    def try_divide(self, divisor, order=None):
        """Exact quotient, or None when the division is not exact."""
        try:
            return self.divide_exact(divisor, order)
        except ExactDivisionError:
            return None

    def divmod_single(self, divisor, order):
        """Division with remainder by a single divisor: self = q*d + r.

        No term of ``r`` is divisible by the leading monomial of ``d``.
        """
        dm, dc = divisor.leading_term(order)
        work = dict(self.terms)
        q = {}
        r = {}
        while work:
            m = max(work, key=order.key)
            c = work.pop(m)
            if mono_divides(dm, m):
                qm = mono_div(m, dm)
                qc = c / dc
                q[qm] = q.get(qm, Fraction(0)) + qc
                for m2, c2 in divisor.terms.items():
                    if m2 == dm:
                        continue
                    mm = mono_mul(qm, m2)
                    s = work.get(mm, Fraction(0)) - qc * c2
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
            else:
                r[m] = c
        return Poly._raw(self.registry, q), Poly._raw(self.registry, r)

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, values):
        """Evaluate at a point given as ``{name: value}``; missing names error.

        Exact when all values are int/Fraction; float values give floats.
        """
        point = [values[n] for n in self.registry.names]
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, mono):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def subs(self, mapping):
        """Substitute polynomials (or scalars) for variables, same registry."""
        reg = self.registry
        images = []
        for name in reg.names:
            if name in mapping:
                v = mapping[name]
                if isinstance(v, (int, Fraction)):
                    v = Poly.constant(reg, v)
                elif v.registry != reg:
                    raise RegistryMismatchError("substitution image in a different registry")
                images.append(v)
            else:
                images.append(Poly.variable(reg, name))
        result = Poly.zero(reg)
        cache = {}
        for mono, coeff in self.terms.items():
            term = Poly.constant(reg, coeff)
            for i, e in enumerate(mono):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    term = term * cache[(i, e)]
            result = result + term
        return result

    def map_to(self, registry, rename=None):
        """Re-express the polynomial in another registry.

        Every used variable must exist in the target (possibly via the
        ``rename`` map); unused variables may be dropped or added freely.
        """
        rename = rename or {}
        positions = {}
        for i, name in enumerate(self.registry.names):
            target = rename.get(name, name)
            if registry.contains(target):
                positions[i] = registry.index(target)
        n = len(registry)
        terms = {}
        for mono, coeff in self.terms.items():
            exps = [0] * n
            for i, e in enumerate(mono):
                if not e:
                    continue
                if i not in positions:
                    raise KeyError(
                        f"variable {self.registry.names[i]!r} is used but missing "
                        f"from target registry {registry}"
                    )
                exps[positions[i]] = e
            terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + coeff
        return Poly(registry, terms)

    def coefficients_in(self, names):
        """Group terms by their monomial in ``names``.

        Returns ``{sub-monomial: Poly}`` where each value polynomial is free
        of the grouped variables.  Used to read off parametric coefficients,
        e.g. the mu-monomial coefficients of a reduction remainder.
        """
        idx = [self.registry.index(n) for n in names]
        idx_set = set(idx)
        groups = {}
        for mono, coeff in self.terms.items():
            sub = tuple(mono[i] for i in idx)
            rest = tuple(0 if i in idx_set else e for i, e in enumerate(mono))
            bucket = groups.setdefault(sub, {})
            bucket[rest] = bucket.get(rest, Fraction(0)) + coeff
        return {sub: Poly(self.registry, bucket) for sub, bucket in groups.items()}

    # -- text format ---------------------------------------------------------

    def format(self, order=None):
        """Canonical text: terms sorted leading-first under ``order``."""
        if not self.terms:
            return "0"
        if order is None:
            order = GrevLex()
        parts = []
        for mono, coeff in self.sorted_terms(order):
            factors = []
            for name, e in zip(self.registry.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = _format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _format_rational(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append((" + " if coeff > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return self.format()

    @classmethod
    def parse(cls, registry, text):
        return _parse_poly(registry, text)


def _format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize polynomial text at {text[pos:]!r}")
            break
        pos = m.end()
        if m.lastgroup == "num":
            out.append(("num", int(m.group("num"))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def _parse_poly(registry, text):
    """Parse the canonical text format: terms like ``-3/2*x^2*y + z - 7``.

    ``^`` for powers; ``*`` optional between a coefficient and its monomial.
    Parentheses are not part of the format.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    n = len(registry)
    result = {}
    i = 0

    def term_done(coeff, exps):
        key = tuple(exps)
        s = result.get(key, Fraction(0)) + coeff
        if s:
            result[key] = s
        else:
            result.pop(key, None)

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in (("op", "-"), ("op", "+")):
            if tokens[i] == ("op", "-"):
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * n
        saw_factor = False
        expect_factor = True
        while i < len(tokens):
            kind, value = tokens[i]
            if kind == "num":
                num = value
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "/"):
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num":
                        raise ValueError(f"malformed fraction in {text!r}")
                    coeff *= Fraction(num, tokens[i + 1][1])
                    i += 2
                else:
                    coeff *= num
                saw_factor = True
            elif kind == "name":
                j = registry.index(value)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "^"):
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num":
                        raise ValueError(f"malformed power in {text!r}")
                    power = tokens[i + 1][1]
                    i += 2
                exps[j] += power
                saw_factor = True
            elif (kind, value) == ("op", "*"):
                i += 1
                expect_factor = True
                continue
            else:
                break
            expect_factor = False
        if not saw_factor or expect_factor:
            raise ValueError(f"malformed term in {text!r}")
        term_done(coeff, exps)
        if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] not in "+-":
            raise ValueError(f"unexpected {tokens[i][1]!r} in {text!r}")
    return Poly(registry, result)
