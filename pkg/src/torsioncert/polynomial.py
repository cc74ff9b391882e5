"""Laurent polynomials in t over any scalar kind, and multivariate
polynomials over the rationals in the four variables x, y, z, u (trace
coordinates plus the auxiliary eigenvalue u).

Laurent polynomials are dictionaries exponent -> coefficient with no zero
coefficients stored; the zero polynomial is the empty map and its degree
span is the NEG_INFINITY sentinel.  Torsion quotients are only defined up
to units +-t^k, so polynomials are never normalized behind the caller's
back; the unit-invariant quantity is the degree span (max minus min
exponent).

Multivariate polynomials keep exact rational coefficients only, since the
locus identities they exist to express are exact.  Elimination of u goes
through Sylvester resultants; the squarefree/content normalization uses a
primitive-PRS gcd, the only factorization machinery in the package.

Determinants of matrices with polynomial entries are computed division-free
(dynamic programming over column subsets), which treats t exactly for every
coefficient kind.
"""

import re as _re
from fractions import Fraction
from math import gcd as _int_gcd

from . import scalar as _s
from .errors import (DegenerateInput, MixedScalarKind, ParseError,
                     ZeroDenominator)

NEG_INFINITY = float("-inf")


def _coeff_is_zero(c):
    if isinstance(c, _s.QuadExt):
        return c.a == 0 and c.b == 0
    if isinstance(c, _s.ComplexF):
        return c.re == 0.0 and c.im == 0.0
    return c == 0


def _cop(a, b, op):
    try:
        return op(a, b)
    except TypeError:
        raise MixedScalarKind(
            "cannot combine %s and %s coefficients"
            % (_s.kind_of(a), _s.kind_of(b))) from None


class LaurentPoly:
    """A Laurent polynomial in t: finite map exponent -> coefficient.

    >>> p = LaurentPoly({1: 1, -1: 1})
    >>> print(p * p)
    t^-2 + 2 + t^2
    >>> (p * p).degree_span()
    4
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for e, c in (coeffs or {}).items():
            if not isinstance(e, int):
                raise TypeError("exponent %r is not an integer" % (e,))
            if not _coeff_is_zero(c):
                clean[e] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def t_power(cls, k, coeff=1):
        return cls({k: coeff})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if e in coeffs:
                coeffs[e] = _cop(coeffs[e], c, lambda a, b: a + b)
            else:
                coeffs[e] = c
        return LaurentPoly(coeffs)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            coeffs = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    t = _cop(c1, c2, lambda a, b: a * b)
                    if e in coeffs:
                        coeffs[e] = _cop(coeffs[e], t, lambda a, b: a + b)
                    else:
                        coeffs[e] = t
            return LaurentPoly(coeffs)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return LaurentPoly(
            {e: _cop(c, cc, lambda a, b: a * b)
             for e, cc in self.coeffs.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else NEG_INFINITY

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INFINITY

    def degree_span(self):
        if not self.coeffs:
            return NEG_INFINITY
        return max(self.coeffs) - min(self.coeffs)

    def max_coeff_magnitude(self):
        if not self.coeffs:
            return 0.0
        return max(_s.magnitude(c) for c in self.coeffs.values())

    def trim(self, tol=None):
        """Drop coefficients below tol * (largest coefficient magnitude).

        Floating pipelines use this before reading degrees off, so that
        numerically induced phantom leading/trailing terms do not inflate
        the span.  Exact coefficients pass through untouched.
        """
        if not self.coeffs:
            return self
        if all(_s.is_exact(c) for c in self.coeffs.values()):
            return self
        if tol is None:
            tol = _s.zero_tolerance()
        cutoff = tol * self.max_coeff_magnitude()
        return LaurentPoly({e: c for e, c in self.coeffs.items()
                            if _s.magnitude(c) > cutoff})

    def coefficient(self, e):
        return self.coeffs.get(e, 0)

    def evaluate(self, t):
        out = None
        for e, c in self.coeffs.items():
            term = c * t ** e if e >= 0 else c * (1 / t) ** (-e)
            out = term if out is None else out + term
        return 0 if out is None else out

    def map_coeffs(self, fn):
        return LaurentPoly({e: fn(c) for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return laurent_str(self)

    def __repr__(self):
        return "LaurentPoly(%r)" % laurent_str(self)


def degree_span(p):
    return p.degree_span()


def rational_degree(num, den):
    """Degree of the quotient num/den: span(num) - span(den).

    The zero numerator passes the NEG_INFINITY sentinel through.
    """
    if den.is_zero():
        raise ZeroDenominator("torsion denominator is the zero polynomial")
    if num.is_zero():
        return NEG_INFINITY
    return num.degree_span() - den.degree_span()


def _coeff_str(c):
    text = _s.scalar_str(c)
    # wrap anything whose body contains a sign, so terms stay parseable
    if any(ch in "+-" for ch in text[1:]):
        return "(%s)" % text
    return text


def laurent_str(p):
    if not p.coeffs:
        return "0"
    pieces = []
    for e in sorted(p.coeffs):
        c = p.coeffs[e]
        text = _coeff_str(c)
        neg = text.startswith("-")
        mag = text[1:] if neg else text
        if e == 0:
            body = mag
        else:
            tpart = "t" if e == 1 else "t^%d" % e
            body = tpart if mag == "1" else "%s*%s" % (mag, tpart)
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


def _split_terms(text):
    # split on top-level + and -, respecting parentheses and exponent signs
    terms, sign, buf, depth = [], 1, [], 0
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in "^eE*(," and buf:
            terms.append((sign, "".join(buf).strip()))
            sign = -1 if ch == "-" else 1
            buf = []
        elif ch in "+-" and depth == 0 and not buf:
            sign = sign * (-1 if ch == "-" else 1)
        else:
            buf.append(ch)
        if not ch.isspace():
            prev = ch
    if buf:
        terms.append((sign, "".join(buf).strip()))
    return terms


_T_RE = _re.compile(r"^(?:(?P<coeff>.+?)\s*\*\s*)?t(?:\^(?P<exp>-?\d+))?$")


def parse_laurent(text, kind=None):
    """Parse ``3*t^-2 + 1 - t^4`` style Laurent literals."""
    s = text.strip()
    if not s:
        raise ParseError("empty Laurent literal")
    if s == "0":
        return LaurentPoly.zero()
    coeffs = {}
    for sign, term in _split_terms(s):
        if not term:
            raise ParseError("bad Laurent literal %r" % text)
        m = _T_RE.match(term)
        if m:
            e = int(m.group("exp")) if m.group("exp") else 1
            ctext = m.group("coeff")
            c = _parse_poly_coeff(ctext, kind) if ctext else 1
        else:
            e = 0
            c = _parse_poly_coeff(term, kind)
        c = sign * c if sign < 0 else c
        if e in coeffs:
            coeffs[e] = coeffs[e] + c
        else:
            coeffs[e] = c
    return LaurentPoly(coeffs)


def _parse_poly_coeff(text, kind):
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    v = _s.parse_scalar(t, kind=kind)
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def laurent_unit_match(p, q, tol=None):
    """Is p = +- t^k q for some k?  Returns (True, k, sign) or (False, 0, 0).

    Exact coefficients compare exactly; floating coefficients compare with
    a relative tolerance against the largest coefficient.
    """
    if p.is_zero() or q.is_zero():
        ok = p.is_zero() and q.is_zero()
        return (ok, 0, 1 if ok else 0)
    if p.degree_span() != q.degree_span():
        return (False, 0, 0)
    k = p.min_degree() - q.min_degree()
    shifted = q.shift(k)
    exact = all(_s.is_exact(c) for c in list(p.coeffs.values()) +
                list(shifted.coeffs.values()))
    for sign in (1, -1):
        cand = shifted if sign == 1 else -shifted
        if exact:
            if p == cand:
                return (True, k, sign)
        else:
            diff = p - cand
            bound = (tol if tol is not None else _s.zero_tolerance()) \
                * max(1.0, p.max_coeff_magnitude())
            if all(_s.magnitude(c) <= bound for c in diff.coeffs.values()):
                return (True, k, sign)
    return (False, 0, 0)


def poly_matrix_det(rows):
    """Determinant of a square grid of LaurentPoly (or any ring) entries.

    Division-free: dynamic programming over column subsets, so degrees in t
    stay exact whatever the coefficients are.  Cost n * 2^n ring products,
    fine at deficiency-one desk scale.
    """
    n = len(rows)
    assert all(len(r) == n for r in rows), "determinant needs a square grid"
    if n == 0:
        raise ValueError("empty matrix")
    zero = rows[0][0] - rows[0][0]

    def ringzero(v):
        if isinstance(v, LaurentPoly):
            return v.is_zero()
        if isinstance(v, MultiPoly):
            return v.is_zero()
        return v == zero

    cur = {}
    for j in range(n):
        if not ringzero(rows[0][j]):
            cur[1 << j] = rows[0][j]
    for k in range(1, n):
        nxt = {}
        row = rows[k]
        for mask, val in cur.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit or ringzero(row[j]):
                    continue
                term = val * row[j]
                if bin(mask >> (j + 1)).count("1") & 1:
                    term = -term
                key = mask | bit
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        cur = nxt
    return cur.get((1 << n) - 1, zero)


# ---------------------------------------------------------------------------
# multivariate polynomials over Q in x, y, z, u

MP_VARS = ("x", "y", "z", "u")
_ARITY = 4


class MultiPoly:
    """Polynomial in x, y, z, u with exact rational coefficients.

    Terms map exponent 4-tuples to nonzero Fractions.  Printed in graded
    lexicographic order, highest first: ``2*x*y*z - x^2 - y^2 - 3*z^2 + 3``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for ex, c in (terms or {}).items():
            ex = tuple(ex)
            if len(ex) != _ARITY or any(not isinstance(e, int) or e < 0
                                        for e in ex):
                raise ValueError("bad exponent vector %r" % (ex,))
            c = Fraction(c)
            if c != 0:
                clean[ex] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0, 0): Fraction(c)})

    @classmethod
    def variable(cls, name):
        i = MP_VARS.index(name)
        ex = [0] * _ARITY
        ex[i] = 1
        return cls({tuple(ex): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in ex) for ex in self.terms)

    def constant_value(self):
        return self.terms.get((0, 0, 0, 0), Fraction(0))

    def __add__(self, other):
        other = _mp_coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for ex, c in other.terms.items():
            terms[ex] = terms.get(ex, Fraction(0)) + c
        return MultiPoly(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _mp_coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _mp_coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return MultiPoly({ex: -c for ex, c in self.terms.items()})

    def __mul__(self, other):
        other = _mp_coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                ex = tuple(a + b for a, b in zip(e1, e2))
                terms[ex] = terms.get(ex, Fraction(0)) + c1 * c2
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MultiPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        c = Fraction(c)
        return MultiPoly({ex: c * cc for ex, cc in self.terms.items()})

    def degree_in(self, var):
        i = MP_VARS.index(var) if isinstance(var, str) else var
        if not self.terms:
            return -1
        return max(ex[i] for ex in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(ex) for ex in self.terms)

    def derivative(self, var):
        i = MP_VARS.index(var) if isinstance(var, str) else var
        terms = {}
        for ex, c in self.terms.items():
            if ex[i] == 0:
                continue
            nex = list(ex)
            nex[i] -= 1
            terms[tuple(nex)] = terms.get(tuple(nex), Fraction(0)) + c * ex[i]
        return MultiPoly(terms)

    def coeff_in(self, var, k):
        """The coefficient of var^k, a MultiPoly with that variable cleared."""
        i = MP_VARS.index(var) if isinstance(var, str) else var
        terms = {}
        for ex, c in self.terms.items():
            if ex[i] == k:
                nex = list(ex)
                nex[i] = 0
                terms[tuple(nex)] = c
        return MultiPoly(terms)

    def evaluate(self, point):
        return multi_eval(self, point)

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex largest term."""
        ex = max(self.terms, key=_grlex_key)
        return ex, self.terms[ex]

    def __eq__(self, other):
        other = _mp_coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return multi_str(self)

    def __repr__(self):
        return "MultiPoly(%r)" % multi_str(self)


def _mp_coerce(v):
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return MultiPoly.constant(v)
    return None


def _grlex_key(ex):
    return (sum(ex), ex)


def multi_str(p):
    if not p.terms:
        return "0"
    pieces = []
    for ex in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[ex]
        neg = c < 0
        mag = -c if neg else c
        factors = []
        for name, e in zip(MP_VARS, ex):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if not factors:
            body = _s.scalar_str(mag)
        else:
            vpart = "*".join(factors)
            body = vpart if mag == 1 else "%s*%s" % (_s.scalar_str(mag), vpart)
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


_MP_FACTOR_RE = _re.compile(r"^(?P<var>[xyzu])(?:\^(?P<exp>\d+))?$")


def parse_multi(text):
    """Parse ``2*x*y*z - x^2 - y^2 - 3*z^2 + 3`` style literals."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial literal")
    if s == "0":
        return MultiPoly.zero()
    out = {}
    for sign, term in _split_terms(s):
        coeff = Fraction(1)
        ex = [0] * _ARITY
        saw = False
        for factor in term.replace(" ", "").split("*"):
            if not factor:
                raise ParseError("bad term %r" % term)
            m = _MP_FACTOR_RE.match(factor)
            if m:
                i = MP_VARS.index(m.group("var"))
                ex[i] += int(m.group("exp") or 1)
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ParseError("bad factor %r in %r"
                                     % (factor, text)) from None
            saw = True
        if not saw:
            raise ParseError("empty term in %r" % text)
        key = tuple(ex)
        out[key] = out.get(key, Fraction(0)) + sign * coeff
    return MultiPoly(out)


def multi_eval(p, point):
    """Evaluate at four scalars (any kind); exact stays exact."""
    if len(point) != _ARITY:
        raise ValueError("need exactly four coordinates")
    out = None
    powers = [dict() for _ in range(_ARITY)]

    def pw(i, e):
        if e == 0:
            return 1
        if e not in powers[i]:
            powers[i][e] = point[i] * pw(i, e - 1)
        return powers[i][e]

    for ex, c in p.terms.items():
        term = c
        for i, e in enumerate(ex):
            if e:
                term = term * pw(i, e)
        out = term if out is None else out + term
    if out is None:
        return Fraction(0)
    if isinstance(out, Fraction) and out.denominator == 1:
        return int(out)
    return out


def resultant_in_u(p, q):
    """Sylvester resultant eliminating u; the result is u-free.

    Both inputs must actually involve u.
    """
    m, n = p.degree_in("u"), q.degree_in("u")
    if m <= 0 or n <= 0:
        raise DegenerateInput("resultant_in_u needs positive u-degree "
                              "in both polynomials")
    pc = [p.coeff_in("u", m - i) for i in range(m + 1)]
    qc = [q.coeff_in("u", n - i) for i in range(n + 1)]
    size = m + n
    zero = MultiPoly.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (m - 1 - i))
    return poly_matrix_det(rows)


# gcd machinery: enough for content/primitive normalization and the
# squarefree part, nothing more.

def _first_var(p, q=None):
    for i in range(_ARITY):
        if p.degree_in(i) > 0 or (q is not None and q.degree_in(i) > 0):
            return i
    return None


def _as_univar(p, i):
    out = {}
    for ex, c in p.terms.items():
        k = ex[i]
        nex = list(ex)
        nex[i] = 0
        out.setdefault(k, {})[tuple(nex)] = c
    return {k: MultiPoly(t) for k, t in out.items()}


def _from_univar(coeffs, i):
    terms = {}
    for k, poly in coeffs.items():
        for ex, c in poly.terms.items():
            nex = list(ex)
            nex[i] = k
            terms[tuple(nex)] = c
    return MultiPoly(terms)


def mp_content(p, i):
    """Content of p seen as univariate in variable i: gcd of coefficients."""
    coeffs = list(_as_univar(p, i).values())
    g = MultiPoly.zero()
    for c in coeffs:
        g = mp_gcd(g, c)
    return g


class InexactDivision(ArithmeticError):
    pass


def mp_divexact(p, q):
    """Exact division p / q; raises InexactDivision on a remainder."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    r = p
    quot = {}
    qex, qc = q.leading_term()
    while not r.is_zero():
        rex, rc = r.leading_term()
        dex = tuple(a - b for a, b in zip(rex, qex))
        if any(e < 0 for e in dex):
            raise InexactDivision("division is not exact")
        c = rc / qc
        quot[dex] = quot.get(dex, Fraction(0)) + c
        r = r - MultiPoly({dex: c}) * q
    return MultiPoly(quot)


def _pseudo_rem(p, q, i):
    # remainder of lc(q)^k * p under division by q, univariate in variable i
    n = q.degree_in(i)
    d = q.coeff_in(i, n)
    r = p
    vi = [0] * _ARITY
    vi[i] = 1
    while not r.is_zero() and r.degree_in(i) >= n:
        m = r.degree_in(i)
        lr = r.coeff_in(i, m)
        shift = MultiPoly({tuple(e * (m - n) for e in vi): Fraction(1)})
        r = d * r - lr * shift * q
    return r


def mp_gcd(p, q):
    """Primitive-PRS gcd over Q[x, y, z, u], normalized primitive."""
    if p.is_zero():
        return _normalize_sign(q)
    if q.is_zero():
        return _normalize_sign(p)
    i = _first_var(p, q)
    if i is None:
        return MultiPoly.constant(1)
    if p.degree_in(i) == 0:
        return mp_gcd(p, mp_content(q, i))
    if q.degree_in(i) == 0:
        return mp_gcd(mp_content(p, i), q)
    cp = mp_content(p, i)
    cq = mp_content(q, i)
    c = mp_gcd(cp, cq)
    a = mp_divexact(p, cp)
    b = mp_divexact(q, cq)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, i)
        if r.is_zero():
            a, b = b, r
            break
        rc = mp_content(r, i)
        a, b = b, mp_divexact(r, rc)
    g = mp_divexact(a, mp_content(a, i))
    return _normalize_sign(c * g)


def _normalize_sign(p):
    if p.is_zero():
        return p
    _, lc = p.leading_term()
    return -p if lc < 0 else p


def primitive_normalize(p):
    """Integer-primitive form with positive leading coefficient.

    Clears denominators, divides out the integer content, and flips the
    sign so the graded-lex leading coefficient is positive.
    """
    if p.is_zero():
        return p
    denlcm = 1
    for c in p.terms.values():
        denlcm = denlcm * c.denominator // _int_gcd(denlcm, c.denominator)
    scaled = {ex: c * denlcm for ex, c in p.terms.items()}
    g = 0
    for c in scaled.values():
        g = _int_gcd(g, abs(int(c)))
    out = MultiPoly({ex: Fraction(int(c) // g) for ex, c in scaled.items()})
    return _normalize_sign(out)


def squarefree_part(p):
    """The product of the distinct irreducible factors of p, primitive.

    Computed as p / gcd(p, all first partials), then normalized.
    """
    if p.is_zero():
        raise ValueError("squarefree part of zero")
    p = primitive_normalize(p)
    g = p
    for v in range(_ARITY):
        if p.degree_in(v) > 0:
            g = mp_gcd(g, p.derivative(v))
    if g.is_constant():
        return p
    return primitive_normalize(mp_divexact(p, g))


def factor_multiplicity(p, factor):
    """Largest m with factor^m dividing p (both nonzero, factor nonconstant)."""
    if factor.is_constant():
        raise ValueError("multiplicity of a constant factor is not defined")
    m = 0
    r = primitive_normalize(p)
    factor = primitive_normalize(factor)
    while True:
        try:
            r = mp_divexact(r, factor)
        except InexactDivision:
            return m
        m += 1
