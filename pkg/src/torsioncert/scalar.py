"""Field arithmetic underneath every matrix in the package.

Three scalar kinds share one zero-test contract:

* exact rationals, which are plain ``fractions.Fraction`` (``int`` is accepted
  anywhere a rational is),
* ``QuadExt``, elements a + b*sqrt(d) of a quadratic field Q(sqrt(d)) with a
  fixed squarefree discriminant d (mixing two different d is an error),
* ``ComplexF``, IEEE double complex numbers whose operations must stay finite.

Exact kinds test zero exactly.  ComplexF tests ``|x| <= tol * scale`` where
``scale`` is a caller-supplied magnitude reference (say, a matrix norm) and
``tol`` defaults to the module tolerance, 1e-9.  The module tolerance is set
once at program start and treated as read-only afterwards.

Text grammar: rationals ``p/q``, quadratic elements ``a + b*sqrt(d)``,
complex numbers ``re+imi`` printed with 17 significant digits.
"""

import math
import re as _re
from fractions import Fraction

from .errors import DivisionByZero, MixedExtension, NonFinite, ParseError

_DEFAULT_TOLERANCE = 1e-9
_tolerance = _DEFAULT_TOLERANCE


def zero_tolerance():
    """The module-wide relative tolerance for ComplexF zero tests."""
    return _tolerance


def set_zero_tolerance(tol):
    """Set the module tolerance.  Meant to be called once, at startup."""
    global _tolerance
    if not (isinstance(tol, (int, float)) and tol > 0 and math.isfinite(tol)):
        raise ValueError("tolerance must be a positive finite number")
    _tolerance = float(tol)


def _squarefree_factor(n):
    # n > 0; returns (s, d) with n = s*s*d and d squarefree
    s, d = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def sqrt_decompose(q):
    """Write a nonzero rational q as s^2 * d with d a squarefree integer.

    Returns (s, d), s a positive Fraction.  Used to put square roots of
    rational discriminants into Q(sqrt(d)) canonical form.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("cannot decompose zero")
    sign = -1 if q < 0 else 1
    n, m = abs(q.numerator), q.denominator
    # sqrt(n/m) = sqrt(n*m)/m
    s, d = _squarefree_factor(n * m)
    return Fraction(s, m), sign * d


_valid_d = set()


def _check_discriminant(d):
    if d in _valid_d:
        return d
    if not isinstance(d, int) or d in (0, 1):
        raise ValueError("discriminant must be a squarefree integer, not 0 or 1")
    _, sf = _squarefree_factor(abs(d))
    if sf != abs(d):
        raise ValueError("discriminant %d is not squarefree" % d)
    _valid_d.add(d)
    return d


class QuadExt:
    """a + b*sqrt(d) with rational a, b and fixed squarefree integer d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", _check_discriminant(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt values are immutable")

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise MixedExtension(
                    "cannot mix sqrt(%d) with sqrt(%d)" % (self.d, other.d))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.d,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def norm(self):
        """Field norm a^2 - d*b^2 (a rational)."""
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero in Q(sqrt(%d))" % self.d)
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.d == other.d or (self.b == 0 and other.b == 0)) \
                and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __str__(self):
        return scalar_str(self)

    def __repr__(self):
        return "QuadExt(%r, %r, %d)" % (self.a, self.b, self.d)


class ComplexF:
    """Double-precision complex scalar; every operation must stay finite."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0.0):
        if isinstance(re, complex):
            re, im = re.real, re.imag + im
        object.__setattr__(self, "re", float(re))
        object.__setattr__(self, "im", float(im))
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise NonFinite("non-finite complex value %r + %r i" % (re, im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexF values are immutable")

    def _coerce(self, other):
        if isinstance(other, ComplexF):
            return other
        if isinstance(other, (int, float, Fraction)):
            return ComplexF(float(other), 0.0)
        if isinstance(other, complex):
            return ComplexF(other.real, other.imag)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexF(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexF(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexF(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexF(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0.0:
            raise DivisionByZero("complex division by zero")
        return ComplexF((self.re * o.re + self.im * o.im) / den,
                        (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ComplexF(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def conjugate(self):
        return ComplexF(self.re, -self.im)

    def inverse(self):
        return ComplexF(1.0, 0.0) / self

    def __complex__(self):
        return complex(self.re, self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(complex(self.re, self.im))

    def __bool__(self):
        return self.re != 0.0 or self.im != 0.0

    def __str__(self):
        return scalar_str(self)

    def __repr__(self):
        return "ComplexF(%r, %r)" % (self.re, self.im)


def kind_of(x):
    """Scalar kind tag: 'rational', 'quadext', or 'complex'."""
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, QuadExt):
        return "quadext"
    if isinstance(x, (ComplexF, float, complex)):
        return "complex"
    raise TypeError("not a scalar: %r" % (x,))


def is_exact(x):
    return kind_of(x) != "complex"


def zero_test(x, tol=None, scale=1.0):
    """True when x counts as zero.

    Exact kinds compare exactly; complex kinds compare |x| <= tol * scale.
    ``scale`` is the caller's magnitude reference, e.g. a matrix norm
    (callers should clamp it below by 1 so the test stays meaningful for
    small data).
    """
    k = kind_of(x)
    if k == "rational":
        return x == 0
    if k == "quadext":
        return x.a == 0 and x.b == 0
    if tol is None:
        tol = _tolerance
    return abs(complex(x)) <= tol * scale


def conjugate(x):
    k = kind_of(x)
    if k == "rational":
        return x
    return x.conjugate()


def magnitude(x):
    """|x| as a float, through the complex embedding for exact kinds."""
    return abs(to_complex(x))


def to_complex(x):
    """Embed any scalar kind into a Python complex."""
    k = kind_of(x)
    if k == "rational":
        return complex(float(x), 0.0)
    if k == "quadext":
        root = math.sqrt(abs(x.d))
        if x.d > 0:
            return complex(float(x.a) + float(x.b) * root, 0.0)
        return complex(float(x.a), float(x.b) * root)
    return complex(x)


def to_complexf(x):
    """Embed any scalar kind into ComplexF."""
    if isinstance(x, ComplexF):
        return x
    return ComplexF(to_complex(x))


def scalar_inv(x):
    """Multiplicative inverse with a DivisionByZero error on zero input."""
    k = kind_of(x)
    if k == "rational":
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return Fraction(1, 1) / x
    return x.inverse()


# text form

def scalar_str(x):
    k = kind_of(x)
    if k == "rational":
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else \
            "%d/%d" % (f.numerator, f.denominator)
    if k == "quadext":
        if x.b == 0:
            return scalar_str(x.a)
        root = "sqrt(%d)" % x.d
        mag = abs(x.b)
        bpart = root if mag == 1 else "%s*%s" % (scalar_str(mag), root)
        if x.a == 0:
            return bpart if x.b > 0 else "-" + bpart
        op = " + " if x.b > 0 else " - "
        return scalar_str(x.a) + op + bpart
    x = to_complexf(x)
    return "%.17g%+.17gi" % (x.re, x.im)


_RATIONAL_RE = _re.compile(r"^[+-]?\d+(/\d+)?$")
_FLOAT_PART = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = _re.compile(
    r"^(?P<re>%s)?(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i$"
    % _FLOAT_PART)
_QUAD_RE = _re.compile(
    r"^(?:(?P<a>[+-]?\d+(?:/\d+)?)\s*(?=$|[+-]))?\s*"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?"
    r"sqrt\(\s*(?P<d>-?\d+)\s*\))?$")


def parse_scalar(text, kind=None):
    """Parse a scalar literal; ``kind`` forces one grammar when given.

    Without ``kind``, the shape of the text decides: a ``sqrt`` makes it a
    quadratic element, a trailing ``i`` or a decimal point makes it complex,
    otherwise it is rational.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty scalar literal")
    if kind is None:
        if "sqrt" in s:
            kind = "quadext"
        elif s.endswith("i") or "." in s or "e" in s or "E" in s:
            kind = "complex"
        else:
            kind = "rational"
    if kind == "rational":
        if not _RATIONAL_RE.match(s):
            raise ParseError("bad rational literal %r" % text)
        return Fraction(s)
    if kind == "quadext":
        compact = s.replace(" ", "")
        if "sqrt" not in compact:
            # rationally embedded entry; the matrix layer promotes it
            if not _RATIONAL_RE.match(compact):
                raise ParseError("bad quadratic literal %r" % text)
            return Fraction(compact)
        m = _QUAD_RE.match(compact)
        if not m or (m.group("a") is None and m.group("d") is None):
            raise ParseError("bad quadratic literal %r" % text)
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        if m.group("d") is None:
            raise ParseError("quadratic literal %r lacks a sqrt part" % text)
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
        try:
            return QuadExt(a, b, int(m.group("d")))
        except ValueError as e:
            raise ParseError(str(e)) from None
    if kind == "complex":
        compact = s.replace(" ", "")
        if compact.endswith("i"):
            m = _COMPLEX_RE.match(compact)
            if m:
                re_part = float(m.group("re")) if m.group("re") else 0.0
                im_text = m.group("im")
                if im_text in ("+", "-"):
                    im_text += "1"
                return ComplexF(re_part, float(im_text))
            if compact in ("i",):
                return ComplexF(0.0, 1.0)
            raise ParseError("bad complex literal %r" % text)
        try:
            return ComplexF(float(compact), 0.0)
        except ValueError:
            raise ParseError("bad complex literal %r" % text) from None
    raise ParseError("unknown scalar kind %r" % kind)
