"""Matrix representations of free groups: evaluation of words and
group-ring elements, symmetric powers, duality and circle-homology checks,
and numeric solving for parabolic representations of two-bridge-style
presentations.

A representation assigns an invertible n x n matrix over one scalar kind to
each generator of an alphabet.  ``sl_flag`` asserts determinant-1 images,
which is checked at construction.
"""

from fractions import Fraction

from . import linalg as _la
from . import scalar as _s
from .errors import (AlphabetMismatch, MixedExtension, MixedScalarKind,
                     NoRootFound, NotSL2, NotTwoByTwo, ParseError,
                     ReducibleOnly, ScalarEmbedding)
from .freegroup import GroupRingElem, Word
from .linalg import Matrix
from .polynomial import MultiPoly, mp_gcd


class Representation:
    """Generator-to-matrix assignment, evaluated on words multiplicatively.

    Images are immutable; inverse images are computed once and cached.
    """

    def __init__(self, alphabet, images, sl_flag=False):
        images = list(images)
        if len(images) != len(alphabet):
            raise ValueError("need one image per generator")
        n = images[0].rows
        for m in images:
            if not isinstance(m, Matrix) or m.rows != m.cols or m.rows != n:
                raise ValueError("images must be square matrices of one size")
        kinds = {m.scalar_kind for m in images}
        if len(kinds) > 1:
            # promote rationals into a richer kind if one is present
            if kinds == {"rational", "quadext"} or kinds == {"rational", "complex"}:
                rich = (kinds - {"rational"}).pop()
                if rich == "complex":
                    images = [m.map(_s.to_complexf) for m in images]
                else:
                    d = next(e.d for m in images if m.scalar_kind == "quadext"
                             for row in m.entries for e in row
                             if isinstance(e, _s.QuadExt))
                    images = [m.map(lambda v: v if isinstance(v, _s.QuadExt)
                                    else _s.QuadExt(v, 0, d)) for m in images]
            else:
                raise ValueError("images mix scalar kinds %r" % kinds)
        self.alphabet = alphabet
        self.images = tuple(images)
        self.n = n
        self.sl_flag = bool(sl_flag)
        self.scalar_kind = self.images[0].scalar_kind
        self._inv = {}
        for i, m in enumerate(self.images):
            d = m.det()
            scale = max(1.0, m.max_row_norm())
            if _s.zero_test(d, scale=scale):
                raise ValueError("image of generator %r is singular"
                                 % alphabet.names[i])
            if self.sl_flag and not _s.zero_test(d - 1, scale=scale):
                raise ValueError("sl_flag set but det(image %r) = %s"
                                 % (alphabet.names[i], d))

    def image(self, i):
        return self.images[i]

    def image_inverse(self, i):
        if i not in self._inv:
            self._inv[i] = self.images[i].inverse()
        return self._inv[i]

    def eval_word(self, w):
        """The product of generator images along the word; identity for 1."""
        if not isinstance(w, Word):
            raise TypeError("expected a Word")
        if w.alphabet != self.alphabet:
            raise AlphabetMismatch("word over %r, rep over %r"
                                   % (w.alphabet, self.alphabet))
        out = Matrix.identity(self.n)
        for l in w.letters:
            out = out * (self.images[l - 1] if l > 0
                         else self.image_inverse(-l - 1))
        return out

    def eval_ring_elem(self, e):
        """Sum of coeff * eval_word over the terms; a ring homomorphism."""
        if not isinstance(e, GroupRingElem):
            raise TypeError("expected a GroupRingElem")
        if e.alphabet != self.alphabet:
            raise AlphabetMismatch("element over %r, rep over %r"
                                   % (e.alphabet, self.alphabet))
        out = Matrix.zero(self.n)
        try:
            for w, c in e.terms.items():
                out = out + self.eval_word(w).scale(c)
        except (TypeError, MixedScalarKind, MixedExtension):
            raise ScalarEmbedding(
                "coefficient does not embed into %s entries"
                % self.scalar_kind) from None
        return out

    def to_complexf(self):
        """The same representation with entries pushed into ComplexF."""
        return Representation(self.alphabet,
                              [m.map(_s.to_complexf) for m in self.images],
                              sl_flag=self.sl_flag)

    def conjugated(self, p):
        """p . alpha . p^-1, for change-of-basis experiments."""
        pinv = p.inverse()
        return Representation(self.alphabet,
                              [p * m * pinv for m in self.images],
                              sl_flag=self.sl_flag)

    def description(self):
        tag = "SL" if self.sl_flag else "GL"
        return "rank-%d %s(%d) representation of <%s>" % (
            self.n, tag, self.n, ", ".join(self.alphabet.names))

    def __repr__(self):
        return "Representation(%s, %s)" % (
            self.description(),
            "; ".join(_la.matrix_str(m) for m in self.images))


class SymPowerRep(Representation):
    """The N-dimensional symmetric-power representation of a rank-2 base."""

    def __init__(self, base, N):
        if base.n != 2:
            raise NotTwoByTwo("symmetric powers take a rank-2 base")
        self.base = base
        self.N = N
        images = [sym_power(m, N) for m in base.images]
        super().__init__(base.alphabet, images, sl_flag=base.sl_flag)

    def description(self):
        return "symmetric power N=%d of %s" % (self.N, self.base.description())


def sym_power(m, N):
    """Action of a 2x2 matrix on degree-(N-1) forms in e1, e2.

    Basis order e1^(N-1), e1^(N-2)e2, ..., e2^(N-1); the image of the k-th
    basis vector is (m11 e1 + m21 e2)^(N-1-k) (m12 e1 + m22 e2)^k expanded
    binomially.  No normalization factors, so integer input gives integer
    entries.  sym_power(m, 2) is m itself.
    """
    if not isinstance(m, Matrix) or m.rows != 2 or m.cols != 2:
        raise NotTwoByTwo("sym_power needs a 2x2 matrix")
    if not isinstance(N, int) or N < 2:
        raise ValueError("N must be an integer >= 2")
    (a, c), (b, d) = m.entries  # column 1 is (a, b), column 2 is (c, d)
    cols = []
    for k in range(N - 1 + 1):
        left = _binomial_coeffs(a, b, N - 1 - k)
        right = _binomial_coeffs(c, d, k)
        col = [0] * N
        for i, ci in enumerate(left):
            for j, cj in enumerate(right):
                col[i + j] = col[i + j] + ci * cj
        cols.append(col)
    return Matrix([[cols[k][l] for k in range(N)] for l in range(N)])


def _binomial_coeffs(p, q, n):
    # coefficients of (p e1 + q e2)^n by e2-degree: [p^n, n p^(n-1) q, ...]
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] = nxt[i] + c * p
            nxt[i + 1] = nxt[i + 1] + c * q
        out = nxt
    return out


def circle_homology(m):
    """Twisted homology dimensions of a circle whose monodromy is m.

    Returns (h0, h1) = (dim coker(m - I), dim ker(m - I)); both vanish for
    an SL2 matrix exactly when its trace is not 2.
    """
    if not isinstance(m, Matrix) or m.rows != m.cols:
        raise ValueError("need a square matrix")
    r = (m - Matrix.identity(m.rows)).rank()
    return (m.rows - r, m.rows - r)


def check_self_dual(rep):
    """Max entry deviation of J g J^-1 - (g^-1)^T over the generators.

    J is the standard symplectic form on C^2; the identity characterizes
    SL2, so the defect is exactly zero for honest sl_flag representations
    and nonzero as soon as some determinant is not 1.  Rank-2 only; reps
    without sl_flag are accepted so the failure mode is observable.
    """
    if rep.n != 2:
        raise NotSL2("self-duality check is for rank-2 representations")
    J = Matrix([[0, 1], [-1, 0]])
    Jinv = Matrix([[0, -1], [1, 0]])
    worst = 0.0
    exact_zero = True
    for i in range(len(rep.alphabet)):
        g = rep.images[i]
        defect = J * g * Jinv - rep.image_inverse(i).transpose()
        for row in defect.entries:
            for e in row:
                if _s.is_exact(e):
                    if not _s.zero_test(e):
                        exact_zero = False
                        worst = max(worst, _s.magnitude(e))
                else:
                    if abs(e) != 0.0:
                        exact_zero = False
                        worst = max(worst, abs(e))
    return 0 if exact_zero else worst


# parabolic solving

def _poly_from_multipoly(p):
    # univariate in the u slot -> dense complex coefficient list, low first
    deg = p.degree_in("u")
    out = [0j] * (deg + 1)
    for ex, c in p.terms.items():
        assert ex[0] == ex[1] == ex[2] == 0
        out[ex[3]] += complex(c)
    return out


def _horner(coeffs, y):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def _mat2_mul(A, B):
    return [[A[0][0] * B[0][0] + A[0][1] * B[1][0],
             A[0][0] * B[0][1] + A[0][1] * B[1][1]],
            [A[1][0] * B[0][0] + A[1][1] * B[1][0],
             A[1][0] * B[0][1] + A[1][1] * B[1][1]]]


def parabolic_roots(pres, grid_lo=-4.0, grid_hi=4.0, grid_step=0.25,
                    tol=1e-12):
    """All parameters y in the grid box making a ((1,1),(0,1)), ((1,0),(y,1))
    pair kill the relator, sorted by (real, imaginary).

    The relator defect entries are exact integer polynomials in y; their gcd
    is the Riley-style root polynomial, scanned on the grid and polished by
    Newton iteration with the exact derivative.
    """
    alphabet = pres.alphabet
    if len(alphabet) < 2:
        raise ReducibleOnly("a cyclic presentation has abelian image only")
    if len(alphabet) != 2 or len(pres.relators) != 1:
        raise ValueError("parabolic solving wants two generators, one relator")
    relator = pres.relators[0]
    es = relator.exponent_sum()
    if es[0] + es[1] != 0:
        raise ValueError("generators are not both meridional "
                         "(relator exponent sums %r)" % (es,))

    one = MultiPoly.constant(1)
    yvar = MultiPoly.variable("u")
    A = [[one, one], [MultiPoly.zero(), one]]
    Ainv = [[one, -one], [MultiPoly.zero(), one]]
    B = [[one, MultiPoly.zero()], [yvar, one]]
    Binv = [[one, MultiPoly.zero()], [-yvar, one]]
    table = {1: A, -1: Ainv, 2: B, -2: Binv}
    acc = [[one, MultiPoly.zero()], [MultiPoly.zero(), one]]
    for l in relator.letters:
        acc = _mat2_mul(acc, table[l])
    defect = [acc[0][0] - one, acc[0][1], acc[1][0], acc[1][1] - one]
    g = MultiPoly.zero()
    for entry in defect:
        g = mp_gcd(g, entry)
    if g.is_zero():
        # relator dies identically; any irreducible parameter works
        g = yvar
    if g.degree_in("u") == 0:
        raise NoRootFound("defect polynomials share no root")

    coeffs = _poly_from_multipoly(g)
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    defect_polys = [_poly_from_multipoly(e) for e in defect]

    roots = []
    steps = int(round((grid_hi - grid_lo) / grid_step)) + 1
    for ri in range(steps):
        for ii in range(steps):
            y = complex(grid_lo + ri * grid_step, grid_lo + ii * grid_step)
            for _ in range(80):
                dv = _horner(dcoeffs, y)
                if dv == 0:
                    break
                step = _horner(coeffs, y) / dv
                y = y - step
                if abs(step) < 1e-15 * max(1.0, abs(y)):
                    break
            if not (grid_lo - 1e-6 <= y.real <= grid_hi + 1e-6 and
                    grid_lo - 1e-6 <= y.imag <= grid_hi + 1e-6):
                continue
            if max(abs(_horner(p, y)) for p in defect_polys) > \
                    max(1.0, abs(y)) ** len(relator) * 1e-10:
                continue
            if not any(abs(y - r) < 1e-7 for r in roots):
                roots.append(y)
    return sorted(roots, key=lambda z: (z.real, z.imag))


def solve_parabolic(pres, grid_lo=-4.0, grid_hi=4.0, grid_step=0.25,
                    which=0, signs=(1, 1)):
    """A parabolic ComplexF representation of a two-generator one-relator
    presentation with meridional generators.

    Images are [[1,1],[0,1]] and [[1,0],[y,1]] (traces exactly 2 by
    construction) with y the ``which``-th root from :func:`parabolic_roots`;
    irreducible roots only.  ``signs`` multiplies each generator image by
    +-1 for callers who want the sign-twisted lift.
    """
    roots = parabolic_roots(pres, grid_lo, grid_hi, grid_step)
    irreducible = [y for y in roots if abs(y) > 1e-8]
    if not irreducible:
        if roots:
            raise ReducibleOnly("every root shares an eigenvector (y = 0)")
        raise NoRootFound("no parabolic parameter found in the grid")
    y = irreducible[which % len(irreducible)]
    sa, sb = signs
    A = Matrix([[_s.ComplexF(sa), _s.ComplexF(sa)],
                [_s.ComplexF(0.0), _s.ComplexF(sa)]])
    B = Matrix([[_s.ComplexF(sb), _s.ComplexF(0.0)],
                [_s.ComplexF(y) * sb, _s.ComplexF(sb)]])
    return Representation(pres.alphabet, [A, B], sl_flag=True)


# text form: "alphabet:" and "scalar:" header lines, then "<gen>: <matrix>"
# per generator in the rows;entries matrix grammar

def rep_to_text(rep):
    lines = ["alphabet: %s" % " ".join(rep.alphabet.names),
             "scalar: %s" % rep.scalar_kind]
    if rep.sl_flag:
        lines.append("sl: true")
    for name, m in zip(rep.alphabet.names, rep.images):
        lines.append("%s: %s" % (name, _la.matrix_str(m)))
    return "\n".join(lines) + "\n"


def rep_from_text(text):
    from .freegroup import Alphabet
    alphabet = None
    kind = None
    sl_flag = False
    body = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("line %d: expected 'key: value'" % ln)
        key, _, val = line.partition(":")
        key = key.strip()
        val = val.strip()
        if key == "alphabet":
            alphabet = Alphabet(val)
        elif key == "scalar":
            if val not in ("rational", "quadext", "complex"):
                raise ParseError("line %d: unknown scalar kind %r" % (ln, val))
            kind = val
        elif key == "sl":
            sl_flag = val.lower() in ("true", "yes", "1")
        else:
            if alphabet is None:
                raise ParseError("line %d: matrix before alphabet header" % ln)
            if key not in alphabet.names:
                raise ParseError("line %d: %r is not a generator" % (ln, key))
            if key in body:
                raise ParseError("line %d: duplicate matrix for %r" % (ln, key))
            try:
                body[key] = _la.parse_matrix(val, kind=kind)
            except (ParseError, ValueError) as exc:
                raise ParseError("line %d: %s" % (ln, exc)) from None
    if alphabet is None or kind is None:
        raise ParseError("missing alphabet or scalar header")
    missing = [n for n in alphabet.names if n not in body]
    if missing:
        raise ParseError("no matrix for generator(s) %s" % ", ".join(missing))
    try:
        return Representation(alphabet, [body[n] for n in alphabet.names],
                              sl_flag=sl_flag)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
