"""Trace coordinates on the rank-2 character variety, explicit lifts to
matrix pairs, and the loci L_N where the pants certificate degenerates.

A character is the triple (tr x, tr y, tr xy).  Lifting rebuilds a matrix
pair realizing those traces, exactly over the rationals (passing to a
quadratic extension when the middle trace forces one) and in complex
floats otherwise.  The locus machinery evaluates certificate determinants
through symmetric powers of the lift, eliminates the extension variable
symbolically for N = 2, and verifies the printed N = 3, 4 surfaces by
sampling.
"""

import cmath
import warnings
from fractions import Fraction

from . import scalar as _s
from .errors import (DegenerateInput, EliminationDegenerate,
                     IrreducibilityWarning)
from .freegroup import Alphabet, fox_derivative
from .linalg import Matrix, det_with_scale
from .polynomial import (MultiPoly, factor_multiplicity, poly_matrix_det,
                         primitive_normalize, resultant_in_u,
                         squarefree_part)
from .representation import Representation, SymPowerRep
from .seeds import rng_for
from .suturedcert import fox_matrix, pants_example


class Character:
    """A point (xbar, ybar, zbar) of the trace-coordinate variety.

    Components are normalized to one scalar kind: integers become
    rationals, and any float or complex component pushes all three into
    ComplexF.
    """

    def __init__(self, xbar, ybar, zbar):
        vals = [xbar, ybar, zbar]
        vals = [Fraction(v) if isinstance(v, int) else v for v in vals]
        kinds = {_s.kind_of(v) for v in vals}
        if "complex" in kinds and len(kinds) > 1:
            vals = [_s.to_complexf(v) for v in vals]
        elif "quadext" in kinds and "rational" in kinds:
            d = next(v.d for v in vals if isinstance(v, _s.QuadExt))
            vals = [v if isinstance(v, _s.QuadExt) else _s.QuadExt(v, 0, d)
                    for v in vals]
        self.xbar, self.ybar, self.zbar = vals
        self.kind = _s.kind_of(vals[0])

    def as_tuple(self):
        return (self.xbar, self.ybar, self.zbar)

    def __eq__(self, other):
        return (isinstance(other, Character)
                and self.as_tuple() == other.as_tuple())

    def __repr__(self):
        return "Character(%s, %s, %s)" % tuple(
            _s.scalar_str(v) for v in self.as_tuple())


def parse_character(text):
    """A character from a literal like ``(4, 4, 5)``."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError("character literal needs three components")
    return Character(*[_s.parse_scalar(p) for p in parts])


def commutator_trace(c):
    """tr of the commutator through the trace identity
    xbar^2 + ybar^2 + zbar^2 - xbar ybar zbar - 2."""
    x, y, z = c.as_tuple()
    return x * x + y * y + z * z - x * y * z - 2


def is_reducible_character(c):
    """Whether the character's lifts share an eigenvector, detected by the
    commutator trace landing on 2."""
    return _s.zero_test(commutator_trace(c) - 2,
                        scale=max(1.0, _s.magnitude(commutator_trace(c))))


_XY = Alphabet("x y")


def lift(c, warn=True):
    """A matrix pair with the given traces: x maps to [[0,1],[-1,xbar]]
    and y to [[ybar,-u],[1/u,0]] where u + 1/u = zbar.

    Rational characters lift exactly, with u in a quadratic extension when
    zbar^2 - 4 is not a rational square; everything else lifts in ComplexF
    with the principal branch picking u.  Reducible characters are flagged
    through a warning and still lifted.
    """
    x, y, z = c.as_tuple()
    if c.kind == "rational":
        disc = z * z - 4
        if disc == 0:
            u = z / 2  # the double root, +-1, is its own inverse
            uin = u
        else:
            s, d = _s.sqrt_decompose(disc)
            if d == 1:
                u = (z + s) / 2
                uin = 1 / u
            else:
                u = _s.QuadExt(z / 2, s / 2, d)
                uin = u.inverse()
    else:
        zc = _s.to_complex(z)
        u = (zc + cmath.sqrt(zc * zc - 4)) / 2
        u = _s.ComplexF(u)
        uin = u.inverse()
        x = _s.to_complexf(x)
        y = _s.to_complexf(y)
    ax = Matrix([[0, 1], [-1, x]])
    ay = Matrix([[y, -u], [uin, 0]])
    rep = Representation(_XY, [ax, ay], sl_flag=True)
    if warn and is_reducible_character(c):
        warnings.warn(IrreducibilityWarning(
            "character %r is reducible; the lift is one of several "
            "non-conjugate choices" % (c,)))
    return rep


def locus_det_scaled(c, data, N=2):
    """Certificate determinant of ``data`` through the N-th symmetric power
    of the lift, with the noise scale of the elimination."""
    if N < 2:
        raise ValueError("N must be at least 2")
    rep = lift(c, warn=False)
    if N != 2:
        rep = SymPowerRep(rep, N)
    return det_with_scale(fox_matrix(data, rep))


def locus_det(c, data, N=2):
    return locus_det_scaled(c, data, N)[0]


# symbolic elimination for N = 2: work in Q[x, y, z, u] modulo the trace
# relation u^2 - z u + 1, which keeps inverse entries polynomial

_PX = MultiPoly.variable("x")
_PY = MultiPoly.variable("y")
_PZ = MultiPoly.variable("z")
_PU = MultiPoly.variable("u")
_U_RELATION = _PU * _PU - _PZ * _PU + MultiPoly.constant(1)
_ZU_MINUS_1 = _PZ * _PU - MultiPoly.constant(1)


def reduce_u(p):
    """Rewrite u-powers above 1 through u^2 = z u - 1."""
    while p.degree_in("u") >= 2:
        keep = {}
        acc = MultiPoly.zero()
        for ex, cf in p.terms.items():
            if ex[3] < 2:
                keep[ex] = cf
            else:
                base = MultiPoly({(ex[0], ex[1], ex[2], ex[3] - 2): cf})
                acc = acc + base * _ZU_MINUS_1
        p = MultiPoly(keep) + acc
    return p


_ZERO_P = MultiPoly.zero()
_ONE_P = MultiPoly.constant(1)
_SYM_TABLE = {
    1: [[_ZERO_P, _ONE_P], [-_ONE_P, _PX]],
    -1: [[_PX, -_ONE_P], [_ONE_P, _ZERO_P]],
    2: [[_PY, -_PU], [_PZ - _PU, _ZERO_P]],
    -2: [[_ZERO_P, _PU], [_PU - _PZ, _PY]],
}


def _sym_mat_mul(a, b):
    out = [[_ZERO_P, _ZERO_P], [_ZERO_P, _ZERO_P]]
    for i in range(2):
        for j in range(2):
            out[i][j] = reduce_u(a[i][0] * b[0][j] + a[i][1] * b[1][j])
    return out


def _sym_eval_word(w):
    acc = [[_ONE_P, _ZERO_P], [_ZERO_P, _ONE_P]]
    for l in w.letters:
        acc = _sym_mat_mul(acc, _SYM_TABLE[l])
    return acc


def _sym_eval_ring(e):
    out = [[_ZERO_P, _ZERO_P], [_ZERO_P, _ZERO_P]]
    for w, cf in e.terms.items():
        m = _sym_eval_word(w)
        for i in range(2):
            for j in range(2):
                out[i][j] = out[i][j] + m[i][j].scale(Fraction(cf))
    return out


def eliminate_L2(data):
    """The u-free defining polynomial of the N = 2 failure locus.

    Evaluates the certificate matrix symbolically over the quotient ring,
    takes its determinant, eliminates u by the resultant with the trace
    relation, and returns the squarefree primitive normalization.  The
    pants instance must come out as the plane x + y - z - 3 up to sign.
    """
    if len(data.alphabet) != 2:
        raise DegenerateInput("symbolic elimination handles rank 2 only")
    grid = [[_ZERO_P] * 4 for _ in range(4)]
    for i, w in enumerate(data.images):
        for j in range(2):
            block = _sym_eval_ring(fox_derivative(w, j))
            for bi in range(2):
                for bj in range(2):
                    grid[2 * i + bi][2 * j + bj] = block[bi][bj]
    dete = reduce_u(poly_matrix_det(grid))
    if dete.is_zero():
        raise EliminationDegenerate("certificate determinant is "
                                    "identically zero")
    if dete.degree_in("u") == 0:
        result = dete
    else:
        result = resultant_in_u(dete, _U_RELATION)
        if result.is_zero():
            raise EliminationDegenerate(
                "resultant vanished identically; the determinant shares a "
                "factor with the trace relation")
    if result.total_degree() == 0:
        return _ONE_P
    return primitive_normalize(squarefree_part(result))


def elimination_multiplicity(data, factor=None):
    """(polynomial, multiplicity) of the u-eliminated determinant; the
    multiplicity is how many times the squarefree part divides the full
    resultant."""
    poly = eliminate_L2(data)
    if factor is None:
        factor = poly
    grid = [[_ZERO_P] * 4 for _ in range(4)]
    for i, w in enumerate(data.images):
        for j in range(2):
            block = _sym_eval_ring(fox_derivative(w, j))
            for bi in range(2):
                for bj in range(2):
                    grid[2 * i + bi][2 * j + bj] = block[bi][bj]
    dete = reduce_u(poly_matrix_det(grid))
    if dete.degree_in("u") == 0:
        full = dete
    else:
        full = resultant_in_u(dete, _U_RELATION)
    return poly, factor_multiplicity(full, factor)


# the printed failure loci for the third and fourth symmetric powers,
# exponent order (x, y, z, u)

L3_POLY = MultiPoly({
    (1, 1, 1, 0): 2, (2, 0, 0, 0): -1, (0, 2, 0, 0): -1,
    (0, 0, 2, 0): -3, (0, 0, 0, 0): 3,
})

L4_POLY = MultiPoly({
    (2, 2, 1, 0): 3, (2, 1, 2, 0): -3, (1, 2, 2, 0): -3,
    (4, 0, 0, 0): 1, (3, 1, 0, 0): -2, (1, 3, 0, 0): -2, (0, 4, 0, 0): 1,
    (3, 0, 1, 0): 2, (2, 1, 1, 0): 3, (1, 2, 1, 0): 3, (0, 3, 1, 0): 2,
    (1, 1, 2, 0): -3, (1, 0, 3, 0): 2, (0, 1, 3, 0): 2, (0, 0, 4, 0): 1,
    (3, 0, 0, 0): -3, (0, 3, 0, 0): -3, (0, 0, 3, 0): 3,
    (2, 0, 0, 0): -3, (1, 1, 0, 0): 6, (0, 2, 0, 0): -3,
    (1, 0, 1, 0): -6, (0, 1, 1, 0): -6, (0, 0, 2, 0): -3,
    (1, 0, 0, 0): 6, (0, 1, 0, 0): 6, (0, 0, 1, 0): -6,
    (0, 0, 0, 0): 9,
})

L2_POLY = MultiPoly({
    (1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): -1, (0, 0, 0, 0): -3,
})


def locus_polynomial(N):
    if N == 2:
        return L2_POLY
    if N == 3:
        return L3_POLY
    if N == 4:
        return L4_POLY
    raise ValueError("printed locus polynomials exist for N = 2, 3, 4 only")


class LocusReport:
    """Aggregated pass/fail counts of a sampling verification run."""

    def __init__(self, N, samples, seed, tol, off_tol, off_delta, corrupt):
        self.N = N
        self.samples = samples
        self.seed = seed
        self.tol = tol
        self.off_tol = off_tol
        self.off_delta = off_delta
        self.corrupt = corrupt
        self.on_checked = 0
        self.on_passed = 0
        self.off_checked = 0
        self.off_passed = 0
        self.failures = []

    def ok(self):
        return (self.on_passed == self.on_checked
                and self.off_passed == self.off_checked
                and self.on_checked > 0)

    def __repr__(self):
        return ("LocusReport(N=%d, on %d/%d, off %d/%d%s)"
                % (self.N, self.on_passed, self.on_checked,
                   self.off_passed, self.off_checked,
                   ", corrupted" if self.corrupt else ""))


def _z_root_candidates(poly, xv, yv):
    import numpy

    zdeg = poly.degree_in("z")
    coeffs = []
    for k in range(zdeg, -1, -1):
        coeffs.append(complex(_eval_xy(poly.coeff_in("z", k), xv, yv)))
    while coeffs and abs(coeffs[0]) < 1e-13:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return []
    roots = list(numpy.roots(coeffs))
    low_first = coeffs[::-1]
    deriv = [k * c for k, c in enumerate(low_first)][1:]

    def horner(cs, v):
        acc = 0j
        for cf in reversed(cs):
            acc = acc * v + cf
        return acc

    polished = []
    for r in roots:
        z = complex(r)
        for _ in range(40):
            dv = horner(deriv, z)
            if dv == 0:
                break
            step = horner(low_first, z) / dv
            z -= step
            if abs(step) < 1e-14 * max(1.0, abs(z)):
                break
        polished.append(z)
    return polished


def _eval_xy(p, xv, yv):
    acc = 0.0 + 0.0j
    for ex, cf in p.terms.items():
        acc += complex(cf) * (xv ** ex[0]) * (yv ** ex[1])
    return acc


def locus_verify(N, samples=100, seed=7, tol=1e-6, off_tol=1e-3,
                 off_delta=0.35, corrupt=False, data=None):
    """Sample the printed locus polynomial for one symmetric power.

    For each sample an (x, y) pair is drawn, the polynomial is solved for
    z numerically, and the certificate determinant is required to vanish
    relatively at each root and to exceed off_tol at a z perturbed by
    off_delta.  ``corrupt`` bumps the polynomial's constant term as a
    negative control, so on-locus checks must fail.
    """
    if N not in (3, 4):
        raise ValueError("verification targets the printed N = 3, 4 loci")
    poly = locus_polynomial(N)
    if corrupt:
        poly = poly + _ONE_P
    if data is None:
        data = pants_example()
    report = LocusReport(N, samples, seed, tol, off_tol, off_delta, corrupt)
    for i in range(samples):
        rng = rng_for(seed, i)
        xv = rng.uniform(-3.0, 3.0)
        yv = rng.uniform(-3.0, 3.0)
        for z in _z_root_candidates(poly, xv, yv):
            c = Character(_s.ComplexF(xv), _s.ComplexF(yv), _s.ComplexF(z))
            det, scale = locus_det_scaled(c, data, N)
            report.on_checked += 1
            if abs(det) <= tol * max(1.0, scale):
                report.on_passed += 1
            elif len(report.failures) < 10:
                report.failures.append(
                    ("on", i, xv, yv, z, abs(det), scale))
            zoff = z + off_delta
            coff = Character(_s.ComplexF(xv), _s.ComplexF(yv),
                             _s.ComplexF(zoff))
            doff, soff = locus_det_scaled(coff, data, N)
            report.off_checked += 1
            # off-locus values are compared absolutely: determinants away
            # from the surface are order-one or larger
            if abs(doff) > off_tol:
                report.off_passed += 1
            elif len(report.failures) < 10:
                report.failures.append(
                    ("off", i, xv, yv, zoff, abs(doff), soff))
    return report
