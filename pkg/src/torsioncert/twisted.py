"""Presentation 2-complexes with coefficients twisted by a matrix
representation and a homomorphism to the infinite cyclic group.

The chain groups come from a one-vertex CW structure: one 0-cell, an edge
per generator, a face per relator.  Boundary matrices are Fox-derivative
blocks pushed through t^phi . alpha, acting on row vectors from the left.
From the deficiency-1 case we extract the torsion polynomial ratio whose
degree bounds the complexity of spanning surfaces, and the genus check
comparing that degree against 4g - 2.
"""

import math
from fractions import Fraction

from . import linalg as _la
from . import scalar as _s
from .errors import (AlphabetMismatch, AllColumnsDegenerate, ChainCondition,
                     LongitudeTraceViolation, MissingGenusHint,
                     NotDeficiencyOne, NotInfiniteCyclic, OracleMismatch,
                     ParseError)
from .freegroup import Alphabet, Word, fox_derivative
from .linalg import Matrix
from .polynomial import (LaurentPoly, NEG_INFINITY, laurent_str,
                         laurent_unit_match, parse_laurent, poly_matrix_det,
                         rational_degree)
from .representation import Representation


class Presentation:
    """A finite presentation with optional knot-theoretic decorations.

    Relators must come in freely and cyclically reduced; meridian and
    longitude are words in the same generators, genus_hint a nonnegative
    integer, and alexander_check an optional polynomial used by file
    validation.
    """

    def __init__(self, alphabet, relators, name="", meridian=None,
                 longitude=None, genus_hint=None, alexander_check=None):
        self.alphabet = alphabet
        self.relators = tuple(relators)
        for r in self.relators:
            if not isinstance(r, Word) or r.alphabet != alphabet:
                raise AlphabetMismatch("relator %r over the wrong alphabet"
                                       % (r,))
            if len(r) == 0:
                raise ValueError("trivial relator")
            if not r.is_cyclically_reduced():
                raise ValueError("relator %s is not cyclically reduced" % r)
        for w in (meridian, longitude):
            if w is not None and (not isinstance(w, Word)
                                  or w.alphabet != alphabet):
                raise AlphabetMismatch("decoration word over wrong alphabet")
        if genus_hint is not None and (not isinstance(genus_hint, int)
                                       or genus_hint < 0):
            raise ValueError("genus_hint must be a nonnegative integer")
        self.name = name
        self.meridian = meridian
        self.longitude = longitude
        self.genus_hint = genus_hint
        self.alexander_check = alexander_check

    def deficiency(self):
        return len(self.alphabet) - len(self.relators)

    def __repr__(self):
        return "Presentation(<%s | %s>%s)" % (
            ", ".join(self.alphabet.names),
            ", ".join(str(r) for r in self.relators),
            " %r" % self.name if self.name else "")


class AbelianizationMap:
    """Generator exponents for the map onto the infinite cyclic group."""

    def __init__(self, exponents):
        self.exponents = tuple(int(e) for e in exponents)

    def weight(self, word):
        es = word.exponent_sum()
        return sum(e * s for e, s in zip(self.exponents, es))

    def __eq__(self, other):
        return (isinstance(other, AbelianizationMap)
                and self.exponents == other.exponents)

    def __repr__(self):
        return "AbelianizationMap(%r)" % (self.exponents,)


def abelianization(pres):
    """The generator-exponent vector of the abelianization onto Z.

    Requires the abelianized group to be infinite cyclic: the exponent-sum
    matrix must have corank exactly one and unit elementary divisors, the
    latter checked through the gcd of its maximal minors.
    """
    k = len(pres.alphabet)
    rows = [list(r.exponent_sum()) for r in pres.relators]

    # rational kernel of the exponent-sum matrix
    work = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    col = 0
    ri = 0
    for col in range(k):
        piv = None
        for i in range(ri, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[ri], work[piv] = work[piv], work[ri]
        inv = 1 / work[ri][col]
        work[ri] = [v * inv for v in work[ri]]
        for i in range(len(work)):
            if i != ri and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[ri])]
        pivots.append(col)
        ri += 1
    rank = len(pivots)
    if rank != k - 1:
        raise NotInfiniteCyclic(
            "abelianization has rank %d relations on %d generators"
            % (rank, k))

    # torsion-freeness: gcd of all (k-1)-minors must be 1
    if rank > 0:
        import itertools
        g = 0
        for rsel in itertools.combinations(range(len(rows)), rank):
            for csel in itertools.combinations(range(k), rank):
                minor = Matrix([[rows[i][j] for j in csel] for i in rsel])
                g = math.gcd(g, abs(int(minor.det())))
                if g == 1:
                    break
            if g == 1:
                break
        if g != 1:
            raise NotInfiniteCyclic(
                "abelianization has torsion (minor gcd %d)" % g)

    free = [c for c in range(k) if c not in pivots][0]
    vec = [Fraction(0)] * k
    vec[free] = Fraction(1)
    for i, pc in enumerate(pivots):
        vec[pc] = -work[i][free]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    phi = AbelianizationMap(ints)
    for r in pres.relators:
        if phi.weight(r) != 0:
            raise NotInfiniteCyclic("relator %s has nonzero weight" % r)
    return phi


def trivial_rep(alphabet, n=1):
    """The rank-n representation sending every generator to the identity."""
    return Representation(alphabet,
                          [Matrix.identity(n) for _ in alphabet.names],
                          sl_flag=(n == 2))


# twisted evaluation: words and ring elements through t^phi . alpha

def _zero_poly_grid(n):
    return [[LaurentPoly.zero() for _ in range(n)] for _ in range(n)]


def twisted_eval(elem, rep, twist):
    """Group-ring element through the composite of t^phi and alpha, as an
    n x n grid of Laurent polynomials."""
    n = rep.n
    out = _zero_poly_grid(n)
    for w, c in elem.terms.items():
        m = rep.eval_word(w)
        shift = twist.weight(w)
        for i in range(n):
            for j in range(n):
                e = m[i, j]
                if _s.is_exact(e):
                    if e == 0:
                        continue
                elif abs(e) == 0.0:
                    continue
                out[i][j] = out[i][j] + LaurentPoly({shift: e * c})
    return out


def _poly_mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for l in range(1, inner):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def _poly_grid_max_mag(grid):
    mags = [e.max_coeff_magnitude() for row in grid for e in row]
    return max(mags) if mags else 0.0


class TwistedComplex:
    """Boundary data of the presentation complex with module coefficients.

    d2 has a block row per relator and a block column per generator
    (Fox-derivative blocks); d1 is the block column of generator images
    minus the identity.  Untwisted complexes carry scalar matrices;
    twisted ones carry grids of Laurent polynomials.
    """

    def __init__(self, d2, d1, dims, twisted, scalar_kind):
        self.d2 = d2
        self.d1 = d1
        self.dims = dims  # (c0, c1, c2)
        self.twisted = twisted
        self.scalar_kind = scalar_kind


def build_complex(pres, rep, twist=None, check=True):
    """Boundary matrices of the presentation complex through the coefficient
    system; verifies the chain condition d2 . d1 = 0 unless check is off.

    The chain condition holds exactly when the representation kills every
    relator (within tolerance in floating kinds), so it doubles as a check
    that rep really is a representation of the presented group.
    """
    if rep.alphabet != pres.alphabet:
        raise AlphabetMismatch("representation over %r, presentation over %r"
                               % (rep.alphabet, pres.alphabet))
    n = rep.n
    k = len(pres.alphabet)
    r = len(pres.relators)
    one = pres.alphabet.identity()

    if twist is None:
        d1_blocks = [[rep.image(j) - Matrix.identity(n)] for j in range(k)]
        d1 = _la.block_assemble(d1_blocks) if k else Matrix.zero(0)
        d2_blocks = [[rep.eval_ring_elem(fox_derivative(rel, j))
                      for j in range(k)] for rel in pres.relators]
        d2 = _la.block_assemble(d2_blocks) if r else None
        cx = TwistedComplex(d2, d1, (n, k * n, r * n), False, rep.scalar_kind)
        if check and r:
            prod = d2 * d1
            scale = max(1.0, d2.max_row_norm() * d1.max_row_norm())
            for i in range(prod.rows):
                for j in range(prod.cols):
                    if not _s.zero_test(prod[i, j], scale=scale):
                        raise ChainCondition(
                            "d2 . d1 != 0: representation does not kill "
                            "relator %d" % (i // n))
        return cx

    d1 = []
    for j in range(k):
        block = twisted_eval_word_minus_one(Word(pres.alphabet, (j + 1,)),
                                            rep, twist)
        d1.extend(block)
    d2 = []
    for rel in pres.relators:
        row_blocks = [twisted_eval(fox_derivative(rel, j), rep, twist)
                      for j in range(k)]
        for i in range(n):
            d2.append([row_blocks[j][i][l] for j in range(k)
                       for l in range(n)])
    cx = TwistedComplex(d2, d1, (n, k * n, r * n), True, rep.scalar_kind)
    if check and r and k:
        prod = _poly_mat_mul(d2, d1)
        scale = max(1.0, k * n * _poly_grid_max_mag(d2)
                    * _poly_grid_max_mag(d1))
        for i, row in enumerate(prod):
            for e in row:
                for c in e.coeffs.values():
                    if not _s.zero_test(c, scale=scale):
                        raise ChainCondition(
                            "d2 . d1 != 0: twisted system does not kill "
                            "relator %d" % (i // n))
    return cx


def twisted_eval_word_minus_one(w, rep, twist):
    """t^phi(w) alpha(w) - I as an n x n Laurent-polynomial grid."""
    n = rep.n
    m = rep.eval_word(w)
    shift = twist.weight(w)
    out = _zero_poly_grid(n)
    for i in range(n):
        for j in range(n):
            e = m[i, j]
            keep = not (_s.is_exact(e) and e == 0) and not \
                (not _s.is_exact(e) and abs(e) == 0.0)
            if keep:
                out[i][j] = LaurentPoly({shift: e})
            if i == j:
                out[i][j] = out[i][j] - LaurentPoly.one()
    return out


def homology_dims(cx):
    """(h0, h1, h2) by rank-nullity on scalar boundary matrices."""
    if cx.twisted:
        raise ValueError("homology dims need scalar coefficients; "
                         "evaluate the twist first")
    c0, c1, c2 = cx.dims
    r1 = cx.d1.rank() if c1 and c0 else 0
    r2 = cx.d2.rank() if cx.d2 is not None and c2 else 0
    return (c0 - r1, c1 - r1 - r2, c2 - r2)


class TorsionResult:
    """Numerator/denominator pair of the torsion ratio with its degree and
    the bounds that degree implies."""

    def __init__(self, numerator, denominator, column_deleted, degree,
                 norm_bound, genus_bound, scalar_kind):
        self.numerator = numerator
        self.denominator = denominator
        self.column_deleted = column_deleted
        self.degree = degree
        self.norm_bound = norm_bound
        self.genus_bound = genus_bound
        self.scalar_kind = scalar_kind

    def genus_bound_int(self):
        """The genus bound rounded up to an integer, or None."""
        if self.genus_bound is None:
            return None
        return max(0, math.ceil(self.genus_bound))

    def __repr__(self):
        return ("TorsionResult(num=%s, den=%s, column=%d, degree=%s)"
                % (laurent_str(self.numerator),
                   laurent_str(self.denominator),
                   self.column_deleted, self.degree))


def _poly_is_zero(p, scale):
    if not p.coeffs:
        return True
    return all(not _s.is_exact(c) and _s.zero_test(c, scale=scale)
               for c in p.coeffs.values())


def wada_torsion(pres, rep):
    """Torsion polynomial ratio of a deficiency-1 presentation.

    Numerator: determinant of the twisted Fox matrix with one block column
    deleted; denominator: determinant of the deleted generator's twisted
    image minus the identity.  The column is the smallest index whose
    denominator is a nonzero polynomial; when a second valid column exists
    the two ratios are checked to agree up to a unit +-t^k.
    """
    if pres.deficiency() != 1:
        raise NotDeficiencyOne("deficiency %d, need 1" % pres.deficiency())
    phi = abelianization(pres)
    cx = build_complex(pres, rep, twist=phi)
    n = rep.n
    k = len(pres.alphabet)
    exact = rep.scalar_kind != "complex"
    scale = max(1.0, _poly_grid_max_mag(cx.d1))

    dens = []
    for j in range(k):
        dens.append(poly_matrix_det(cx.d1[j * n:(j + 1) * n]))
    valid = [j for j in range(k)
             if not _poly_is_zero(dens[j], scale ** n)]
    if not valid:
        raise AllColumnsDegenerate(
            "every generator image has det(t^phi a(g) - 1) = 0")

    def numerator_for(j):
        rows = [row[:j * n] + row[(j + 1) * n:] for row in cx.d2]
        if not rows:
            # one free generator, no relators: empty determinant is 1
            return LaurentPoly.one()
        return poly_matrix_det(rows)

    j = valid[0]
    num = numerator_for(j)
    den = dens[j]

    if len(valid) > 1:
        j2 = valid[1]
        num2 = numerator_for(j2)
        tol = 0.0 if exact else _s.zero_tolerance()
        ok, _, _ = laurent_unit_match(num * dens[j2], num2 * den, tol=tol)
        if not ok:
            raise OracleMismatch(
                "torsion ratio differs between deleted columns %d and %d"
                % (j, j2))

    if not exact:
        num = num.trim(_s.zero_tolerance())
        den = den.trim(_s.zero_tolerance())
    if _poly_is_zero(den, 1.0):
        raise AllColumnsDegenerate("chosen denominator vanished numerically")
    degree = rational_degree(num, den)
    if degree == NEG_INFINITY:
        norm_bound = None
        genus_bound = None
    else:
        norm_bound = Fraction(degree, n)
        genus_bound = (norm_bound + 1) / 2
    return TorsionResult(num, den, j, degree, norm_bound, genus_bound,
                         rep.scalar_kind)


class GenusVerdict:
    """Outcome of comparing the torsion degree with 4 g - 2."""

    def __init__(self, verdict, degree, target, genus_hint, longitude_trace):
        self.verdict = verdict  # "equality" | "below" | "above"
        self.degree = degree
        self.target = target
        self.genus_hint = genus_hint
        self.longitude_trace = longitude_trace

    def __repr__(self):
        return ("GenusVerdict(%s: degree %s vs 4g-2 = %d, g = %d)"
                % (self.verdict, self.degree, self.target, self.genus_hint))


def conjecture_check(pres, rep, trace_tol=1e-6):
    """Compare the torsion degree against 4 genus - 2.

    Requires a genus hint.  When a longitude is recorded and the
    representation is rank 2 with determinant 1, its trace must be -2
    within trace_tol; a violation signals a bad lift rather than a genus
    discrepancy, and is raised as its own error.
    """
    if pres.genus_hint is None:
        raise MissingGenusHint("presentation carries no genus hint")
    longitude_trace = None
    if pres.longitude is not None and rep.n == 2 and rep.sl_flag:
        tr = rep.eval_word(pres.longitude).trace()
        longitude_trace = tr
        if not _s.zero_test(tr + 2, tol=trace_tol, scale=1.0):
            raise LongitudeTraceViolation(
                "longitude trace %s, expected -2" % (tr,))
    result = wada_torsion(pres, rep)
    target = 4 * pres.genus_hint - 2
    if result.degree == target:
        verdict = "equality"
    elif result.degree == NEG_INFINITY or result.degree < target:
        verdict = "below"
    else:
        verdict = "above"
    return GenusVerdict(verdict, result.degree, target, pres.genus_hint,
                        longitude_trace)


# presentation file grammar: "name:", "generators:", a "relators:" block of
# bare words, optional "meridian:", "longitude:", "genus:", "alexander:"

def presentation_to_text(pres):
    lines = []
    if pres.name:
        lines.append("name: %s" % pres.name)
    lines.append("generators: %s" % " ".join(pres.alphabet.names))
    lines.append("relators:")
    for r in pres.relators:
        lines.append(str(r))
    if pres.meridian is not None:
        lines.append("meridian: %s" % pres.meridian)
    if pres.longitude is not None:
        lines.append("longitude: %s" % pres.longitude)
    if pres.genus_hint is not None:
        lines.append("genus: %d" % pres.genus_hint)
    if pres.alexander_check is not None:
        lines.append("alexander: %s" % laurent_str(pres.alexander_check))
    return "\n".join(lines) + "\n"


def presentation_from_text(text):
    name = ""
    alphabet = None
    relator_strs = []
    fields = {}
    in_relators = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        key = key.strip()
        if sep and key in ("name", "generators", "relators", "meridian",
                           "longitude", "genus", "alexander"):
            in_relators = False
            val = val.strip()
            if key == "name":
                name = val
            elif key == "generators":
                try:
                    alphabet = Alphabet(val)
                except ValueError as exc:
                    raise ParseError("line %d: %s" % (ln, exc)) from None
            elif key == "relators":
                in_relators = True
                if val:
                    relator_strs.append((ln, val))
            else:
                if key in fields:
                    raise ParseError("line %d: duplicate %r" % (ln, key))
                fields[key] = (ln, val)
        elif in_relators and not sep:
            relator_strs.append((ln, line))
        elif in_relators:
            # a colon inside the relator block means an unknown header
            raise ParseError("line %d: unknown key %r" % (ln, key))
        else:
            raise ParseError("line %d: expected 'key: value'" % ln)
    if alphabet is None:
        raise ParseError("missing generators line")

    def to_word(ln, s):
        try:
            return Word.from_string(alphabet, s)
        except (ValueError, KeyError) as exc:
            raise ParseError("line %d: %s" % (ln, exc)) from None

    relators = [to_word(ln, s) for ln, s in relator_strs]
    meridian = longitude = None
    genus = None
    alexander = None
    if "meridian" in fields:
        meridian = to_word(*fields["meridian"])
    if "longitude" in fields:
        longitude = to_word(*fields["longitude"])
    if "genus" in fields:
        ln, val = fields["genus"]
        try:
            genus = int(val)
        except ValueError:
            raise ParseError("line %d: genus must be an integer" % ln) \
                from None
        if genus < 0:
            raise ParseError("line %d: genus must be nonnegative" % ln)
    if "alexander" in fields:
        ln, val = fields["alexander"]
        try:
            alexander = parse_laurent(val, kind="rational")
        except (ParseError, ValueError) as exc:
            raise ParseError("line %d: %s" % (ln, exc)) from None
    try:
        return Presentation(alphabet, relators, name=name, meridian=meridian,
                            longitude=longitude, genus_hint=genus,
                            alexander_check=alexander)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def check_alexander(pres):
    """Whether the recorded classical polynomial matches the computed one.

    The rank-1 trivial representation turns the torsion ratio into
    Delta(t)/(t - 1); cross-multiplying avoids polynomial division.
    Returns True when no polynomial is recorded.
    """
    if pres.alexander_check is None:
        return True
    result = wada_torsion(pres, trivial_rep(pres.alphabet, 1))
    t_minus_1 = LaurentPoly({1: 1}) - LaurentPoly.one()
    lhs = result.numerator * t_minus_1
    rhs = pres.alexander_check * result.denominator
    ok, _, _ = laurent_unit_match(lhs, rhs, tol=0.0)
    return ok
