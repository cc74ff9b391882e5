"""Dense matrices over the scalar kinds, with exact and floating kernels.

Exact determinants go through Bareiss single-step fraction-free elimination
(division by the previous pivot is exact, and intermediate entries stay
polynomial-sized instead of blowing up the way naive Gaussian elimination
does on Fox matrices).  ComplexF determinants use partially pivoted
elimination, and floating ranks use a largest-pivot threshold rule scaled by
the max row norm.

Matrices are immutable.  Plain ints ride along as honorary rationals and are
promoted on construction when other entries are richer; mixing quadratic
extension entries with floating complex entries is an error.

Text form: rows separated by ``;``, entries by ``,``, scalars in the scalar
grammar, e.g. ``0,1;-1,4``.
"""

from fractions import Fraction

from . import scalar as _s
from .errors import (DimensionMismatch, DivisionByZero, MixedScalarKind,
                     NotSquare, ParseError)


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _promote_entries(rows):
    kinds = set()
    quad_d = set()
    for row in rows:
        for e in row:
            k = _s.kind_of(e)
            kinds.add(k)
            if k == "quadext":
                quad_d.add(e.d)
    if "quadext" in kinds and "complex" in kinds:
        raise MixedScalarKind("quadratic-extension and complex entries mixed")
    if len(quad_d) > 1:
        # let QuadExt arithmetic raise the precise error
        a, b = sorted(quad_d)[:2]
        _ = _s.QuadExt(0, 1, a) + _s.QuadExt(0, 1, b)
    if "complex" in kinds:
        return [[_s.to_complexf(e) for e in row] for row in rows], "complex"
    if "quadext" in kinds:
        d = quad_d.pop()
        return [[e if isinstance(e, _s.QuadExt) else _s.QuadExt(e, 0, d)
                 for e in row] for row in rows], "quadext"
    return [[_simplify(Fraction(e) if isinstance(e, Fraction) else e)
             for e in row] for row in rows], "rational"


class Matrix:
    """An immutable rows x cols matrix with uniform scalar entries."""

    __slots__ = ("rows", "cols", "entries", "scalar_kind")

    def __init__(self, rows_of_entries):
        rows = [list(r) for r in rows_of_entries]
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and column")
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise DimensionMismatch("ragged rows")
        rows, kind = _promote_entries(rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", w)
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "scalar_kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols=None):
        return cls([[0] * (cols or rows) for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def _same_shape(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                "%dx%d vs %dx%d" % (self.rows, self.cols, other.rows, other.cols))

    def __add__(self, other):
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.entries])

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.entries])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                "%dx%d times %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        bt = list(zip(*other.entries))
        return Matrix([[_dot(ra, cb) for cb in bt] for ra in self.entries])

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return self * other

    def transpose(self):
        return Matrix(list(zip(*self.entries)))

    def trace(self):
        if self.rows != self.cols:
            raise NotSquare("trace of a %dx%d matrix" % (self.rows, self.cols))
        t = self.entries[0][0]
        for i in range(1, self.rows):
            t = t + self.entries[i][i]
        return _simplify(t)

    def is_square(self):
        return self.rows == self.cols

    def map(self, fn):
        return Matrix([[fn(a) for a in r] for r in self.entries])

    def max_row_norm(self):
        """Largest row 2-norm, as a float through the complex embedding."""
        best = 0.0
        for r in self.entries:
            s = sum(_s.magnitude(a) ** 2 for a in r) ** 0.5
            best = max(best, s)
        return best

    def delete_column(self, j):
        if not 0 <= j < self.cols:
            raise IndexError("no column %d" % j)
        if self.cols == 1:
            raise DimensionMismatch("cannot delete the only column")
        return Matrix([r[:j] + r[j + 1:] for r in self.entries])

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def det(self):
        return det(self)

    def rank(self, tol=None):
        return rank(self, tol=tol)

    def inverse(self):
        return inverse(self)

    def __str__(self):
        return matrix_str(self)

    def __repr__(self):
        return "Matrix(%r)" % matrix_str(self)


def _dot(ra, cb):
    acc = None
    for a, b in zip(ra, cb):
        term = a * b
        acc = term if acc is None else acc + term
    return _simplify(acc)


def det(m):
    """Determinant: Bareiss for exact kinds, partial pivoting for ComplexF."""
    if not isinstance(m, Matrix):
        raise TypeError("expected a Matrix")
    if m.rows != m.cols:
        raise NotSquare("determinant of a %dx%d matrix" % (m.rows, m.cols))
    if m.scalar_kind == "complex":
        value, _ = _float_det(m)
        return value
    return _bareiss_det(m)


def det_with_scale(m):
    """ComplexF determinant plus a noise scale for relative zero tests.

    The scale is the product over elimination steps of the largest entry
    magnitude in the remaining submatrix (clamped below by 1), which tracks
    the size of the terms whose cancellation produces the determinant; the
    float result is trustworthy down to roughly eps * scale.  Exact kinds
    return scale 1.0.
    """
    if m.rows != m.cols:
        raise NotSquare("determinant of a %dx%d matrix" % (m.rows, m.cols))
    if m.scalar_kind != "complex":
        return _bareiss_det(m), 1.0
    return _float_det(m)


def _bareiss_det(m):
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    denom = 1
    for k in range(n - 1):
        piv = None
        for r in range(k, n):
            if not _is_exact_zero(a[r][k]):
                piv = r
                break
        if piv is None:
            return _zero_like(a[k][k])
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi, rowk = a[i], a[k]
            for j in range(k + 1, n):
                num = rowi[j] * pk - aik * rowk[j]
                rowi[j] = _exact_div(num, denom)
            rowi[k] = 0
        denom = pk
    return _simplify(a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1])


def _is_exact_zero(x):
    if isinstance(x, _s.QuadExt):
        return x.a == 0 and x.b == 0
    return x == 0


def _zero_like(x):
    return 0


def _exact_div(num, denom):
    if denom == 1:
        return _simplify(num)
    if isinstance(num, int) and isinstance(denom, int):
        q, r = divmod(num, denom)
        assert r == 0, "Bareiss division not exact"
        return q
    if isinstance(denom, _s.QuadExt):
        return _simplify_quad(num / denom)
    return _simplify(Fraction(num) / denom if isinstance(num, int) else num / denom)


def _simplify_quad(x):
    return x


def _float_det(m):
    n = m.rows
    a = [[complex(e) for e in r] for r in m.entries]
    sign = 1
    scale = 1.0
    prod = complex(1.0)
    for k in range(n):
        piv, best = k, abs(a[k][k])
        step_max = 0.0
        for r in range(k, n):
            for c in range(k, n):
                step_max = max(step_max, abs(a[r][c]))
            if abs(a[r][k]) > best:
                piv, best = r, abs(a[r][k])
        scale *= max(step_max, 1.0)
        if best == 0.0:
            return _s.ComplexF(0.0, 0.0), scale
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        prod *= pk
        for i in range(k + 1, n):
            f = a[i][k] / pk
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return _s.ComplexF(sign * prod), scale


def rank(m, tol=None):
    """Row rank; exact elimination for exact kinds, thresholded for floats."""
    if not isinstance(m, Matrix):
        raise TypeError("expected a Matrix")
    if m.scalar_kind != "complex":
        return _exact_rank(m)
    return _float_rank(m, tol)


def _exact_rank(m):
    a = [[Fraction(e) if isinstance(e, int) else e for e in r]
         for r in m.entries]
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if not _is_exact_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pk = a[r][c]
        for i in range(r + 1, nr):
            if _is_exact_zero(a[i][c]):
                continue
            f = a[i][c] / pk
            for j in range(c, nc):
                a[i][j] = a[i][j] - f * a[r][j]
        r += 1
        if r == nr:
            break
    return r

def _float_rank(m, tol):
    if tol is None:
        tol = _s.zero_tolerance()
    cutoff = tol * max(1.0, m.max_row_norm())
    a = [[complex(e) for e in r] for r in m.entries]
    nr, nc = m.rows, m.cols
    rank_count = 0
    used_rows = set()
    for _ in range(min(nr, nc)):
        best, bi, bj = 0.0, None, None
        for i in range(nr):
            if i in used_rows:
                continue
            for j in range(nc):
                if abs(a[i][j]) > best:
                    best, bi, bj = abs(a[i][j]), i, j
        if best <= cutoff:
            break
        rank_count += 1
        used_rows.add(bi)
        piv = a[bi][bj]
        for i in range(nr):
            if i in used_rows:
                continue
            f = a[i][bj] / piv
            if f != 0:
                for j in range(nc):
                    a[i][j] -= f * a[bi][j]
    return rank_count


def inverse(m):
    """Matrix inverse by Gauss-Jordan elimination (field division)."""
    if m.rows != m.cols:
        raise NotSquare("inverse of a %dx%d matrix" % (m.rows, m.cols))
    n = m.rows
    if m.scalar_kind == "complex":
        a = [[complex(e) for e in r] for r in m.entries]
        aug = [row + [1.0 + 0j if i == j else 0j for j in range(n)]
               for i, row in enumerate(a)]
        for k in range(n):
            piv, best = None, 0.0
            for r in range(k, n):
                if abs(aug[r][k]) > best:
                    piv, best = r, abs(aug[r][k])
            if piv is None or best == 0.0:
                raise DivisionByZero("matrix is singular")
            aug[k], aug[piv] = aug[piv], aug[k]
            pk = aug[k][k]
            aug[k] = [x / pk for x in aug[k]]
            for r in range(n):
                if r != k and aug[r][k] != 0:
                    f = aug[r][k]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[k])]
        return Matrix([[_s.ComplexF(aug[i][n + j]) for j in range(n)]
                       for i in range(n)])
    a = [[Fraction(e) if isinstance(e, int) else e for e in r]
         for r in m.entries]
    aug = [row + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(a)]
    for k in range(n):
        piv = None
        for r in range(k, n):
            if not _is_exact_zero(aug[r][k]):
                piv = r
                break
        if piv is None:
            raise DivisionByZero("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        aug[k] = [x / pk for x in aug[k]]
        for r in range(n):
            if r != k and not _is_exact_zero(aug[r][k]):
                f = aug[r][k]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[k])]
    return Matrix([[_simplify(aug[i][n + j]) for j in range(n)]
                   for i in range(n)])


def block_assemble(blocks):
    """Concatenate a grid of matrices into one matrix.

    ``blocks`` is a list of block-rows; heights must agree along each block
    row and widths along each block column.
    """
    if not blocks or not blocks[0]:
        raise ValueError("empty block grid")
    widths = [b.cols for b in blocks[0]]
    out_rows = []
    for brow in blocks:
        if len(brow) != len(widths):
            raise DimensionMismatch("ragged block grid")
        h = brow[0].rows
        for b, w in zip(brow, widths):
            if b.rows != h:
                raise DimensionMismatch("block heights differ within a row")
            if b.cols != w:
                raise DimensionMismatch("block widths differ within a column")
        for i in range(h):
            row = []
            for b in brow:
                row.extend(b.entries[i])
            out_rows.append(row)
    return Matrix(out_rows)


def matrix_str(m):
    return ";".join(",".join(_s.scalar_str(e) for e in row)
                    for row in m.entries)


def parse_matrix(text, kind=None):
    """Parse the ``row;row`` / ``entry,entry`` matrix grammar."""
    rows = []
    for chunk in text.strip().split(";"):
        if not chunk.strip():
            raise ParseError("empty row in matrix literal")
        rows.append([_s.parse_scalar(e, kind=kind)
                     for e in chunk.split(",")])
    return Matrix(rows)
