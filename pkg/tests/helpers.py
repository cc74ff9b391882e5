"""Shared test utilities: independent little oracles and random generators.

The oracles here deliberately avoid the package's own linear algebra so
that agreement between the two routes means something: determinants come
from the permutation expansion, ranks from minor enumeration, and matrix
products from plain tuple arithmetic.
"""

from fractions import Fraction
from itertools import combinations, permutations

from torsioncert.freegroup import Word
from torsioncert.linalg import Matrix


def perm_det(rows):
    """Determinant by the permutation expansion; entries of any ring."""
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def minor_rank(m):
    """Rank by enumerating square minors with the permutation determinant."""
    rows = [[Fraction(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    for size in range(min(m.rows, m.cols), 0, -1):
        for rsel in combinations(range(m.rows), size):
            for csel in combinations(range(m.cols), size):
                sub = [[rows[i][j] for j in csel] for i in rsel]
                if perm_det(sub) != 0:
                    return size
    return 0


def mat2_mul(a, b):
    """2x2 product on plain tuples, no package code."""
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0],
             a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0],
             a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def random_sl2(rng, size=3, steps=4):
    """An integer SL2 matrix as a product of elementary shears."""
    m = Matrix.identity(2)
    for _ in range(steps):
        k = rng.randint(-size, size)
        if rng.random() < 0.5:
            e = Matrix([[1, k], [0, 1]])
        else:
            e = Matrix([[1, 0], [k, 1]])
        m = m * e
    return m


def random_word(rng, alphabet, max_len=8):
    """A freely reduced random word."""
    letters = []
    k = len(alphabet)
    for _ in range(rng.randint(0, max_len)):
        choices = [l for l in range(-k, k + 1) if l != 0]
        if letters:
            choices = [l for l in choices if l != -letters[-1]]
        letters.append(rng.choice(choices))
    return Word(alphabet, tuple(letters))


def random_fraction(rng, num=12, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))
