"""Matrix representations, symmetric powers, parabolic solving."""

import cmath
from fractions import Fraction

import pytest

from torsioncert.errors import (
    AlphabetMismatch,
    MixedExtension,
    NoRootFound,
    NotSL2,
    NotTwoByTwo,
    ParseError,
    ReducibleOnly,
    ScalarEmbedding,
)
from torsioncert.freegroup import Alphabet, Word, parse_ring_elem
from torsioncert.linalg import Matrix, det
from torsioncert.representation import (
    Representation,
    SymPowerRep,
    check_self_dual,
    circle_homology,
    rep_from_text,
    rep_to_text,
    solve_parabolic,
    sym_power,
)
from torsioncert.scalar import ComplexF, QuadExt
from torsioncert.seeds import rng_for
from torsioncert.twisted import Presentation

from helpers import mat2_mul, random_sl2, random_word

XY = Alphabet("x y")
AB = Alphabet("a b")


def rand_rep(rng, alphabet=XY):
    return Representation(alphabet,
                          [random_sl2(rng) for _ in alphabet.generators()],
                          sl_flag=True)


class TestRepresentation:
    def test_eval_word_is_homomorphism(self):
        rng = rng_for(23, 0)
        rep = rand_rep(rng)
        for _ in range(40):
            u = random_word(rng, XY)
            v = random_word(rng, XY)
            assert rep.eval_word(u * v) == rep.eval_word(u) * rep.eval_word(v)
            wi = rep.eval_word(u.inverse())
            assert rep.eval_word(u) * wi == Matrix.identity(2)

    def test_eval_word_against_tuple_oracle(self):
        rng = rng_for(23, 1)
        rep = rand_rep(rng)
        imgs = {}
        for i, g in enumerate(XY.generators()):
            m = rep.image(i)
            imgs[i + 1] = ((m[0, 0], m[0, 1]), (m[1, 0], m[1, 1]))
            mi = rep.image_inverse(i)
            imgs[-(i + 1)] = ((mi[0, 0], mi[0, 1]), (mi[1, 0], mi[1, 1]))
        for _ in range(30):
            w = random_word(rng, XY)
            acc = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
            for letter in w.letters:
                acc = mat2_mul(acc, imgs[letter])
            got = rep.eval_word(w)
            assert all(got[i, j] == acc[i][j] for i in range(2) for j in range(2))

    def test_eval_ring_elem_is_ring_hom(self):
        rng = rng_for(23, 2)
        rep = rand_rep(rng)
        for _ in range(20):
            a = parse_ring_elem(XY, "1") - parse_ring_elem(XY, "x")
            w = random_word(rng, XY, 5)
            from torsioncert.freegroup import GroupRingElem
            b = GroupRingElem.from_word(w, rng.randint(-3, 3))
            assert rep.eval_ring_elem(a * b) == \
                rep.eval_ring_elem(a) * rep.eval_ring_elem(b)
            assert rep.eval_ring_elem(a + b) == \
                rep.eval_ring_elem(a) + rep.eval_ring_elem(b)

    def test_singular_image_rejected(self):
        with pytest.raises(Exception) as exc_info:
            Representation(XY, [Matrix([[1, 1], [1, 1]]), Matrix.identity(2)])
        assert "singular" in str(exc_info.value)

    def test_sl_flag_enforced(self):
        with pytest.raises(ValueError) as exc_info:
            Representation(XY, [Matrix([[2, 0], [0, 1]]),
                                Matrix.identity(2)], sl_flag=True)
        assert "det" in str(exc_info.value)

    def test_alphabet_guard(self):
        rep = rand_rep(rng_for(23, 3))
        with pytest.raises(AlphabetMismatch):
            rep.eval_word(Word.from_string(AB, "a"))

    def test_kind_promotion(self):
        rep = Representation(XY, [Matrix([[1, 1], [0, 1]]),
                                  Matrix([[QuadExt(0, 1, -1), QuadExt(0, 0, -1)],
                                          [QuadExt(0, 0, -1), QuadExt(0, -1, -1)]])])
        assert rep.scalar_kind == "quadext"
        cf = rep.to_complexf()
        assert cf.scalar_kind == "complex"
        got = cf.eval_word(Word.from_string(XY, "y"))
        assert abs(complex(got[0, 0]) - 1j) < 1e-12

    def test_mixed_extensions_rejected(self):
        # sqrt(5) and sqrt(-3) images cannot share a representation
        with pytest.raises((MixedExtension, ScalarEmbedding)):
            rep = Representation(
                XY, [Matrix([[QuadExt(1, 1, 5), QuadExt(0, 0, 5)],
                             [QuadExt(0, 0, 5), QuadExt(1, -1, 5)]]),
                     Matrix([[QuadExt(1, 1, -3), QuadExt(0, 0, -3)],
                             [QuadExt(0, 0, -3), QuadExt(1, -1, -3)]])])
            rep.eval_word(Word.from_string(XY, "xy"))

    def test_conjugated(self):
        rng = rng_for(23, 4)
        rep = rand_rep(rng)
        p = Matrix([[1, 1], [1, 2]])
        conj = rep.conjugated(p)
        w = random_word(rng, XY)
        lhs = conj.eval_word(w)
        pinv = p.inverse()
        assert lhs == p * rep.eval_word(w) * pinv


class TestSymPower:
    def test_sym2_is_identity_functor(self):
        rng = rng_for(23, 5)
        for _ in range(10):
            m = random_sl2(rng)
            assert sym_power(m, 2) == m

    def test_homomorphism_property(self):
        rng = rng_for(23, 6)
        for N in (3, 4, 5):
            for _ in range(10):
                a = random_sl2(rng)
                b = random_sl2(rng)
                assert sym_power(a * b, N) == sym_power(a, N) * sym_power(b, N)
                assert det(sym_power(a, N)) == 1

    def test_sym3_trace_identity(self):
        rng = rng_for(23, 7)
        for _ in range(20):
            m = random_sl2(rng)
            assert sym_power(m, 3).trace() == m.trace() ** 2 - 1

    def test_identity_maps_to_identity(self):
        for N in (2, 3, 4):
            assert sym_power(Matrix.identity(2), N) == Matrix.identity(N)

    def test_rejects_wrong_size(self):
        with pytest.raises(NotTwoByTwo):
            sym_power(Matrix.identity(3), 3)

    def test_rep_wrapper(self):
        rng = rng_for(23, 8)
        base = rand_rep(rng)
        rep3 = SymPowerRep(base, 3)
        assert rep3.n == 3
        w = random_word(rng, XY)
        assert rep3.eval_word(w) == sym_power(base.eval_word(w), 3)


class TestCircleHomology:
    def test_identity_gives_full_rank(self):
        assert circle_homology(Matrix.identity(2)) == (2, 2)

    def test_parabolic_gives_one(self):
        assert circle_homology(Matrix([[1, 1], [0, 1]])) == (1, 1)

    def test_negative_parabolic_gives_zero(self):
        assert circle_homology(Matrix([[-1, 1], [0, -1]])) == (0, 0)

    def test_trace_dichotomy(self):
        rng = rng_for(23, 9)
        for _ in range(60):
            m = random_sl2(rng)
            h0, h1 = circle_homology(m)
            assert h0 == h1
            if m.trace() != 2:
                assert (h0, h1) == (0, 0)
            else:
                assert h0 >= 1


class TestSelfDuality:
    def test_exact_sl2_is_self_dual(self):
        rng = rng_for(23, 10)
        for _ in range(25):
            rep = rand_rep(rng)
            assert check_self_dual(rep) == 0

    def test_det_two_counterexample(self):
        rep = Representation(XY, [Matrix([[2, 0], [0, 1]]),
                                  Matrix([[1, 1], [0, 1]])])
        dev = check_self_dual(rep)
        assert dev != 0

    def test_rank3_rejected(self):
        rep = Representation(XY, [Matrix.identity(3), Matrix.identity(3)])
        with pytest.raises(NotSL2):
            check_self_dual(rep)


class TestSolveParabolic:
    def test_trefoil_root(self):
        pres = Presentation(AB, [Word.from_string(AB, "abaBAB")])
        rep = solve_parabolic(pres)
        assert rep.scalar_kind == "complex"
        # the off-diagonal parameter solves the Riley equation; trefoil: y = -1
        b = rep.image(1)
        assert abs(complex(b[1, 0]) - (-1)) < 1e-8
        # images satisfy the relator
        r = rep.eval_word(pres.relators[0])
        dev = max(abs(complex(r[i, j] - Matrix.identity(2)[i, j]))
                  for i in range(2) for j in range(2))
        assert dev < 1e-10

    def test_figure_eight_roots(self):
        pres = Presentation(AB, [Word.from_string(AB, "aBAbaBabAB")])
        rep0 = solve_parabolic(pres, which=0)
        rep1 = solve_parabolic(pres, which=1)
        ys = sorted([complex(rep0.image(1)[1, 0]), complex(rep1.image(1)[1, 0])],
                    key=lambda c: c.imag)
        assert ys[0] == pytest.approx((1 - 1j * cmath.sqrt(3).real) / 2, abs=1e-8)
        assert ys[1] == pytest.approx((1 + 1j * cmath.sqrt(3).real) / 2, abs=1e-8)

    def test_sign_twist_preserves_relator(self):
        pres = Presentation(AB, [Word.from_string(AB, "aBAbaBabAB")])
        rep = solve_parabolic(pres, signs=(-1, -1))
        assert complex(rep.image(0).trace()).real == pytest.approx(-2.0)
        r = rep.eval_word(pres.relators[0])
        dev = max(abs(complex(r[i, j] - Matrix.identity(2)[i, j]))
                  for i in range(2) for j in range(2))
        assert dev < 1e-9

    def test_single_generator_is_reducible_only(self):
        pres = Presentation(Alphabet("a"), [])
        with pytest.raises(ReducibleOnly):
            solve_parabolic(pres)

    def test_no_root_when_equation_has_none(self):
        # both meridians forced parabolic around a trivial relator: the
        # Riley polynomial for abAB is y alone, whose only root is reducible
        pres = Presentation(AB, [Word.from_string(AB, "abAB")])
        with pytest.raises((NoRootFound, ReducibleOnly)):
            solve_parabolic(pres)


class TestSerialization:
    def test_round_trip(self):
        rng = rng_for(23, 11)
        rep = rand_rep(rng)
        text = rep_to_text(rep)
        back = rep_from_text(text)
        assert back.alphabet == rep.alphabet
        assert all(back.image(i) == rep.image(i) for i in range(2))
        assert back.sl_flag == rep.sl_flag
        assert rep_to_text(back) == text

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            rep_from_text("alphabet: x y\nscalar: rational\nsl: false\n")
        with pytest.raises(ParseError):
            rep_from_text("alphabet: x y\nscalar: rational\nsl: false\n"
                          "x: 1,0;0,1\nx: 1,0;0,1\ny: 1,0;0,1\n")
        with pytest.raises(ParseError):
            rep_from_text("alphabet: x\nscalar: rational\nsl: false\n"
                          "x: 1,0;0\n")
