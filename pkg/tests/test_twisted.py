"""Twisted chain complexes, Wada torsion, and the genus comparison."""

from fractions import Fraction

import pytest

from torsioncert.errors import (
    ChainCondition,
    LongitudeTraceViolation,
    MissingGenusHint,
    NotDeficiencyOne,
    NotInfiniteCyclic,
    ParseError,
)
from torsioncert.freegroup import Alphabet, Word, fox_derivative
from torsioncert.linalg import Matrix
from torsioncert.polynomial import (
    LaurentPoly,
    laurent_unit_match,
    parse_laurent,
    poly_matrix_det,
)
from torsioncert.representation import Representation, solve_parabolic
from torsioncert.seeds import rng_for
from torsioncert.twisted import (
    Presentation,
    abelianization,
    build_complex,
    check_alexander,
    conjecture_check,
    presentation_from_text,
    presentation_to_text,
    trivial_rep,
    twisted_eval,
    twisted_eval_word_minus_one,
    wada_torsion,
)

from helpers import random_sl2

AB = Alphabet("a b")


def trefoil():
    return Presentation(
        AB, [Word.from_string(AB, "abaBAB")], name="trefoil",
        meridian=Word.from_string(AB, "a"),
        longitude=Word.from_string(AB, "abababAAAAAA"),
        genus_hint=1,
        alexander_check=parse_laurent("1 - t + t^2"))


def fig8(genus=1, longitude=True):
    return Presentation(
        AB, [Word.from_string(AB, "aBAbaBabAB")], name="fig8",
        meridian=Word.from_string(AB, "a"),
        longitude=Word.from_string(AB, "bABaaBAb") if longitude else None,
        genus_hint=genus)


def seifert_torsion(v_rows):
    """det(V - t V^T), the Alexander polynomial from a Seifert matrix."""
    v = v_rows
    n = len(v)
    rows = [[LaurentPoly({0: Fraction(v[i][j]), 1: -Fraction(v[j][i])})
             for j in range(n)] for i in range(n)]
    return poly_matrix_det(rows)


class TestPresentation:
    def test_relator_must_be_cyclically_reduced(self):
        with pytest.raises(ValueError):
            Presentation(AB, [Word.from_string(AB, "Aba")])

    def test_deficiency(self):
        assert trefoil().deficiency() == 1
        assert Presentation(AB, []).deficiency() == 2

    def test_genus_hint_validation(self):
        with pytest.raises(ValueError):
            Presentation(AB, [], genus_hint=-1)


class TestAbelianization:
    def test_trefoil_weights(self):
        phi = abelianization(trefoil())
        assert phi.exponents == (1, 1)
        assert phi.weight(Word.from_string(AB, "ab")) == 2
        assert phi.weight(Word.from_string(AB, "aB")) == 0

    def test_figure_eight_weights(self):
        assert abelianization(fig8()).exponents == (1, 1)

    def test_unequal_weights(self):
        pres = Presentation(AB, [Word.from_string(AB, "aaB")])
        phi = abelianization(pres)
        assert phi.exponents == (1, 2)
        assert phi.weight(pres.relators[0]) == 0

    def test_free_rank_one(self):
        phi = abelianization(Presentation(Alphabet("a"), []))
        assert phi.exponents == (1,)

    def test_rank_two_rejected(self):
        with pytest.raises(NotInfiniteCyclic):
            abelianization(Presentation(AB, [Word.from_string(AB, "abAB")]))

    def test_torsion_rejected(self):
        # a^2 b^2 abelianizes to Z + Z/2
        with pytest.raises(NotInfiniteCyclic):
            abelianization(Presentation(AB, [Word.from_string(AB, "aabb")]))


class TestTwistedComplex:
    def test_twisted_eval_of_generator(self):
        pres = trefoil()
        phi = abelianization(pres)
        rep = trivial_rep(AB, n=1)
        from torsioncert.freegroup import GroupRingElem
        e = GroupRingElem.from_word(Word.from_string(AB, "ab"))
        grid = twisted_eval(e, rep, phi)
        assert grid == [[LaurentPoly({2: Fraction(1)})]]

    def test_chain_condition_holds(self):
        pres = trefoil()
        rep = solve_parabolic(pres)
        cx = build_complex(pres, rep, twist=abelianization(pres))
        assert cx.twisted
        assert len(cx.d2) == 2 and len(cx.d2[0]) == 4
        assert len(cx.d1) == 4 and len(cx.d1[0]) == 2

    def test_chain_condition_catches_non_representation(self):
        pres = trefoil()
        rng = rng_for(37, 0)
        bad = Representation(AB, [random_sl2(rng), random_sl2(rng)],
                             sl_flag=True)
        with pytest.raises(ChainCondition):
            build_complex(pres, bad, twist=abelianization(pres))

    def test_word_minus_one_matches_fox_expansion(self):
        # Phi(w) - I = sum_j Phi(dw/dx_j) (Phi(x_j) - I) after twisting
        pres = trefoil()
        phi = abelianization(pres)
        rep = trivial_rep(AB, n=1)
        w = Word.from_string(AB, "abA")
        lhs = twisted_eval_word_minus_one(w, rep, phi)
        from torsioncert.freegroup import GroupRingElem
        total = None
        for j in range(2):
            dj = twisted_eval(fox_derivative(w, j), rep, phi)
            gen = twisted_eval_word_minus_one(Word(AB, (j + 1,)), rep, phi)
            term = dj[0][0] * gen[0][0]
            total = term if total is None else total + term
        assert lhs[0][0] == total


class TestWadaTorsion:
    def test_trefoil_classical(self):
        result = wada_torsion(trefoil(), trivial_rep(AB, n=1))
        ok, _, _ = laurent_unit_match(result.numerator,
                                      parse_laurent("1 - t + t^2"))
        assert ok
        ok, _, _ = laurent_unit_match(result.denominator,
                                      parse_laurent("t - 1"))
        assert ok
        assert result.degree == 1
        assert result.norm_bound == 1
        assert result.genus_bound == 1

    def test_trefoil_matches_seifert_oracle(self):
        result = wada_torsion(trefoil(), trivial_rep(AB, n=1))
        oracle = seifert_torsion([[-1, 1], [0, -1]])
        ok, _, _ = laurent_unit_match(result.numerator, oracle)
        assert ok

    def test_figure_eight_matches_seifert_oracle(self):
        result = wada_torsion(fig8(), trivial_rep(AB, n=1))
        oracle = seifert_torsion([[1, 1], [0, -1]])
        ok, _, _ = laurent_unit_match(result.numerator, oracle)
        assert ok

    def test_rank_two_trivial_is_square_of_classical(self):
        result = wada_torsion(trefoil(), trivial_rep(AB, n=2))
        classical = parse_laurent("1 - t + t^2")
        ok, _, _ = laurent_unit_match(result.numerator, classical * classical)
        assert ok
        assert result.degree == 2
        assert result.norm_bound == 1

    def test_free_generator(self):
        pres = Presentation(Alphabet("a"), [])
        result = wada_torsion(pres, trivial_rep(Alphabet("a"), n=1))
        assert result.numerator == LaurentPoly.one()
        assert result.degree == -1

    def test_deficiency_guard(self):
        pres = Presentation(AB, [Word.from_string(AB, "abaBAB"),
                                 Word.from_string(AB, "ab")])
        with pytest.raises(NotDeficiencyOne):
            wada_torsion(pres, trivial_rep(AB, n=1))

    def test_parabolic_figure_eight_degree(self):
        result = wada_torsion(fig8(), solve_parabolic(fig8()))
        assert result.degree == 2
        assert result.norm_bound == 1
        assert result.genus_bound_int() == 1


class TestConjectureCheck:
    def test_parabolic_equality(self):
        verdict = conjecture_check(fig8(), solve_parabolic(fig8()))
        assert verdict.verdict == "equality"
        assert verdict.degree == 2 and verdict.target == 2
        assert abs(complex(verdict.longitude_trace) + 2) < 1e-6

    def test_inflated_genus_reads_below(self):
        verdict = conjecture_check(fig8(genus=2), solve_parabolic(fig8()))
        assert verdict.verdict == "below"
        assert verdict.target == 6

    def test_deflated_genus_reads_above(self):
        # a genus-0 hint puts the target at -2, below any knot-like degree
        verdict = conjecture_check(fig8(genus=0), trivial_rep(AB, n=1))
        assert verdict.verdict == "above"
        assert verdict.degree == 1 and verdict.target == -2

    def test_longitude_trace_gate(self):
        d = Matrix([[2, 0], [0, Fraction(1, 2)]])
        rep = Representation(AB, [d, d], sl_flag=True)
        with pytest.raises(LongitudeTraceViolation):
            conjecture_check(fig8(), rep)

    def test_missing_genus_hint(self):
        pres = Presentation(AB, [Word.from_string(AB, "abaBAB")])
        with pytest.raises(MissingGenusHint):
            conjecture_check(pres, trivial_rep(AB, n=1))


class TestSerialization:
    def test_round_trip(self):
        pres = trefoil()
        text = presentation_to_text(pres)
        back = presentation_from_text(text)
        assert back.alphabet == pres.alphabet
        assert back.relators == pres.relators
        assert back.meridian == pres.meridian
        assert back.longitude == pres.longitude
        assert back.genus_hint == pres.genus_hint
        assert back.alexander_check == pres.alexander_check
        assert presentation_to_text(back) == text

    def test_alexander_check_passes_on_good_data(self):
        assert check_alexander(trefoil())

    def test_alexander_check_fails_on_bad_data(self):
        pres = Presentation(
            AB, [Word.from_string(AB, "abaBAB")], name="broken",
            alexander_check=parse_laurent("1 + t"))
        assert not check_alexander(pres)

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            presentation_from_text("relators:\nabAB\n")
        with pytest.raises(ParseError):
            presentation_from_text("generators: a b\nrelators:\nabc\n")
        with pytest.raises(ParseError):
            presentation_from_text("generators: a b\nrelators:\nabAB\n"
                                   "genus: -3\n")
