"""The command line surface: outputs, exit codes, determinism."""

import json
import os

import pytest

from torsioncert.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFox:
    def test_known_derivative(self, capsys):
        code, out, _ = run(capsys, "fox", "yxyXY", "y")
        assert code == 0
        assert "derivative: 1 + y*x - y*x*y*X*Y" in out

    def test_inferred_alphabet(self, capsys):
        code, out, _ = run(capsys, "fox", "abaBAB", "a")
        assert code == 0
        assert "derivative: 1 + a*b - a*b*a*B*A" in out

    def test_structured(self, capsys):
        code, out, _ = run(capsys, "--structured", "fox", "yxyXY", "x")
        assert code == 0
        doc = json.loads(out)
        assert doc["derivative"] == "y - y*x*y*X"


class TestCertify:
    def test_product_character(self, capsys):
        code, out, _ = run(capsys, "certify", "pants.sut",
                           "--char", "(0, 0, 0)")
        assert code == 0
        assert "determinant: 3" in out
        assert "is_product: true" in out

    def test_non_product_character(self, capsys):
        code, out, _ = run(capsys, "certify", "pants.sut",
                           "--char", "(4, 4, 5)")
        assert code == 1
        assert "is_product: false" in out

    def test_oracle_column(self, capsys):
        code, out, _ = run(capsys, "certify", "pants.sut",
                           "--rep", "schottky.rep", "--oracle")
        assert code == 1
        assert "oracle_h1: 1" in out

    def test_sym_power(self, capsys):
        code, out, _ = run(capsys, "certify", "pants.sut",
                           "--char", "(2, 2, 1)", "--sym-power", "3")
        assert code == 1

    def test_rejects_rep_and_char_together(self, capsys):
        code, _, err = run(capsys, "certify", "pants.sut",
                           "--char", "(0, 0, 0)", "--rep", "schottky.rep")
        assert code == 2
        assert "error" in err


class TestTorsion:
    def test_trefoil_classical(self, capsys):
        code, out, _ = run(capsys, "torsion", "trefoil.pres", "--trivial-rep")
        assert code == 0
        assert "degree: 1" in out

    def test_fig8_rank_two(self, capsys):
        code, out, _ = run(capsys, "torsion", "fig8.pres", "--trivial-rep2")
        assert code == 0
        assert "t^-2 - 6*t^-1 + 11 - 6*t + t^2" in out

    def test_parabolic_genus_check(self, capsys):
        code, out, _ = run(capsys, "torsion", "fig8.pres", "--parabolic",
                           "--genus-check")
        assert code == 0
        assert "verdict: equality" in out

    def test_structured_fields(self, capsys):
        code, out, _ = run(capsys, "--structured", "torsion", "trefoil.pres",
                           "--parabolic")
        assert code == 0
        doc = json.loads(out)
        assert doc["degree"] == 2
        assert doc["norm_bound"] == "1"


class TestLocus:
    def test_plane_echo(self, capsys):
        code, out, _ = run(capsys, "locus", "--N", "2")
        assert code == 0
        assert "x + y - z - 3" in out
        assert "samples: 100" in out
        assert "agreements: 100" in out

    def test_verify_small(self, capsys):
        code, out, _ = run(capsys, "locus", "--N", "3", "--samples", "10")
        assert code == 0
        assert "ok: true" in out

    def test_corrupt_fails(self, capsys):
        code, out, _ = run(capsys, "locus", "--N", "3", "--samples", "10",
                           "--corrupt")
        assert code == 1
        assert "ok: false" in out

    def test_scan_membership(self, capsys):
        code, out, _ = run(capsys, "locus", "--N", "6", "--scan",
                           "--samples", "5")
        assert code == 0
        assert "point_2_2_1_in_locus: true" in out

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, "locus", "--N", "1")
        assert code == 2


class TestCharlift:
    def test_quadext_lift(self, capsys):
        code, out, _ = run(capsys, "charlift", "(4, 4, 5)")
        assert code == 0
        assert "scalar_kind: quadext" in out
        assert "reducible: false" in out
        assert "sqrt(21)" in out

    def test_reducible_exit(self, capsys):
        code, out, _ = run(capsys, "charlift", "(2, 2, 2)")
        assert code == 1
        assert "reducible: true" in out

    def test_sym_power_images(self, capsys):
        code, out, _ = run(capsys, "charlift", "(3, 3, 3)", "--sym-power", "3")
        assert code == 0
        assert "sym3_image_x" in out


class TestValidate:
    def test_bundle_is_clean(self, capsys):
        code, out, _ = run(capsys, "validate")
        assert code == 0
        for name in ("trefoil.pres", "fig8.pres", "pants.sut",
                     "schottky.rep"):
            assert name in out

    def test_each_fixture_fails(self, capsys):
        for name in ("bad_relator.pres", "bad_letter.pres",
                     "bad_alexander.pres", "bad_images.sut",
                     "bad_matrix.rep"):
            code, _, err = run(capsys, "validate",
                               os.path.join(FIXTURES, name))
            assert code == 2, name
            assert err.startswith("error:"), name

    def test_good_file_by_path(self, capsys):
        import torsioncert
        path = os.path.join(os.path.dirname(torsioncert.__file__),
                            "data", "trefoil.pres")
        code, out, _ = run(capsys, "validate", path)
        assert code == 0


class TestConfig:
    def test_structured_output_is_deterministic(self, capsys):
        code1, out1, _ = run(capsys, "--structured", "locus", "--N", "3",
                             "--samples", "6")
        code2, out2, _ = run(capsys, "--structured", "locus", "--N", "3",
                             "--samples", "6")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_seed_changes_draws(self, capsys):
        _, out1, _ = run(capsys, "--structured", "--seed", "1", "locus",
                         "--N", "2")
        _, out2, _ = run(capsys, "--structured", "--seed", "2", "locus",
                         "--N", "2")
        d1 = json.loads(out1)
        d2 = json.loads(out2)
        assert d1["plane"] == d2["plane"]
        assert d1["agreements"] == d2["agreements"] == 100

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("TORSION_CERT_SEED", "99")
        code, out, _ = run(capsys, "--structured", "locus", "--N", "3",
                           "--samples", "4")
        assert code == 0
        assert json.loads(out)["seed"] == 99

    def test_env_tol_must_be_positive(self, capsys, monkeypatch):
        monkeypatch.setenv("TORSION_CERT_TOL", "-1")
        code, _, err = run(capsys, "fox", "xy", "x")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "certify", "no_such_file.sut",
                           "--char", "(0, 0, 0)")
        assert code == 2
        assert "error" in err
