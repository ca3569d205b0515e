import json
import math
import subprocess
import sys

import pytest

from blaschke import BlaschkeProduct, extremal_product
from blaschke.cli import main, product_from_json, product_to_json


def read(path):
    return path.read_text()


class TestProductJson:
    def test_round_trip_is_lossless(self):
        B, _ = extremal_product(5, 2)
        again = product_from_json(product_to_json(B))
        assert again.zeros == B.zeros
        assert again.alpha == B.alpha

    def test_malformed_document(self):
        with pytest.raises(Exception):
            product_from_json("{not json")


class TestExtremalCommand:
    def test_writes_all_outputs(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["extremal", "--n", "2", "--nu", "1", "--out", str(out)]) == 0
        for name in ("product.json", "extremal.json", "zeros.csv", "profile.csv"):
            assert (out / name).exists()
        spec = json.loads(read(out / "extremal.json"))
        assert spec == {"n": 2, "nu": "1", "kind": "first", "kappa": "1/6",
                        "M": 3.0, "m": 1.0}
        assert read(out / "zeros.csv").splitlines()[0] == "re,im"
        profile = read(out / "profile.csv").splitlines()
        assert profile[0] == "t,deriv_modulus"
        assert len(profile) == 8192 + 1

    def test_outputs_are_byte_stable(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["extremal", "--n", "3", "--nu", "-1/4", "--out", str(a)])
        main(["extremal", "--n", "3", "--nu", "-1/4", "--out", str(b)])
        for name in ("product.json", "extremal.json", "zeros.csv", "profile.csv"):
            assert read(a / name) == read(b / name)

    def test_decimal_nu_parses_exactly(self, tmp_path):
        out = tmp_path / "r"
        assert main(["extremal", "--n", "2", "--nu", "0.25", "--out", str(out)]) == 0
        assert json.loads(read(out / "extremal.json"))["nu"] == "1/4"

    def test_monomial_profile_constant(self, tmp_path, capsys):
        out = tmp_path / "m"
        assert main(["extremal", "--n", "2", "--nu", "0", "--out", str(out)]) == 0
        rows = read(out / "profile.csv").splitlines()[1:]
        values = {row.split(",")[1] for row in rows}
        assert all(abs(float(v) - 2.0) < 1e-12 for v in values)

    def test_bad_nu_exits_one(self, capsys):
        assert main(["extremal", "--n", "2", "--nu", "-2"]) == 1


class TestScanCommand:
    def test_example_summary(self, tmp_path, capsys):
        out = tmp_path / "run"
        main(["extremal", "--n", "2", "--nu", "1", "--out", str(out)])
        capsys.readouterr()
        code = main(["scan", "--product", str(out / "product.json"),
                     "--out", str(tmp_path / "scan")])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "M,m,mean"
        big, small, mean = (float(x) for x in lines[1].split(","))
        assert big == pytest.approx(3.0, abs=1e-9)
        assert small == pytest.approx(1.0, abs=1e-9)
        assert mean == pytest.approx(2.0, abs=1e-9)

    def test_malformed_json_exits_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"degree\": 2}")
        assert main(["scan", "--product", str(bad)]) == 1

    def test_missing_file_exits_one(self, capsys):
        assert main(["scan", "--product", "/nonexistent/product.json"]) == 1


class TestPrescribeCommand:
    def test_example_triple(self, tmp_path, capsys):
        out = tmp_path / "p"
        code = main(["prescribe", "--n", "2", "--m", "1", "--M", "3",
                     "--out", str(out)])
        assert code == 0
        B = product_from_json(read(out / "product.json"))
        want, _ = extremal_product(2, 1)
        for a in B.zeros:
            assert min(abs(a - b) for b in want.zeros) < 1e-10
        achieved = json.loads(read(out / "achieved.json"))
        assert achieved["achieved_M"] == pytest.approx(3.0, abs=1e-9)
        assert achieved["achieved_m"] == pytest.approx(1.0, abs=1e-9)

    def test_infeasible_exits_one_citing_bound(self, tmp_path, capsys):
        code = main(["prescribe", "--n", "3", "--m", "2.9", "--M", "4",
                     "--out", str(tmp_path)])
        assert code == 1
        assert "2.75" in capsys.readouterr().err

    def test_csv_report(self, tmp_path):
        out = tmp_path / "c"
        main(["prescribe", "--n", "2", "--m", "1", "--M", "3",
              "--out", str(out), "--format", "csv"])
        lines = read(out / "achieved.csv").splitlines()
        assert lines[0].startswith("n,target_M,target_m,achieved_M")


class TestPreimagesCommand:
    def test_lifted_points(self, tmp_path, capsys):
        out = tmp_path / "run"
        main(["extremal", "--n", "2", "--nu", "1", "--out", str(out)])
        capsys.readouterr()
        code = main(["preimages", "--product", str(out / "product.json"),
                     "--lam", "1", "--lifted"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["points"]) == 3
        pts = [complex(p["re"], p["im"]) for p in doc["points"]]
        assert min(abs(p - 1.0) for p in pts) < 1e-9

    def test_weights_for_vanishing_product(self, tmp_path, capsys):
        B, _ = extremal_product(2, 1)
        lifted = BlaschkeProduct(B.zeros + (0j,), B.alpha)
        path = tmp_path / "p.json"
        path.write_text(product_to_json(lifted))
        code = main(["preimages", "--product", str(path), "--lam", "1",
                     "--weights"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert sorted(doc["weights"]) == pytest.approx([0.25, 0.25, 0.5], abs=1e-9)

    def test_complex_lambda_with_i_suffix(self, tmp_path, capsys):
        B, _ = extremal_product(2, 1)
        path = tmp_path / "p.json"
        path.write_text(product_to_json(B))
        code = main(["preimages", "--product", str(path),
                     "--lam", "0.6+0.8i"])
        assert code == 0


class TestClassifyCommand:
    def test_boundary_example(self, tmp_path, capsys):
        out = tmp_path / "run"
        main(["extremal", "--n", "2", "--nu", "1", "--out", str(out)])
        capsys.readouterr()
        assert main(["classify", "--product", str(out / "product.json")]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lower_homeo"] == "boundary"
        assert doc["resolved"]["lower_homeo"] is True
        assert doc["resolved"]["lower_diffeo"] is False
        assert doc["extremal"]["kind"] == "first"


class TestVerifyCommand:
    def test_prescribe_suite_passes(self, capsys):
        assert main(["verify", "--suite", "prescribe", "--seed", "7"]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out

    def test_unknown_suite_exits_one(self, capsys):
        assert main(["verify", "--suite", "bogus"]) == 1


class TestEnvOverride:
    def test_tolerance_override(self, tmp_path, monkeypatch, capsys):
        out = tmp_path / "run"
        main(["extremal", "--n", "2", "--nu", "1", "--out", str(out)])
        capsys.readouterr()
        monkeypatch.setenv("BLAS_EXT_TOL", '{"circle_membership": 1e-3}')
        assert main(["scan", "--product", str(out / "product.json"),
                     "--out", str(tmp_path / "s")]) == 0
        monkeypatch.setenv("BLAS_EXT_TOL", "not json")
        assert main(["scan", "--product", str(out / "product.json"),
                     "--out", str(tmp_path / "s2")]) == 1


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        res = subprocess.run(
            [sys.executable, "-m", "blaschke", "extremal", "--n", "1",
             "--nu", "1", "--out", str(tmp_path / "e")],
            capture_output=True, text=True,
        )
        assert res.returncode == 0, res.stderr
        assert (tmp_path / "e" / "product.json").exists()
