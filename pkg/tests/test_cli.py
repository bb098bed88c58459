"""CLI round trips driven in-process through nfsboot.cli.main."""

import json

import pytest

from nfsboot.cli import cert_from_doc, cert_to_doc, main, params_from_doc
from nfsboot.smooth import next_prime


@pytest.fixture(scope="module")
def p40():
    return next_prime(1 << 40)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPolyselect:
    def test_writes_params_document(self, tmp_path, capsys, p40):
        out = tmp_path / "params.json"
        code, stdout, _ = run(
            capsys, "polyselect", "--p", str(p40), "--n", "2",
            "--method", "conj", "--seed", "1", "--find-ell", "--out", str(out),
        )
        assert code == 0
        assert "conformance: ok" in stdout
        doc = json.loads(out.read_text())
        assert doc["kind"] == "params"
        sel, ell = params_from_doc(doc)
        assert sel.p == p40 and sel.n == 2 and ell is not None

    def test_invalid_method_exits_2(self, capsys, p40):
        with pytest.raises(SystemExit) as exc:
            main(["polyselect", "--p", str(p40), "--n", "2", "--method", "bogus"])
        assert exc.value.code == 2

    def test_tower_method_rejects_odd_n(self, capsys, p40):
        code, _, err = run(
            capsys, "polyselect", "--p", str(p40), "--n", "3",
            "--method", "conj-subfield",
        )
        assert code == 2 and "error" in err


@pytest.fixture(scope="module")
def params_file(tmp_path_factory, p40):
    path = tmp_path_factory.mktemp("cli") / "params.json"
    code = main([
        "polyselect", "--p", str(p40), "--n", "2", "--method", "conj",
        "--seed", "1", "--find-ell", "--out", str(path),
    ])
    assert code == 0
    return path


class TestReduce:
    def test_reduce_all_strategies(self, capsys, params_file):
        for strategy in ("naive", "fraction", "monic", "auto"):
            code, stdout, _ = run(
                capsys, "reduce", "--params", str(params_file),
                "--target", "12345,67890", "--strategy", strategy,
            )
            assert code == 0, strategy
            assert "candidate 0" in stdout

    def test_reduce_writes_document(self, capsys, tmp_path, params_file):
        out = tmp_path / "red.json"
        code, _, _ = run(
            capsys, "reduce", "--params", str(params_file),
            "--target", "12345,67890", "--strategy", "monic", "--out", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["kind"] == "reduction" and doc["candidates"]

    def test_bad_target_exits(self, capsys, params_file):
        with pytest.raises(SystemExit):
            main(["reduce", "--params", str(params_file), "--target", "x,y"])


class TestBootVerify:
    def test_round_trip(self, capsys, tmp_path, params_file):
        cert_path = tmp_path / "cert.json"
        code, stdout, _ = run(
            capsys, "boot", "--params", str(params_file),
            "--target", "12345,67890", "--B-bits", "16",
            "--max-trials", "500", "--out", str(cert_path),
        )
        assert code == 0
        assert "t = " in stdout
        code, stdout, _ = run(capsys, "verify", "--cert", str(cert_path))
        assert code == 0 and "certificate OK" in stdout

    def test_tampered_document_detected(self, capsys, tmp_path, params_file):
        cert_path = tmp_path / "cert.json"
        assert main([
            "boot", "--params", str(params_file), "--target", "12345,67890",
            "--B-bits", "16", "--max-trials", "500", "--out", str(cert_path),
        ]) == 0
        doc = json.loads(cert_path.read_text())

        # edit inside the digest-protected core: rejected as malformed
        doc_bad = dict(doc)
        doc_bad["ell"] = str(int(doc["ell"]) + 2)
        bad_path = tmp_path / "bad.json"
        bad_path.write_text(json.dumps(doc_bad))
        code, _, err = run(capsys, "verify", "--cert", str(bad_path))
        assert code == 2 and "digest" in err

        # edit outside the core: caught by cryptographic-free recomputation
        doc_bad2 = dict(doc)
        doc_bad2["t"] = str(int(doc["t"]) + 1)
        bad2 = tmp_path / "bad2.json"
        bad2.write_text(json.dumps(doc_bad2))
        code, stdout, _ = run(capsys, "verify", "--cert", str(bad2))
        assert code == 1 and "FAIL" in stdout

    def test_cert_document_round_trip(self, tmp_path, params_file):
        cert_path = tmp_path / "cert.json"
        assert main([
            "boot", "--params", str(params_file), "--target", "12345,67890",
            "--B-bits", "16", "--max-trials", "500", "--out", str(cert_path),
        ]) == 0
        doc = json.loads(cert_path.read_text())
        cert = cert_from_doc(doc)
        assert cert_to_doc(cert) == doc


class TestComplexity:
    def test_prints_constants(self, capsys):
        code, stdout, _ = run(
            capsys, "complexity", "--method", "jlsv1", "--n", "4",
            "--Q-dd", "180", "--variant", "subfield",
        )
        assert code == 0
        assert "e = 7/8" in stdout
        assert "L_Q[1/3," in stdout and "L_Q[2/3," in stdout

    def test_plain_variant(self, capsys):
        code, stdout, _ = run(
            capsys, "complexity", "--method", "conj", "--n", "2", "--Q-dd", "120",
        )
        assert code == 0 and "Q^0.5000" in stdout


class TestWorkedExamples:
    def test_all_pass(self, capsys):
        code, stdout, _ = run(capsys, "worked-examples")
        assert code == 0
        assert "FAIL" not in stdout
        assert "10/10 checks passed" in stdout
