import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from gradedmorita import documents
from gradedmorita.cli import main

import fixture_lib


def run_cli(*args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def docs(tmp_path_factory, oc2, c2, oc3, regular_oc2, row):
    root = tmp_path_factory.mktemp("docs")
    documents.write_document(documents.group_payload(c2), root / "c2.json")
    documents.write_document(documents.algebra_payload(oc2), root / "oc2.json")
    documents.write_document(documents.algebra_payload(oc3), root / "oc3.json")
    documents.write_document(documents.bimodule_payload(regular_oc2), root / "regular.json")
    documents.write_document(documents.bimodule_payload(row[0]), root / "row.json")
    double = fixture_lib.direct_sum(regular_oc2, regular_oc2)
    documents.write_document(documents.bimodule_payload(double), root / "double.json")
    bad = documents.algebra_payload(oc3)
    entry = next(e for e in bad["mult"] if e[0] == 1 and e[1] == 1)
    entry[3] = "-1"
    documents.write_document(bad, root / "bad.json")
    dangling = documents.algebra_payload(oc2)
    dangling["group"] = "missing.json"
    documents.write_document(dangling, root / "dangling.json")
    return root


# -- check --------------------------------------------------------------------


def test_check_valid_algebra(docs):
    code, out, err = run_cli("check", str(docs / "oc2.json"))
    assert code == 0
    assert out.startswith("verdict: certified\n")
    assert "check associativity: ok" in out


def test_check_corrupted_constant(docs):
    code, out, err = run_cli("check", str(docs / "bad.json"))
    assert code == 1
    assert out.startswith("verdict: refuted\n")
    assert "associativity" in out
    assert "witness" in out


def test_check_dangling_reference(docs):
    code, out, err = run_cli("check", str(docs / "dangling.json"))
    assert code == 2
    assert "dangling" in err


def test_check_json_mode(docs):
    code, out, err = run_cli("check", "--json", str(docs / "oc2.json"))
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "certified"
    assert payload["info"]["dim"] == 2


# -- build --------------------------------------------------------------------


def test_build_wreath(docs, tmp_path):
    out_path = tmp_path / "wr.json"
    code, out, err = run_cli("build", "wreath", "--n", "2", str(docs / "oc2.json"),
                             "-o", str(out_path))
    assert code == 0
    assert "(dim 8)" in out
    code, out, err = run_cli("check", str(out_path))
    assert code == 0


def test_build_tensor(docs, tmp_path):
    out_path = tmp_path / "t.json"
    code, out, err = run_cli("build", "tensor", str(docs / "oc2.json"),
                             str(docs / "oc2.json"), "-o", str(out_path))
    assert code == 0
    assert "(dim 4)" in out
    assert run_cli("check", str(out_path))[0] == 0


def test_build_opposite(docs, tmp_path):
    out_path = tmp_path / "op.json"
    code, out, err = run_cli("build", "opposite", str(docs / "oc3.json"), "-o", str(out_path))
    assert code == 0
    kind, a = documents.load_document(out_path)
    assert a.degree == [0, 2, 1]


def test_build_dual(docs, tmp_path):
    out_path = tmp_path / "dual.json"
    code, out, err = run_cli("build", "dual", str(docs / "regular.json"), "-o", str(out_path))
    assert code == 0
    assert "(dim 2)" in out
    assert run_cli("check", str(out_path))[0] == 0


def test_build_tensor_over(docs, tmp_path):
    dual_path = tmp_path / "dual.json"
    run_cli("build", "dual", str(docs / "row.json"), "-o", str(dual_path))
    out_path = tmp_path / "prod.json"
    code, out, err = run_cli("build", "tensor-over", str(docs / "row.json"),
                             str(dual_path), "-o", str(out_path))
    assert code == 0
    assert "(dim 2)" in out
    assert run_cli("check", str(out_path))[0] == 0


def test_build_tensor_over_mismatch(docs, tmp_path):
    code, out, err = run_cli("build", "tensor-over", str(docs / "row.json"),
                             str(docs / "regular.json"), "-o", str(tmp_path / "x.json"))
    assert code == 2
    assert "tensor-over" in err


def test_build_wreath_missing_n(docs, tmp_path):
    code, out, err = run_cli("build", "wreath", str(docs / "oc2.json"),
                             "-o", str(tmp_path / "x.json"))
    assert code == 2
    assert "--n" in err


# -- verify-morita --------------------------------------------------------------


def test_verify_morita_regular(docs):
    code, out, err = run_cli("verify-morita", str(docs / "regular.json"))
    assert code == 0
    assert "verdict: certified" in out
    assert "certificate left-isomorphism" in out


def test_verify_morita_row(docs):
    code, out, err = run_cli("verify-morita", str(docs / "row.json"), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "certified"
    assert payload["certificates"]["left-isomorphism"]
    assert payload["info"]["right-product-dim"] == 8


def test_verify_morita_refutes_direct_sum(docs):
    code, out, err = run_cli("verify-morita", str(docs / "double.json"))
    assert code == 1
    assert "verdict: refuted" in out
    assert "dimensions differ" in out


# -- oracle -----------------------------------------------------------------------


def test_oracle_certified(docs):
    code, out, err = run_cli("oracle", str(docs / "c2.json"), "--n", "3")
    assert code == 0
    assert "verdict: certified" in out
    assert "dim: 48" in out


def test_oracle_gf5(docs):
    code, out, err = run_cli("oracle", str(docs / "c2.json"), "--n", "2", "--field", "GF(5)")
    assert code == 0


def test_oracle_size_guard(docs):
    code, out, err = run_cli("oracle", str(docs / "c2.json"), "--n", "3", "--budget", "1000")
    assert code == 2
    assert "refused" in err
    assert "--budget" in err


# -- determinism -------------------------------------------------------------------


def test_reports_byte_identical_across_runs_and_jobs(docs):
    baseline = None
    for jobs in ("1", "4", "1"):
        code, out, err = run_cli("verify-morita", str(docs / "row.json"),
                                 "--seed", "0", "--jobs", jobs, "--json")
        assert code == 0
        if baseline is None:
            baseline = out
        assert out == baseline


def test_check_reports_byte_identical(docs):
    outs = {run_cli("check", str(docs / "oc2.json"), "--jobs", jobs)[1]
            for jobs in ("1", "4")}
    assert len(outs) == 1


def test_timing_only_on_stderr(docs):
    code, out, err = run_cli("check", str(docs / "oc2.json"))
    assert "elapsed" not in out
    assert "elapsed" in err


def test_oracle_default_budget_refuses_s3_cubed(docs, tmp_path, s3):
    s3_path = tmp_path / "s3.json"
    documents.write_document(documents.group_payload(s3), s3_path)
    code, out, err = run_cli("oracle", str(s3_path), "--n", "3")
    assert code == 2
    assert "refused" in err and "1296" in err
