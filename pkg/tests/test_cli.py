import json

import pytest

import shiryaev_qsd.cli as cli
from shiryaev_qsd.errors import ToleranceNotMetError


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_eig_json(capsys):
    code, out, err = run(capsys, "eig", "--A", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "eig"
    assert doc["ok"] is True
    by_name = {r["name"]: r for r in doc["results"]}
    assert abs(by_name["rate"]["value"] - 0.0588561486218396688) < 1e-12
    assert by_name["rate"]["provenance"] == "closed_form"
    assert by_name["boundary-residual"]["provenance"] == "identity"


def test_eig_csv_shape(capsys):
    code, out, _ = run(capsys, "eig", "--A", "20", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name,value,provenance"
    assert any(line.startswith("rate,") for line in lines)


def test_imaginary_regime_index_serializes(capsys):
    # A below the oscillatory crossover: index is purely imaginary
    code, out, _ = run(capsys, "eig", "--A", "1")
    assert code == 0
    doc = json.loads(out)
    by_name = {r["name"]: r for r in doc["results"]}
    idx = by_name["index"]["value"]
    assert idx["re"] == 0.0
    assert idx["im"] > 0.0


def test_pdf_and_cdf_points(capsys):
    code, out, _ = run(capsys, "pdf", "--A", "20", "--x", "1.5", "--x", "10")
    assert code == 0
    doc = json.loads(out)
    names = [r["name"] for r in doc["results"]]
    assert names == ["pdf[x=1.5]", "pdf[x=10.0]"]
    code, out, _ = run(capsys, "cdf", "--A", "20", "--x", "20")
    vals = [r["value"] for r in json.loads(out)["results"]]
    assert abs(vals[0] - 1.0) < 1e-12


def test_moment_with_check(capsys):
    code, out, _ = run(
        capsys, "moment", "--A", "20", "--s", "0.3", "--s", "-0.7", "--check", "--log"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    kinds = {c["name"] for c in doc["checks"]}
    assert "dual-route[s=0.3]" in kinds
    assert "dual-route[log]" in kinds
    for c in doc["checks"]:
        assert c["residual"] < 1e-8


def test_table_grid(capsys):
    code, out, _ = run(capsys, "table", "--A", "5", "--points", "5")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 10  # pdf and cdf per node
    assert doc["results"][0]["name"] == "pdf[x=0.0]"


def test_verify_clean_and_perturbed(capsys):
    code, out, _ = run(capsys, "verify", "--A", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and len(doc["checks"]) >= 10

    code, out, _ = run(capsys, "verify", "--A", "20", "--perturb-lambda", "1e-3")
    assert code == 1
    doc = json.loads(out)
    failed = [c["name"] for c in doc["checks"] if not c["passed"]]
    assert len(failed) >= 3  # a wrong rate cannot sneak through


def test_exit_code_bad_inputs(capsys):
    assert run(capsys, "pdf", "--A", "20", "--x", "-3")[0] == 2
    assert run(capsys, "eig", "--A", "-1")[0] == 2
    assert run(capsys, "table", "--A", "5", "--points", "1")[0] == 2


def test_exit_code_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "eig")[0] == 2  # missing --A
    assert run(capsys)[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_byte_determinism(capsys):
    _, out1, _ = run(capsys, "moment", "--A", "100", "--s", "2.5", "--check")
    _, out2, _ = run(capsys, "moment", "--A", "100", "--s", "2.5", "--check")
    assert out1 == out2


def test_quadrature_failure_maps_to_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise ToleranceNotMetError("cap", estimate=1.0, error_bound=1.0)

    monkeypatch.setattr(cli, "quad_moment", boom)
    code, out, err = run(capsys, "moment", "--A", "20", "--s", "0.3", "--check")
    assert code == 3
    assert "error:" in err
