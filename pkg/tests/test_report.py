import json
import math

import pytest

from shiryaev_qsd.errors import DomainError
from shiryaev_qsd.report import SCHEMA_VERSION, CheckRow, EvalReport, ResultRow


def _report(**kw):
    base = dict(command="eig", inputs={"A": 20.0, "tol": 1e-12})
    base.update(kw)
    return EvalReport(**base)


def test_json_round_trips_doubles():
    ugly = 0.1 + 0.2  # not representable, classic round-trip trap
    rep = _report(results=[ResultRow("x", ugly, "closed_form")])
    doc = json.loads(rep.to_json())
    assert doc["results"][0]["value"] == ugly
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["inputs"]["A"] == 20.0


def test_json_complex_as_re_im():
    rep = _report(results=[ResultRow("index", complex(0.0, 0.25), "closed_form")])
    doc = json.loads(rep.to_json())
    assert doc["results"][0]["value"] == {"re": 0.0, "im": 0.25}


def test_json_string_escaping():
    rep = _report(command='weird "name"\twith\\controls')
    doc = json.loads(rep.to_json())
    assert doc["command"] == 'weird "name"\twith\\controls'


def test_nonfinite_rejected():
    rep = _report(results=[ResultRow("x", float("nan"), "quadrature")])
    with pytest.raises(DomainError):
        rep.to_json()
    rep = _report(results=[ResultRow("x", float("inf"), "quadrature")])
    with pytest.raises(DomainError):
        rep.to_csv()


def test_provenance_validated():
    with pytest.raises(DomainError):
        ResultRow("x", 1.0, "vibes")
    for p in ("closed_form", "quadrature", "identity"):
        ResultRow("x", 1.0, p)


def test_ok_follows_checks():
    assert _report().ok  # vacuous
    assert _report(checks=[CheckRow("a", True, 0.0)]).ok
    assert not _report(checks=[CheckRow("a", True, 0.0), CheckRow("b", False, 9.0)]).ok


def test_csv_results_table():
    rep = _report(
        results=[
            ResultRow("rate", 0.0588561486218396687779, "closed_form"),
            ResultRow("index", complex(0.75, -0.5), "closed_form"),
        ],
        checks=[CheckRow("ignored-when-results-present", True, 0.0)],
    )
    lines = rep.to_csv().splitlines()
    assert lines[0] == "name,value,provenance"
    assert lines[1].startswith("rate,0.058856148621839")
    assert "0.75-0.5j" in lines[2]
    assert len(lines) == 3


def test_csv_checks_table():
    rep = _report(checks=[CheckRow("norm", True, 2.5e-13), CheckRow("mono", False, 1.0)])
    lines = rep.to_csv().splitlines()
    assert lines[0] == "name,passed,residual"
    assert lines[1].split(",")[1] == "true"
    assert lines[2].split(",")[1] == "false"


def test_json_is_deterministic():
    rep = _report(
        results=[ResultRow("rate", math.pi, "closed_form")],
        checks=[CheckRow("norm", True, 1e-14)],
    )
    assert rep.to_json() == rep.to_json()
    assert rep.to_csv() == rep.to_csv()
