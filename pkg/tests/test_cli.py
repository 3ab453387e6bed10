"""CLI contract: subcommands, formats, exit codes, diagnostics."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from irredlab.cli import run


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


def test_classify_ideal_text():
    code, out, err = _run(["classify-ideal", "--ring", "Z", "--gen", "12"])
    assert code == 0 and not err
    assert "strongly_two_irreducible = y" in out
    assert "prime = n" in out


def test_classify_ideal_whole_ring_flags_undefined():
    code, out, _ = _run(["classify-ideal", "--ring", "Z", "--gen", "1"])
    assert code == 0
    assert "strongly_two_irreducible = -" in out
    assert "irreducible = y" in out


def test_classify_ideal_product_ring():
    code, out, _ = _run(
        ["classify-ideal", "--ring", "Z4*Z9", "--gen", "2,3", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["gens"] == [2, 3]
    assert doc["payload"]["flags"]["strongly_two_irreducible"] is True


def test_classify_module_fixture():
    code, out, _ = _run(["classify", "--module", "Z6", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    rows = doc["payload"]["rows"]
    assert rows[0]["flags"]["strongly_two_irreducible"] is True
    assert rows[0]["flags"]["strongly_irreducible"] is False


def test_json_roundtrip_byte_identical():
    for argv in (
        ["classify-ideal", "--ring", "Z", "--gen", "30", "--format", "json"],
        ["classify", "--module", "Z12", "--format", "json"],
        ["lattice", "--module", "Z4xZ2", "--format", "json"],
        ["verify", "--theorem", "T-MEET", "--max-order", "8", "--format", "json"],
    ):
        _, out, _ = _run(argv)
        doc = json.loads(out)
        assert json.dumps(doc, indent=2) + "\n" == out
        assert doc["schema_version"] == "1.0"
        assert doc["timestamp"] is None


def test_stamp_sets_timestamp():
    _, out, _ = _run(
        ["classify-ideal", "--ring", "Z", "--gen", "6", "--format", "json", "--stamp"]
    )
    assert json.loads(out)["timestamp"] is not None


def test_text_and_json_agree():
    _, text_out, _ = _run(["classify", "--module", "Z30"])
    _, json_out, _ = _run(["classify", "--module", "Z30", "--format", "json"])
    doc = json.loads(json_out)
    zero = doc["payload"]["rows"][0]
    assert zero["flags"]["strongly_two_irreducible"] is False
    # the text zero-row carries the same verdict in the s2irr column
    zero_line = [l for l in text_out.splitlines() if l.strip().startswith("0 ")][0]
    assert zero_line.split()[5] == "n"


def test_lattice_output():
    code, out, _ = _run(["lattice", "--module", "Z12"])
    assert code == 0
    assert "6 submodules" in out


def test_verify_all_small():
    code, out, _ = _run(
        ["verify", "--all", "--max-order", "10", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["totals"]["fail"] == 0
    assert len(doc["payload"]["theorems"]) == 23


def test_exit_codes():
    code, _, err = _run(["classify", "--module", "Z6", "--ring", "Q"])
    assert code == 1 and err.startswith("error: usage:")
    code, _, err = _run(["classify", "--module", "Z5", "--ring", "Z12"])
    assert code == 2 and err.startswith("error: domain:")
    code, _, err = _run(["classify", "--module", "Z2xZ2xZ2xZ2xZ2"])
    assert code == 3 and err.startswith("error: resource:")
    code, _, err = _run(["classify", "--module", "Z9999"])
    assert code == 3
    code, _, err = _run(["verify", "--theorem", "T-BOGUS"])
    assert code == 1
    # hypothesis-weakened hunting surfaces failures as exit 4
    code, _, _ = _run(
        ["verify", "--theorem", "T-MAX2", "--max-order", "8", "--noncyclic",
         "--ignore-hypotheses"]
    )
    assert code == 4


def test_error_diagnostics_are_single_line():
    _, _, err = _run(["classify", "--module", "Z5", "--ring", "Z12"])
    assert len(err.strip().splitlines()) == 1
