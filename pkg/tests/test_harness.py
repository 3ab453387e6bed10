"""Theorem harness: instance generation, verdicts, determinism, replay."""

import json

import pytest

from irredlab.errors import UsageError
from irredlab.harness import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    SKIPPED,
    InstanceConfig,
    THEOREMS,
    build_contexts,
    generate_instances,
    replay_counterexample,
    verify,
    verify_all,
)

CFG = InstanceConfig(max_order=24, include_noncyclic=True)


@pytest.fixture(scope="module")
def contexts():
    return build_contexts(CFG)


@pytest.fixture(scope="module")
def summary(contexts):
    from irredlab.harness import VerifySummary

    out = VerifySummary()
    for tid in THEOREMS:
        out.results.extend(verify(tid, CFG, contexts=contexts))
    return out


def test_generate_instances_families():
    cfg = InstanceConfig(max_order=6)
    descs = [str(m) for m in generate_instances(cfg)]
    assert "Z1 over Z" in descs  # the trivial module is a degenerate probe
    assert "Z6 over Z" in descs
    assert "Z6 over Z6" in descs
    assert "Z2 over Z4" in descs  # the double-annihilator probe family
    assert "Z2 | Z3 over Z2*Z3" in descs
    assert not any("x" in d.split(" over ")[0] for d in descs)  # cyclic only

    noncyc = InstanceConfig(max_order=6, include_noncyclic=True)
    descs = [str(m) for m in generate_instances(noncyc)]
    assert "Z2xZ2 over Z" in descs

    assert any(
        str(m).count("|") == 2 for m in generate_instances(InstanceConfig(max_order=12))
    )  # three-factor products appear once the order budget allows


def test_generate_instances_deterministic():
    a = generate_instances(CFG)
    b = generate_instances(CFG)
    assert a == b


def test_unknown_theorem():
    with pytest.raises(UsageError):
        verify("T-NOPE", CFG)


def test_every_theorem_has_met_and_unmet_instances(summary):
    counts = summary.counts()
    assert set(counts) == set(THEOREMS)
    for tid, c in counts.items():
        assert c[PASS] >= 1, f"{tid} never ran to a pass"
        assert c[HYPOTHESIS_NOT_MET] >= 1, f"{tid} hypothesis filter never triggered"


def test_known_genuine_failures_are_reported_and_replay(summary):
    """Two source statements are false on noncyclic instances; the harness
    must report them with re-verifiable counterexamples."""
    failing = {(r.theorem_id, r.instance["module"]) for r in summary.failures}
    assert ("T-BASIC-c", "Z6xZ2") in failing
    assert ("T-EPI", "Z6xZ2") in failing
    assert {tid for tid, _ in failing} == {"T-BASIC-c", "T-EPI"}
    for r in summary.failures:
        assert r.counterexample is not None
        assert replay_counterexample(r, CFG) is True


def test_cyclic_only_suite_is_clean():
    cfg = InstanceConfig(max_order=24)
    s = verify_all(cfg)
    assert not s.failures


def test_results_are_deterministic(summary):
    again = verify_all(CFG)
    first = json.dumps([r.to_dict() for r in summary.results])
    second = json.dumps([r.to_dict() for r in again.results])
    assert first == second


def test_serialization_excludes_elapsed(summary):
    d = summary.results[0].to_dict()
    assert "elapsed" not in d
    assert summary.results[0].elapsed >= 0.0


def test_element_route_cap_skips():
    cfg = InstanceConfig(max_order=30, element_cap=8)
    res = verify("T-ELEM", cfg)
    verdicts = {r.instance["module"]: r.verdict for r in res}
    assert verdicts["Z30"] == SKIPPED
    assert verdicts["Z8"] == PASS


def test_hypothesis_weakened_mode_finds_necessity_witnesses():
    """Dropping the multiplication hypothesis must surface failures (e.g. the
    three comaximal lines of the Klein module), and they must replay."""
    cfg = InstanceConfig(max_order=8, include_noncyclic=True)
    res = verify("T-3PRIME", cfg, enforce_hypotheses=False)
    fails = [r for r in res if r.verdict == FAIL]
    assert any(r.instance["module"] == "Z2xZ2" for r in fails)
    for r in fails:
        assert replay_counterexample(r, cfg) is True


def test_max2_weakened_replay():
    cfg = InstanceConfig(max_order=8, include_noncyclic=True)
    res = verify("T-MAX2", cfg, enforce_hypotheses=False)
    fails = [r for r in res if r.verdict == FAIL]
    assert fails
    for r in fails:
        assert replay_counterexample(r, cfg) is True


def test_tloc_and_tepi_hypothesis_scope(summary):
    by_theorem = {}
    for r in summary.results:
        by_theorem.setdefault(r.theorem_id, []).append(r)
    for r in by_theorem["T-LOC"]:
        if r.instance["ring"] != "Z":
            assert r.verdict == HYPOTHESIS_NOT_MET
    for r in by_theorem["T-PROD2"]:
        if "*" not in r.instance["ring"]:
            assert r.verdict == HYPOTHESIS_NOT_MET


def test_comult_probe_family_exercises_dac(summary):
    comult = {
        r.instance["module"] + "/" + r.instance["ring"]: r.verdict
        for r in summary.results
        if r.theorem_id == "T-COMULT"
    }
    assert comult["Z12/Z12"] == PASS
    assert comult["Z2/Z4"] == HYPOTHESIS_NOT_MET  # fails the double annihilator


def test_statements_present():
    for check in THEOREMS.values():
        assert check.statement
