from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

DOCS = os.path.join(os.path.dirname(__file__), "..", "docs", "examples")


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "parakit.cli", *args],
                          capture_output=True, text=True, env=env)


def doc(name):
    return os.path.join(DOCS, name)


def test_check_pass_and_fail():
    good = run_cli("check", doc("z3_01.json"))
    assert good.returncode == 0
    payload = json.loads(good.stdout)
    assert payload["verdict"] == "pass"
    assert payload["notes"]["paramonoid"] is True

    bad = run_cli("check", doc("n_table.json"))
    assert bad.returncode == 1
    payload = json.loads(bad.stdout)
    assert payload["verdict"] == "fail"
    assert [[1, 1], [1, 1]] in [w.get("nesting") for w in payload["witnesses"]]


def test_check_malformed_input(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{nope")
    res = run_cli("check", str(broken))
    assert res.returncode == 2
    missing_kind = tmp_path / "nokind.json"
    missing_kind.write_text(json.dumps({"size": 3}))
    assert run_cli("check", str(missing_kind)).returncode == 2


def test_check_paracategory_document():
    res = run_cli("check", doc("retract_xy.json"))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["notes"]["freyd_axioms"] is True


def test_byte_identical_output():
    one = run_cli("envelope", doc("z3_01.json"), "--print-classes", "--certify")
    two = run_cli("envelope", doc("z3_01.json"), "--print-classes", "--certify")
    assert one.stdout == two.stdout
    assert one.returncode == 0


def test_envelope_classes():
    res = run_cli("envelope", doc("z3_01.json"))
    payload = json.loads(res.stdout)
    assert payload["notes"]["classes"] == 3
    assert payload["notes"]["distinguished"] == 2
    reps = [c["rep"] for c in payload["class_table"]]
    assert reps == [[], [1], [1, 1]]


def test_envelope_certificates_replay():
    res = run_cli("envelope", doc("n_table.json"), "--certify")
    payload = json.loads(res.stdout)
    assert payload["certificates"]
    # replay each emitted certificate through the library
    from parakit.catalog import n_table
    from parakit.envelope import RewriteStep, replay_certificate
    algebra = n_table()
    for cert in payload["certificates"]:
        start = tuple(cert["from"])
        goal = tuple(cert["to"])
        chain = []
        word = start
        for s in cert["steps"]:
            step = RewriteStep(s["pos"], tuple(s["rule"]), s["value"],
                               s["direction"] == "contract")
            if step.forward:
                word = word[:step.pos] + (step.value,) + word[step.pos + len(step.rule):]
            else:
                word = word[:step.pos] + step.rule + word[step.pos + 1:]
            chain.append((word, step))
        assert replay_certificate(algebra, start, chain) == goal


def test_word_eq_exit_codes():
    assert run_cli("word-eq", doc("z3_01.json"), "1,1,1", "0").returncode == 0
    assert run_cli("word-eq", doc("z3_01.json"), "1", "0").returncode == 1
    assert run_cli("word-eq", doc("z3_01.json"), "", "0").returncode == 0
    assert run_cli("word-eq", doc("z3_01.json"), "junk", "0").returncode == 2


def test_saturate_roundtrip(tmp_path):
    out = tmp_path / "sat.json"
    res = run_cli("saturate", doc("n_table.json"), "-o", str(out))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["notes"]["saturation_recheck"] is True
    saved = json.loads(out.read_text())
    words = {tuple(e["word"]): e["value"] for e in saved["entries"]}
    assert words[(2, 2)] == 0
    recheck = run_cli("check", str(out))
    assert recheck.returncode == 0


def test_kleene_command():
    res = run_cli("kleene", doc("morphism_incl.json"))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["verdict"] == "pass"


def test_factor_command():
    res = run_cli("factor", doc("morphism_incl.json"))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["notes"]["epi_surjective"] is True
    assert payload["lift_snapshot"]["kind"] == "table"


def test_universal_command():
    res = run_cli("universal", doc("z3_01.json"), "--target", doc("z3_01.json"))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["notes"]["left_count"] == 2
    assert payload["notes"]["right_count"] == 2


def test_budget_exit_code():
    res = run_cli("check", doc("z3_01.json"), "--query-len", "12",
                  "--work-len", "12", env_extra={"PARAKIT_BUDGET": "50"})
    assert res.returncode == 3


def test_path_table_document():
    res = run_cli("check", doc("path_table_loop.json"))
    payload = json.loads(res.stdout)
    assert payload["notes"]["unit"] is True
    assert res.returncode in (0, 1)


def test_timing_flag_keeps_stdout_stable():
    plain = run_cli("check", doc("z3_01.json"))
    timed = run_cli("check", doc("z3_01.json"), "--timing")
    assert plain.stdout == timed.stdout
    assert "elapsed" in timed.stderr
