"""End-to-end command-line runs: exit codes, reports, artifact round trips."""

import json

import pytest

import symba as sy
from symba import cli, serialize

from conftest import xor_ca


@pytest.fixture
def files(tmp_path, Z, bit):
    shift = sy.projection_ca(Z, bit, (1,))
    back = sy.projection_ca(Z, bit, (-1,))
    xor = xor_ca(Z, bit, [(0,), (1,)])
    ident = sy.identity_ca(Z, bit)
    paths = {}
    for name, ca in [("tau", shift), ("sigma", back), ("xor", xor), ("ident", ident)]:
        p = tmp_path / f"{name}.json"
        p.write_text(serialize.canonical_dumps(serialize.ca_to_json(ca)))
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    report = json.loads(capsys.readouterr().out)
    return code, report


def test_check_inverse_pass_and_fail(files, capsys):
    code, report = run(
        capsys, "check-inverse", "--sigma", files["sigma"], "--tau", files["tau"]
    )
    assert code == 0
    assert report["outcome"] == {"left": True, "right": True}
    code, report = run(
        capsys, "check-inverse", "--sigma", files["ident"], "--tau", files["xor"]
    )
    assert code == 1
    code, _ = run(
        capsys,
        "check-inverse",
        "--sigma",
        files["sigma"],
        "--tau",
        files["tau"],
        "--side",
        "left",
    )
    assert code == 0


def test_malformed_input_exit_two(files, capsys):
    bad = files["dir"] / "bad.json"
    bad.write_text("{nope")
    code, report = run(
        capsys, "check-inverse", "--sigma", str(bad), "--tau", files["tau"]
    )
    assert code == 2
    assert "error" in report["outcome"]
    missing = str(files["dir"] / "missing.json")
    code, _ = run(capsys, "check-inverse", "--sigma", missing, "--tau", files["tau"])
    assert code == 2


def test_synthesize_success_writes_verifiable_artifact(files, capsys):
    out = str(files["dir"] / "sig.json")
    code, report = run(
        capsys,
        "synthesize-inverse",
        "--input",
        files["tau"],
        "--max-radius",
        "2",
        "--output",
        out,
    )
    assert code == 0
    assert report["outcome"] == {"found": True, "radius": 1}
    # the artifact re-parses and re-verifies with exit 0
    code, report = run(capsys, "check-inverse", "--sigma", out, "--tau", files["tau"])
    assert code == 0 and report["outcome"]["left"] and report["outcome"]["right"]


def test_synthesize_failure_writes_witness_report(files, capsys):
    rep = str(files["dir"] / "report.json")
    code, report = run(
        capsys,
        "synthesize-inverse",
        "--input",
        files["xor"],
        "--max-radius",
        "2",
        "--report",
        rep,
    )
    assert code == 1
    assert not report["outcome"]["found"]
    saved = json.loads((files["dir"] / "report.json").read_text())
    wx, wy = saved["outcome"]["witness"]
    assert wx["values"] != wy["values"]


def test_synthesize_resource_cap_exit_three(files, capsys, monkeypatch):
    monkeypatch.setenv("SYMBA_CAP", "8")
    code, report = run(
        capsys, "synthesize-inverse", "--input", files["tau"], "--max-radius", "3"
    )
    assert code == 3
    assert "cap" in report["outcome"]["error"]


def test_transport_and_equivalence_with_synthesis(files, capsys):
    out = str(files["dir"] / "result.json")
    code, report = run(
        capsys,
        "transport",
        "--ca",
        files["tau"],
        "--sigma",
        files["sigma"],
        "--embedding",
        '{"kind":"modular","N":5}',
        "--out",
        out,
    )
    assert code == 0
    assert report["outcome"]["report"]["left_certified"]
    assert report["outcome"]["report"]["beta_alpha_identity"]
    saved = json.loads((files["dir"] / "result.json").read_text())
    nu = serialize.ca_from_json(saved["nu"])
    sigma = serialize.ca_from_json(json.loads(open(files["sigma"]).read()))
    assert sy.same_action(nu, sigma)


def test_transport_of_noninvertible_rule_exits_one(files, capsys):
    code, report = run(
        capsys,
        "transport",
        "--ca",
        files["xor"],
        "--embedding",
        '{"kind":"modular","N":5}',
    )
    assert code == 1
    assert "witness" in report["outcome"]
    u, v = report["outcome"]["witness"]
    assert u != v


def test_direct_finiteness_exit_zero(files, capsys):
    code, report = run(
        capsys, "direct-finiteness", "--sigma", files["sigma"], "--tau", files["tau"]
    )
    assert code == 0 and report["outcome"]["theorem_consistent"]
    code, report = run(
        capsys, "direct-finiteness", "--sigma", files["ident"], "--tau", files["xor"]
    )
    assert code == 0  # vacuously consistent
    assert report["outcome"] == {
        "left": False,
        "right": False,
        "theorem_consistent": True,
    }


def test_evolve_command(files, capsys, Z, bit):
    dom = sy.FiniteSubset(Z, [(i,) for i in range(5)])
    p = sy.Pattern(dom, (1, 0, 1, 1, 0))
    ppath = files["dir"] / "p.json"
    ppath.write_text(serialize.canonical_dumps(serialize.pattern_to_json(p, bit)))
    out = str(files["dir"] / "evolved.json")
    code, report = run(
        capsys,
        "evolve",
        "--ca",
        files["xor"],
        "--pattern",
        str(ppath),
        "--steps",
        "1",
        "--output",
        out,
    )
    assert code == 0
    saved = json.loads((files["dir"] / "evolved.json").read_text())
    assert saved["values"] == [1, 1, 0, 1]
    # shrinking past the window is invalid input
    code, _ = run(
        capsys, "evolve", "--ca", files["xor"], "--pattern", str(ppath), "--steps", "9"
    )
    assert code == 2


def test_compose_command(files, capsys):
    out = str(files["dir"] / "comp.json")
    code, report = run(
        capsys,
        "compose",
        "--sigma",
        files["tau"],
        "--tau",
        files["tau"],
        "--output",
        out,
    )
    assert code == 0
    comp = serialize.ca_from_json(json.loads((files["dir"] / "comp.json").read_text()))
    assert list(comp.memory) == [(2,)]


def test_groupring_commands(files, capsys, Z):
    E = lambda d: sy.GroupRingElement(Z, 2, d)
    C = sy.GroupRingMatrix(
        Z, 2, [[E({}), E({Z.identity(): 1})], [E({Z.identity(): 1}), E({(1,): 1})]]
    )
    cpath = files["dir"] / "C.json"
    cpath.write_text(serialize.canonical_dumps(serialize.matrix_to_json(C)))
    dpath = str(files["dir"] / "D.json")
    code, report = run(
        capsys,
        "groupring",
        "solve",
        "--matrix",
        str(cpath),
        "--radius",
        "1",
        "--output",
        dpath,
    )
    assert code == 0 and report["outcome"]["found"]
    prodpath = str(files["dir"] / "DC.json")
    code, _ = run(
        capsys,
        "groupring",
        "mul",
        "--a",
        dpath,
        "--b",
        str(cpath),
        "--output",
        prodpath,
    )
    assert code == 0
    DC = serialize.matrix_from_json(json.loads((files["dir"] / "DC.json").read_text()))
    assert DC.is_identity()

    # solve failure exits 1
    xpath = files["dir"] / "X.json"
    X = sy.GroupRingMatrix(Z, 2, [[E({Z.identity(): 1, (1,): 1})]])
    xpath.write_text(serialize.canonical_dumps(serialize.matrix_to_json(X)))
    code, report = run(
        capsys, "groupring", "solve", "--matrix", str(xpath), "--radius", "3"
    )
    assert code == 1 and not report["outcome"]["found"]


def test_groupring_roundtrip_command(files, capsys, Z):
    A = sy.Alphabet.module(2, 2)
    E = lambda d: sy.GroupRingElement(Z, 2, d)
    C = sy.GroupRingMatrix(
        Z, 2, [[E({}), E({Z.identity(): 1})], [E({Z.identity(): 1}), E({(1,): 1})]]
    )
    tau = sy.to_linear_ca(C, Z, A)
    capath = files["dir"] / "lin.json"
    capath.write_text(serialize.canonical_dumps(serialize.ca_to_json(tau)))
    out = str(files["dir"] / "mat.json")
    code, report = run(
        capsys, "groupring", "roundtrip", "--ca", str(capath), "--output", out
    )
    assert code == 0 and report["outcome"]["roundtrip_consistent"]
    assert serialize.matrix_from_json(json.loads((files["dir"] / "mat.json").read_text())) == C


def test_verify_embedding_command(files, capsys):
    code, report = run(
        capsys,
        "verify-embedding",
        "--ca",
        files["tau"],
        "--embedding",
        '{"kind":"modular","N":5}',
    )
    assert code == 0 and report["outcome"]["accepted"]
    code, report = run(
        capsys,
        "verify-embedding",
        "--ca",
        files["tau"],
        "--embedding",
        '{"kind":"modular","N":3}',
    )
    assert code == 1
    assert report["outcome"]["collision"] == [[-2], [1]]
    code, report = run(
        capsys,
        "verify-embedding",
        "--group",
        '{"kind":"free","rank":2}',
        "--memory",
        "[[1],[2]]",
        "--embedding",
        '{"kind":"ball_action"}',
    )
    assert code == 0 and report["outcome"]["accepted"]
    assert report["outcome"]["target_degree"] == 53


def test_report_is_deterministic_apart_from_timing(files, capsys):
    code1, r1 = run(
        capsys, "check-inverse", "--sigma", files["sigma"], "--tau", files["tau"]
    )
    code2, r2 = run(
        capsys, "check-inverse", "--sigma", files["sigma"], "--tau", files["tau"]
    )
    r1.pop("wall_time_ms")
    r2.pop("wall_time_ms")
    assert code1 == code2 == 0
    assert r1 == r2
