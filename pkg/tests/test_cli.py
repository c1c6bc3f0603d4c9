"""Command line surface: exit codes, JSON schema, pipes, recipes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from isoframe.cli import main
from isoframe.constructgen import (
    counterexample_2d,
    double_banana,
    fig2_examples,
    platonic,
)
from isoframe.core import from_json, new_framework, to_json


def _write(tmp_path, name, f):
    p = tmp_path / name
    p.write_text(to_json(f))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_isostatic_json(tmp_path, capsys):
    path = _write(tmp_path, "oct.json", platonic("octahedron"))
    code, out, _ = _run(capsys, ["analyze", path, "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["report_version"] == 1
    assert d["command"] == "analyze"
    assert d["input"] == path
    assert d["group"]["schoenflies"] == "Oh"
    assert d["group"]["order"] == 48
    assert d["kinematics"]["isostatic"] is True
    assert d["kinematics"]["mechanisms"] == 0
    assert d["kinematics"]["self_stresses"] == 0
    assert d["verdict"]["numeric"] == "isostatic"
    assert d["verdict"]["necessary"] is True
    assert d["conditions"]["passed"] is True
    assert d["tolerances"] == {"geometric_rel": 1e-06, "rank": 1e-10}
    assert d["trace"]["classes"][0] == "E"
    assert all(v == 0 for v in d["trace"]["values"])
    assert d["screen_violations"] == []
    # 3D sufficiency is a screen, never a certificate
    suff = d["verdict"]["sufficiency"]
    assert suff["passed"] is None
    assert suff["epistemic"] == "necessary-only"
    assert "screen clean up to 6 joints" in suff["verdict"]


def test_analyze_json_is_byte_stable(tmp_path, capsys):
    path = _write(tmp_path, "tet.json", platonic("tetrahedron"))
    _, first, _ = _run(capsys, ["analyze", path, "--json"])
    _, second, _ = _run(capsys, ["analyze", path, "--json"])
    assert first == second
    assert first.endswith("\n")
    d = json.loads(first)
    assert first == json.dumps(d, indent=2, sort_keys=True) + "\n"


def test_analyze_text_report(tmp_path, capsys):
    path = _write(tmp_path, "c2.json", fig2_examples("C2"))
    code, out, _ = _run(capsys, ["analyze", path])
    assert code == 0
    assert "C2" in out
    assert "[pass]" in out and "[FAIL]" not in out
    assert "mechanisms" in out
    assert "isostatic" in out


def test_analyze_overbraced_exits_1(tmp_path, capsys):
    f = platonic("octahedron")
    over = new_framework(
        3,
        [tuple(p) for p in f.coordinates],
        sorted([b.ends for b in f.bars] + [(0, 1)]),
    )
    path = _write(tmp_path, "over.json", over)
    code, out, _ = _run(capsys, ["analyze", path, "--json"])
    assert code == 1
    d = json.loads(out)
    assert d["verdict"]["numeric"] == "overbraced"
    assert d["verdict"]["necessary"] is False
    assert d["screen_violations"]


def test_analyze_flexible_banana_exits_1(tmp_path, capsys):
    path = _write(tmp_path, "banana.json", double_banana())
    code, out, _ = _run(capsys, ["analyze", path, "--json"])
    assert code == 1
    d = json.loads(out)
    assert d["verdict"]["numeric"] == "flexible-and-stressed"
    assert d["verdict"]["necessary"] is True  # counts alone cannot see it
    assert d["screen_violations"] == []
    assert "up to 8 joints" in d["verdict"]["sufficiency"]["verdict"]


def test_analyze_out_of_scope_exits_2(tmp_path, capsys):
    tri3d = new_framework(
        3,
        [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.3, 0.9, 0.1)],
        [(0, 1), (0, 2), (1, 2)],
    )
    path = _write(tmp_path, "tri.json", tri3d)
    code, _, err = _run(capsys, ["analyze", path, "--json"])
    assert code == 2


def test_input_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = _run(capsys, ["analyze", str(bad)])
    assert code == 3
    assert err.strip()

    code, _, _ = _run(capsys, ["analyze", str(tmp_path / "missing.json")])
    assert code == 3

    path = _write(tmp_path, "ok.json", platonic("tetrahedron"))
    code, _, _ = _run(capsys, ["analyze", path, "--tol-geom", "0.5"])
    assert code == 3


def test_detect_reports_group_and_orbits(tmp_path, capsys):
    path = _write(tmp_path, "tet.json", platonic("tetrahedron"))
    code, out, _ = _run(capsys, ["detect", path, "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["command"] == "detect"
    assert d["group"]["schoenflies"] == "Td"
    labels = [c["label"] for c in d["group"]["classes"]]
    assert labels == ["E", "8C3", "3C2", "6S4", "6sigma_d"]
    assert sorted(sum(d["orbits"]["joint_orbits"], [])) == [0, 1, 2, 3]
    assert sorted(sum(d["orbits"]["bar_orbits"], [])) == list(range(6))


def test_check_exit_codes(tmp_path, capsys):
    good = _write(tmp_path, "c2.json", fig2_examples("C2"))
    code, out, _ = _run(capsys, ["check", good, "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["conditions"]["passed"] is True

    bad = _write(tmp_path, "c4.json", counterexample_2d("C4"))
    code, out, _ = _run(capsys, ["check", bad, "--json"])
    assert code == 1
    d = json.loads(out)
    assert d["conditions"]["passed"] is False
    failed = [c for c in d["conditions"]["checks"] if not c["passed"]]
    assert {c["equation_id"] for c in failed} == {"2D:E", "2D:Cn", "2D:C2"}


def test_check_sufficient_flag(tmp_path, capsys):
    good = _write(tmp_path, "c3.json", fig2_examples("C3"))
    code, out, _ = _run(capsys, ["check", good, "--sufficient", "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["sufficiency"]["passed"] is True
    assert d["sufficiency"]["epistemic"] == "theorem-backed"

    base = fig2_examples("C1")
    pared = new_framework(
        2, base.coordinates, [b.ends for b in base.bars][:-1]
    )
    path = _write(tmp_path, "pared.json", pared)
    code, out, _ = _run(capsys, ["check", path, "--sufficient", "--json"])
    assert code == 1


def test_pebble_on_framework_and_bare_graph(tmp_path, capsys):
    path = _write(tmp_path, "c1.json", fig2_examples("C1"))
    code, out, _ = _run(capsys, ["pebble", path, "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["sparsity"]["verdict"] == "tight"
    assert d["sparsity"]["free_pebbles"] == 3

    k4 = tmp_path / "k4.json"
    k4.write_text(
        json.dumps(
            {
                "joints": 4,
                "bars": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
            }
        )
    )
    code, out, _ = _run(capsys, ["pebble", str(k4), "--json"])
    assert code == 1
    d = json.loads(out)
    assert d["sparsity"]["verdict"] == "dependent"
    assert d["sparsity"]["witness"]["bars"] == 6
    assert d["sparsity"]["witness"]["joints"] == 4

    alias = tmp_path / "alias.json"
    alias.write_text(
        json.dumps({"joint_count": 3, "bars": [[0, 1], [1, 2]]})
    )
    code, out, _ = _run(capsys, ["pebble", str(alias), "--json"])
    assert code == 1
    assert json.loads(out)["sparsity"]["verdict"] == "independent-but-underbraced"


def test_generate_writes_loadable_framework(tmp_path, capsys):
    out_path = tmp_path / "oct.json"
    code, out, _ = _run(
        capsys, ["generate", "platonic", "octahedron", "-o", str(out_path)]
    )
    assert code == 0
    f = from_json(out_path.read_text())
    assert (f.joint_count, f.bar_count) == (6, 12)
    # with -o a short summary goes to stdout instead of the framework
    assert "6 joints" in out and "12 bars" in out
    assert "scalar count   : 0" in out


def test_generate_pipes_framework_json(tmp_path, capsys):
    code, out, _ = _run(capsys, ["generate", "double_banana"])
    assert code == 0
    f = from_json(out)
    assert (f.joint_count, f.bar_count) == (8, 18)


@pytest.mark.parametrize(
    "argv,joints",
    [
        (["generate", "platonic", "tetrahedron"], 4),
        (["generate", "fig2_examples", "C2v"], 8),
        (["generate", "counterexample_2d", "C6"], 12),
        (["generate", "double_banana"], 8),
    ],
)
def test_generate_simple_recipes(argv, joints, capsys):
    code, out, _ = _run(capsys, argv)
    assert code == 0
    assert from_json(out).joint_count == joints


def test_generate_construction_recipes(tmp_path, capsys):
    tet = _write(tmp_path, "tet.json", platonic("tetrahedron"))
    oct_ = _write(tmp_path, "oct.json", platonic("octahedron"))

    code, out, _ = _run(
        capsys,
        ["generate", "cap_face", "-i", tet, "--face", "0,1,2", "--height", "0.9"],
    )
    assert code == 0 and from_json(out).joint_count == 5

    code, out, _ = _run(
        capsys, ["generate", "cap_all_faces_symmetric", "-i", oct_]
    )
    assert code == 0 and from_json(out).joint_count == 14

    code, out, _ = _run(
        capsys,
        ["generate", "twisted_cap_all_faces", "-i", oct_, "--twist-deg", "25"],
    )
    assert code == 0 and from_json(out).joint_count == 30

    code, out, _ = _run(
        capsys,
        ["generate", "hat_stack", "-i", tet, "--face", "0,1,2", "--k", "2"],
    )
    assert code == 0 and from_json(out).joint_count == 6


def test_generate_error_paths(tmp_path, capsys):
    oct_ = _write(tmp_path, "oct.json", platonic("octahedron"))
    code, _, err = _run(
        capsys,
        ["generate", "twisted_cap_all_faces", "-i", oct_, "--twist-deg", "0"],
    )
    assert code == 3
    assert "twist" in err.lower()

    code, _, _ = _run(capsys, ["generate", "cap_face", "-i", oct_])
    assert code == 3

    code, _, _ = _run(capsys, ["generate", "platonic", "icosidodecahedron"])
    assert code == 3


def test_dump_dot(tmp_path, capsys):
    path = _write(tmp_path, "c1.json", fig2_examples("C1"))
    dot = tmp_path / "c1.dot"
    code, _, _ = _run(capsys, ["analyze", path, "--dump-dot", str(dot)])
    assert code == 0
    text = dot.read_text()
    assert text.startswith("graph")
    assert "pos=" in text
    assert text.count(" -- ") == fig2_examples("C1").bar_count


def test_seed_and_tolerances_recorded(tmp_path, capsys):
    path = _write(tmp_path, "tet.json", platonic("tetrahedron"))
    code, out, _ = _run(
        capsys,
        [
            "analyze", path, "--json",
            "--seed", "42",
            "--tol-rank", "1e-8",
            "--tol-geom", "1e-5",
        ],
    )
    assert code == 0
    d = json.loads(out)
    assert d["seed"] == 42
    assert d["tolerances"] == {"geometric_rel": 1e-5, "rank": 1e-8}
    assert d["kinematics"]["rank_tolerance"] == 1e-8


def test_shell_pipeline_generate_into_analyze(tmp_path):
    # the real stdin/stdout contract, end to end through a shell pipe
    proc = subprocess.run(
        f"{sys.executable} -m isoframe.cli generate platonic icosahedron | "
        f"{sys.executable} -m isoframe.cli analyze - --json",
        shell=True,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    d = json.loads(proc.stdout)
    assert d["group"]["schoenflies"] == "Ih"
    assert d["input"] == "-"
    assert d["kinematics"]["isostatic"] is True


def test_stdin_dash_reads_framework():
    proc = subprocess.run(
        [sys.executable, "-m", "isoframe.cli", "pebble", "-", "--json"],
        input=to_json(fig2_examples("C3v_in")),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["sparsity"]["verdict"] == "tight"
