import json
import math
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from gatediscrim import cli, files

GOLDEN = Path(__file__).parent / "data" / "golden"

# exit-code contract for `discriminate` over the committed corpus:
# 0 = perfectly distinguishable, 1 = error-prone, 2 = input problem
DISCRIMINATE_TABLE = [
    ("01", "06", 0),
    ("01", "02", 0),
    ("12", "01", 0),
    ("01", "04", 1),
    ("01", "05", 1),
    ("01", "01", 1),
    ("07", "04", 1),
    ("01", "08", 2),
    ("01", "09", 2),
    ("01", "10", 2),
    ("01", "11", 2),
]


def g(prefix: str) -> str:
    hits = sorted(GOLDEN.glob(f"{prefix}_*.json"))
    assert len(hits) == 1, f"corpus file {prefix} missing"
    return str(hits[0])


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_corpus_is_complete():
    names = sorted(p.name for p in GOLDEN.glob("*.json"))
    assert len(names) == 12
    assert [n[:2] for n in names] == [f"{i:02d}" for i in range(1, 13)]


@pytest.mark.parametrize("first,second,expected", DISCRIMINATE_TABLE)
def test_discriminate_exit_codes(capsys, first, second, expected):
    code, out, err = run_main(capsys, "discriminate", g(first), g(second))
    assert code == expected
    if expected == 2:
        assert err.startswith("error:")
        assert out == ""
    else:
        assert err == ""
        files.parse_document(out)


def test_discriminate_error_prone_report(capsys):
    code, out, _ = run_main(capsys, "discriminate", g("01"), g("04"))
    assert code == 1
    doc = files.parse_document(out)
    assert doc["kind"] == "discrimination_report"
    assert doc["fidelity"] == pytest.approx(math.cos(math.pi / 8), abs=1e-7)
    assert doc["error_probability"] == pytest.approx(0.3086583, abs=1e-7)
    assert doc["perfectly_distinguishable"] is False
    assert doc["case"] == "OriginOutside"
    assert doc["probe"]["concurrence"] <= 1e-9
    assert doc["probe"]["via_fallback"] is False
    assert doc["priors"] == {"p1": 0.5, "p2": 0.5}
    # serialization round-trips byte-identically
    assert files.render_document(doc) == out


def test_discriminate_perfect_report(capsys):
    code, out, _ = run_main(capsys, "discriminate", g("01"), g("06"))
    assert code == 0
    doc = files.parse_document(out)
    assert doc["fidelity"] == 0.0
    assert doc["error_probability"] == 0.0
    assert doc["perfectly_distinguishable"] is True
    assert doc["case"] == "OriginInside"
    assert abs(doc["achieved_value"]) <= 1e-9


def test_discriminate_identical_gates(capsys):
    code, out, _ = run_main(capsys, "discriminate", g("01"), g("01"))
    assert code == 1
    doc = files.parse_document(out)
    assert doc["fidelity"] == pytest.approx(1.0)
    assert doc["error_probability"] == pytest.approx(0.5)


def test_discriminate_error_messages(capsys):
    _, _, err = run_main(capsys, "discriminate", g("01"), g("08"))
    assert "decompose" in err  # points the user at the right tool
    _, _, err = run_main(capsys, "discriminate", g("01"), g("09"))
    assert "not unitary" in err
    _, _, err = run_main(capsys, "discriminate", g("01"), g("10"))
    assert "not valid JSON" in err
    _, _, err = run_main(capsys, "discriminate", g("01"), g("11"))
    assert "violated" in err
    _, _, err = run_main(capsys, "discriminate", g("01"), "no_such_file.json")
    assert "cannot read" in err


def test_build_ud_decompose_roundtrip(capsys, tmp_path):
    out = tmp_path / "gate.json"
    code, _, _ = run_main(
        capsys, "build-ud", "--alpha", "0.3,0.2,0.1", "--out", str(out)
    )
    assert code == 0
    code, text, _ = run_main(capsys, "decompose", str(out))
    assert code == 0
    doc = files.parse_document(text)
    assert doc["alpha"] == pytest.approx([0.3, 0.2, 0.1], abs=1e-7)
    assert doc["class"] == "Entangling"
    assert sum(doc["lambda"]) == pytest.approx(0.0, abs=1e-9)


def test_build_ud_degrees_flag(capsys, tmp_path):
    out = tmp_path / "gate.json"
    run_main(capsys, "build-ud", "--alpha", "45,45,45", "--degrees", "--out", str(out))
    code, text, _ = run_main(capsys, "decompose", str(out))
    assert code == 0
    doc = files.parse_document(text)
    assert doc["alpha"] == pytest.approx([math.pi / 4] * 3, abs=1e-7)
    assert doc["class"] == "SwapLike"


def test_build_ud_rejects_bad_vector(capsys, tmp_path):
    code, _, err = run_main(
        capsys, "build-ud", "--alpha", "0.1,0.2,0.3", "--out", str(tmp_path / "x.json")
    )
    assert code == 2
    assert "violated" in err
    code, _, err = run_main(
        capsys, "build-ud", "--alpha", "0.1,0.2", "--out", str(tmp_path / "x.json")
    )
    assert code == 2


def test_decompose_identity_and_dressed(capsys):
    code, text, _ = run_main(capsys, "decompose", g("01"))
    assert code == 0
    doc = files.parse_document(text)
    assert doc["alpha"] == pytest.approx([0.0, 0.0, 0.0], abs=1e-9)
    assert doc["class"] == "Identity"
    # local dressing hides nothing from the decomposition
    code, text, _ = run_main(capsys, "decompose", g("08"))
    assert code == 0
    doc = files.parse_document(text)
    assert doc["alpha"] == pytest.approx([0.6, 0.25, 0.05], abs=1e-7)


def test_decompose_rejects_nonunitary(capsys):
    code, _, err = run_main(capsys, "decompose", g("09"))
    assert code == 2
    assert "not unitary" in err


def test_simulate_perfect_pair(capsys):
    code, out, _ = run_main(
        capsys, "simulate", g("01"), g("06"), "--shots", "10000", "--seed", "3"
    )
    assert code == 0
    doc = files.parse_document(out)
    assert doc["errors"] == 0
    assert doc["empirical_rate"] == 0.0
    assert doc["z_score"] == 0.0


def test_simulate_anchor_pair(capsys):
    code, out, _ = run_main(
        capsys, "simulate", g("01"), g("04"), "--shots", "100000", "--seed", "42"
    )
    assert code == 0
    doc = files.parse_document(out)
    assert doc["analytic_error_probability"] == pytest.approx(0.3086583, abs=1e-7)
    assert abs(doc["empirical_rate"] - 0.3086583) <= 3 * doc["std_error"]
    assert abs(doc["z_score"]) <= 4.0
    assert doc["shots"] == 100000
    assert sum(map(sum, doc["confusion"])) == 100000


def test_simulate_bad_shots(capsys):
    code, _, err = run_main(capsys, "simulate", g("01"), g("04"), "--shots", "0")
    assert code == 2
    assert "shots" in err


def test_selfcheck_passes_and_replays(capsys):
    code, out, _ = run_main(capsys, "selfcheck", "--trials", "3", "--seed", "5")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("trial")]
    assert len(lines) == 3
    assert "3/3 trials passed" in out
    # replaying trial 2 alone (seed 5+2) reproduces its verdict
    target = lines[2].split("): ", 1)[1]
    code, out, _ = run_main(capsys, "selfcheck", "--trials", "1", "--seed", "7")
    assert code == 0
    replay = [l for l in out.splitlines() if l.startswith("trial")][0]
    assert "(seed 7)" in replay
    assert replay.split("): ", 1)[1] == target


def test_selfcheck_zero_trials(capsys):
    code, _, err = run_main(capsys, "selfcheck", "--trials", "0")
    assert code == 2
    assert "trials" in err


def test_figure_inside_and_outside(capsys, tmp_path):
    inside = tmp_path / "inside.svg"
    code, out, _ = run_main(
        capsys, "figure", "--omega", "0,90,180,-90", "--degrees", "--out", str(inside)
    )
    assert code == 0
    assert str(inside) in out
    text = inside.read_text()
    assert text.startswith("<?xml")
    assert "polygon" in text
    assert "stroke-dasharray" not in text  # origin inside: no distance segment

    outside = tmp_path / "outside.svg"
    run_main(
        capsys,
        "figure",
        "--omega",
        "0,1.0471975511965976,0.5235987755982988,0.7853981633974483",
        "--out",
        str(outside),
    )
    assert "stroke-dasharray" in outside.read_text()


def test_figure_single_point(capsys, tmp_path):
    path = tmp_path / "single.svg"
    code, _, _ = run_main(capsys, "figure", "--omega", "0,0,0,0", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert "P1,P2,P3,P4" in text


def test_discriminate_outputs_are_deterministic(capsys, tmp_path):
    blobs = []
    for r in range(2):
        probe = tmp_path / f"probe{r}.json"
        fig = tmp_path / f"fig{r}.svg"
        code, out, _ = run_main(
            capsys,
            "discriminate",
            g("01"),
            g("04"),
            "--probe-out",
            str(probe),
            "--svg-out",
            str(fig),
        )
        assert code == 1
        blobs.append((out, probe.read_bytes(), fig.read_bytes()))
    assert blobs[0] == blobs[1]
    probe_doc = files.parse_document(blobs[0][1].decode())
    assert probe_doc["kind"] == "probe_state"
    assert files.render_document(probe_doc).encode() == blobs[0][1]


def test_help_version_and_usage_errors(capsys):
    assert run_main(capsys, "--help")[0] == 0
    code, out, _ = run_main(capsys, "--version")
    assert code == 0
    code, _, _ = run_main(capsys, "bogus-command")
    assert code == 2
    code, _, _ = run_main(capsys)
    assert code == 2
    code, _, err = run_main(capsys, "discriminate", g("01"), g("04"), "--p1", "oops")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gatediscrim.cli", "discriminate", g("01"), g("06")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert files.parse_document(proc.stdout)["perfectly_distinguishable"] is True


def test_console_script_if_installed():
    exe = shutil.which("gatediscrim")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "gatediscrim" in proc.stdout
