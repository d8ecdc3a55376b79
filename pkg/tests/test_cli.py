"""End-to-end tests of the command-line interface (in-process)."""

import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from pam.cli import main
from pam.mapmodel import standard_definition_text

# a unit square split into three triangles with a T-junction at m=(1,1):
# the diagonal of abc passes through m, whose pinned image disagrees there
SQUARE_TJUNCTION = (
    "vertex a 0 0\nvertex b 2 0\nvertex c 2 2\nvertex d 0 2\n"
    "vertex m 1 1\n"
    "domain a b c d\n"
    "triangle abc a b c\ntriangle amd a m d\ntriangle mcd m c d\n"
    "image a a\nimage b b\nimage c c\nimage d d\nimage m 1 0\n"
)


@pytest.fixture
def no_seed(monkeypatch):
    monkeypatch.delenv("PAM_SEED", raising=False)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- build -------------------------------------------------------------------


def test_build_bundled(capsys):
    code, out, err = run(capsys, ["build"])
    assert code == 0
    assert "pieces: 31" in out
    assert "continuity: exact" in out
    assert "cone certificates: pass" in out
    assert "deviation: piece count is 31" in out


def test_build_from_file(capsys, tmp_path):
    path = tmp_path / "standard.map"
    path.write_text(standard_definition_text())
    code, out, _ = run(capsys, ["build", "--map", str(path)])
    assert code == 0
    assert "continuity: exact" in out


def test_build_empty_file_is_a_parse_error(capsys, tmp_path):
    path = tmp_path / "empty.map"
    path.write_text("")
    code, out, err = run(capsys, ["build", "--map", str(path)])
    assert code == 2
    assert "line 0" in err


def test_build_missing_file_is_a_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, ["build", "--map", str(tmp_path / "nope.map")])
    assert code == 3
    assert "cannot read" in err


def test_build_rejects_image_pushed_outside(capsys, tmp_path):
    # nudge an image-row vertex across the right boundary edge
    text = standard_definition_text().replace(
        "vertex E^u 3/4 3/2\n", "vertex E^u 751/1000 3/2\n", 1
    )
    assert "751/1000" in text
    path = tmp_path / "bad.map"
    path.write_text(text)
    code, _, err = run(capsys, ["build", "--map", str(path)])
    assert code == 2
    assert "ImageOutsideDomain" in err
    assert "maps outside the domain" in err


def test_build_rejects_perturbed_coding_corner(capsys, tmp_path):
    # a 1/1000 nudge of a coding-piece corner breaks the frozen certificates
    text = standard_definition_text().replace(
        "vertex B^c -9/20 1/2\n", "vertex B^c -449/1000 1/2\n", 1
    )
    assert "-449/1000" in text
    path = tmp_path / "bad.map"
    path.write_text(text)
    code, out, _ = run(capsys, ["build", "--map", str(path)])
    assert code == 2
    assert "cone certificates: fail" in out
    assert "FAIL:" in out


def test_build_reports_discontinuity_witness(capsys, tmp_path):
    path = tmp_path / "tjunction.map"
    path.write_text(SQUARE_TJUNCTION)
    code, _, err = run(capsys, ["build", "--map", str(path)])
    assert code == 2
    assert "ContinuityViolation" in err
    assert "shared edge" in err


# -- verify ------------------------------------------------------------------


def test_verify_bundled_report(capsys, tmp_path):
    report = tmp_path / "report.txt"
    code, out, _ = run(capsys, ["verify", "--report", str(report)])
    assert code == 0
    assert out.count("property:") == 10
    for needle in ("0, 0.525", "0, 0.55", "0, 0.825", "5/3, 5/4", "5/2, 1"):
        assert needle in out, needle
    # the recorded wording tension about the vertical factors
    assert "without reconciling them" in out
    assert report.read_text() == out


def test_verify_is_deterministic(capsys):
    code1, out1, _ = run(capsys, ["verify"])
    code2, out2, _ = run(capsys, ["verify"])
    assert (code1, code2) == (0, 0)
    assert out1 == out2


def test_verify_fails_on_perturbed_map(capsys, tmp_path):
    text = standard_definition_text().replace(
        "vertex B^c -9/20 1/2\n", "vertex B^c -449/1000 1/2\n", 1
    )
    path = tmp_path / "bad.map"
    path.write_text(text)
    code, out, err = run(capsys, ["verify", "--map", str(path)])
    assert code == 2
    assert "FAILED" in err


# -- orbit -------------------------------------------------------------------


def test_orbit_exact_table(capsys):
    code, out, _ = run(capsys, ["orbit", "-19/40", "1/2", "--depth", "4"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "step\tx\ty\tsign\tletter"
    assert lines[1] == "0\t-19/40\t1/2\t-1\t0"
    assert lines[2] == "1\t0\t1/4\t0\t-"
    assert lines[3] == "2\t3/8\t1/4\t1\t-"
    assert lines[4] == "3\t-3/4\t1/2\t-1\t-"
    assert lines[5] == "4\t-3/4\t1/2\t-1\t-"
    assert len(lines) == 6


def test_orbit_default_depth(capsys):
    code, out, _ = run(capsys, ["orbit", "0", "1"])
    assert code == 0
    assert len(out.splitlines()) == 22  # header + 21 points


def test_orbit_outside_domain(capsys):
    code, _, err = run(capsys, ["orbit", "5", "5"])
    assert code == 3
    assert "not in the domain" in err


def test_orbit_bad_rational(capsys):
    code, _, err = run(capsys, ["orbit", "abc", "1/2"])
    assert code == 3
    assert "not a rational number" in err


def test_orbit_rejects_nonpositive_depth(capsys):
    code, _, err = run(capsys, ["orbit", "0", "1", "--depth", "0"])
    assert code == 3
    assert "must be positive" in err


# -- cylinders ---------------------------------------------------------------


def test_cylinders_counts_and_drift(capsys, no_seed):
    code, out, _ = run(capsys, ["cylinders", "--depth", "5", "--samples", "8"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed: 0"
    assert lines[1] == "depth\tcells\texpected\tok"
    for n in range(1, 6):
        assert lines[1 + n] == f"{n}\t{2 ** n}\t{2 ** n}\tyes"
    assert "drift identity exact: 8/8" in out
    assert "drift inequality holds: 8/8" in out
    assert out.endswith("status: pass\n")


def test_cylinders_seed_determinism(capsys, monkeypatch):
    monkeypatch.setenv("PAM_SEED", "42")
    code1, out1, _ = run(capsys, ["cylinders", "--depth", "3", "--samples", "10"])
    code2, out2, _ = run(capsys, ["cylinders", "--depth", "3", "--samples", "10"])
    assert (code1, code2) == (0, 0)
    assert out1 == out2
    assert "seed: 42" in out1


def test_cylinders_other_seed_still_passes(capsys, monkeypatch):
    monkeypatch.setenv("PAM_SEED", "20260815")
    code, out, _ = run(capsys, ["cylinders", "--depth", "2", "--samples", "12"])
    assert code == 0
    assert "drift identity exact: 12/12" in out


def test_cylinders_bad_seed(capsys, monkeypatch):
    monkeypatch.setenv("PAM_SEED", "not-a-number")
    code, _, err = run(capsys, ["cylinders"])
    assert code == 3
    assert "PAM_SEED" in err


# -- entropy -----------------------------------------------------------------


def test_entropy_table(capsys, tmp_path):
    report = tmp_path / "entropy.tsv"
    code, out, _ = run(capsys, ["entropy", "--max-M", "8",
                                "--report", str(report)])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["M", "states", "entropy", "gap", "P(y<0.001)"]
    row1 = lines[1].split("\t")
    assert row1[0] == "1" and row1[1] == "3"
    assert abs(float(row1[2]) - 0.34657359027997264) < 1e-11
    row8 = lines[8].split("\t")
    assert row8[0] == "8" and row8[1] == "17"
    assert abs(float(row8[4]) - 4 / 9) < 1e-9
    assert "entropy strictly increasing: yes" in out
    assert "entropy below log 2: yes" in out
    assert "escape columns nondecreasing: yes" in out
    assert "demonstration of the mechanism, not a proof" in out
    assert report.read_text() == out


def test_entropy_multiple_deltas(capsys):
    code, out, _ = run(capsys, ["entropy", "--max-M", "4",
                                "--delta", "1e-2,1e-4"])
    assert code == 0
    header = out.splitlines()[0].split("\t")
    assert header[4:] == ["P(y<0.0001)", "P(y<0.01)"]  # sorted ascending


def test_entropy_rejects_bad_delta(capsys):
    code, _, err = run(capsys, ["entropy", "--delta", "0"])
    assert code == 3
    code, _, err = run(capsys, ["entropy", "--delta", "abc"])
    assert code == 3


def test_entropy_rejects_bad_max_M(capsys):
    code, _, err = run(capsys, ["entropy", "--max-M", "-3"])
    assert code == 3


# -- render ------------------------------------------------------------------


def test_render_to_file(capsys, tmp_path):
    path = tmp_path / "partition.svg"
    code, out, _ = run(capsys, ["render", "--figure", "partition",
                                "--out", str(path)])
    assert code == 0
    assert f"wrote {path}" in out
    root = ET.fromstring(path.read_text())
    assert root.tag.endswith("svg")


def test_render_to_stdout(capsys):
    code, out, _ = run(capsys, ["render", "--figure", "strips"])
    assert code == 0
    assert out.startswith("<?xml")
    ET.fromstring(out)


def test_render_unknown_figure(capsys):
    code, _, err = run(capsys, ["render", "--figure", "heatmap"])
    assert code == 3
    assert "unknown figure" in err


def test_render_unwritable_path(capsys, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "x.svg"
    code, _, err = run(capsys, ["render", "--figure", "strips",
                                "--out", str(target)])
    assert code == 3
    assert "cannot write" in err


# -- top-level wiring --------------------------------------------------------


def test_no_subcommand_is_usage_error(capsys):
    code, _, err = run(capsys, ["--bogus"])
    assert code == 3
    code, _, err = run(capsys, [])
    assert code == 3


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, ["frobnicate"])
    assert code == 3


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


@pytest.mark.skipif(shutil.which("pam") is None, reason="pam script not on PATH")
def test_console_script_smoke():
    proc = subprocess.run(
        ["pam", "build"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert "continuity: exact" in proc.stdout


def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "pam.cli", "render", "--figure", "heatmap"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 3
