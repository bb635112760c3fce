"""Exit-code and determinism tests for the command-line surface."""

import random

import pytest
import yaml

from qospread import family_io
from qospread.cli import EXIT_BAD_INPUT, EXIT_IO, EXIT_OK, EXIT_VERIFY_FAILED, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def family_path(tmp_path, capsys):
    path = tmp_path / "fam.yaml"
    code, _, _ = run(capsys, "generate", "--p", "3", "--k", "1", "--n", "2", "--out", str(path))
    assert code == EXIT_OK
    return path


# --- generate -------------------------------------------------------------------


def test_generate_writes_ten_members(family_path):
    ff = family_io.load(family_path)
    assert len(ff.members) == 10
    assert ff.nonresidue == (2,)


def test_generate_n1(tmp_path, capsys):
    path = tmp_path / "one.yaml"
    code, out, _ = run(capsys, "generate", "--p", "3", "--n", "1", "--out", str(path))
    assert code == EXIT_OK
    assert len(family_io.load(path).members) == 1


def test_generate_rejects_p4(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--p", "4", "--out", str(tmp_path / "x.yaml"))
    assert code == EXIT_BAD_INPUT
    assert "must be an odd prime" in err


def test_generate_rejects_p2(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--p", "2", "--out", str(tmp_path / "x.yaml"))
    assert code == EXIT_BAD_INPUT
    assert "must be an odd prime" in err


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
    run(capsys, "generate", "--p", "3", "--n", "2", "--out", str(a))
    run(capsys, "generate", "--p", "3", "--n", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_generate_io_failure(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--p", "3", "--out", str(tmp_path / "no" / "dir.yaml"))
    assert code == EXIT_IO


def test_generate_with_overrides(tmp_path, capsys):
    path = tmp_path / "alt.yaml"
    code, _, _ = run(capsys, "generate", "--p", "7", "--out", str(path), "--d-override", "5")
    assert code == EXIT_OK
    ff = family_io.load(path)
    assert ff.nonresidue == (5,)
    code, _, _ = run(capsys, "verify", str(path))
    assert code == EXIT_OK


# --- verify ---------------------------------------------------------------------


def test_verify_generated_family_passes(family_path, capsys):
    code, out, _ = run(capsys, "verify", str(family_path), "--mode", "both")
    assert code == EXIT_OK
    assert "result: PASS" in out
    assert "symbolic: PASS" in out
    assert "numeric: PASS" in out


def test_verify_symbolic_only(family_path, capsys):
    code, out, _ = run(capsys, "verify", str(family_path), "--mode", "symbolic")
    assert code == EXIT_OK
    assert "numeric" not in out


def test_verify_detects_cross_member_corruption(family_path, capsys):
    doc = yaml.safe_load(family_path.read_text())
    doc["members"][0]["generators"][0][3] = (doc["members"][0]["generators"][0][3] + 1) % 3
    family_path.write_text(yaml.safe_dump(doc))
    code, out, _ = run(capsys, "verify", str(family_path))
    assert code == EXIT_VERIFY_FAILED
    assert "result: FAIL" in out


def test_verify_detects_span_preserving_corruption(family_path, capsys):
    # D[0] stores rows (1,0,0,0) and (0,1,0,0); bumping one coordinate inside
    # the span leaves every set-theoretic check intact, so only the
    # canonical-row integrity check can see it
    doc = yaml.safe_load(family_path.read_text())
    d0 = next(m for m in doc["members"] if m["label"] == "D[0]")
    d0["generators"][0][1] = 2
    family_path.write_text(yaml.safe_dump(doc))
    code, out, _ = run(capsys, "verify", str(family_path))
    assert code == EXIT_VERIFY_FAILED
    assert "integrity: FAIL" in out


def test_verify_truncated_file(family_path, capsys):
    text = family_path.read_text()
    family_path.write_text(text[: text.rindex("[") + 2])
    code, _, err = run(capsys, "verify", str(family_path))
    assert code == EXIT_BAD_INPUT
    assert "malformed" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "verify", str(tmp_path / "absent.yaml"))
    assert code == EXIT_IO


def test_verify_numeric_guard_exceeded(tmp_path, capsys):
    path = tmp_path / "big.yaml"
    run(capsys, "generate", "--p", "5", "--n", "3", "--out", str(path))
    code, _, err = run(capsys, "verify", str(path), "--mode", "numeric")
    assert code == EXIT_BAD_INPUT
    assert "guard" in err
    # in 'both' mode the numeric stage is skipped, not fatal
    code, out, _ = run(capsys, "verify", str(path), "--mode", "both")
    assert code == EXIT_OK
    assert "numeric: skipped" in out


def test_verify_sampled_numeric(tmp_path, capsys):
    path = tmp_path / "n4.yaml"
    run(capsys, "generate", "--p", "3", "--n", "4", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--mode", "numeric", "--sample", "25")
    assert code == EXIT_OK
    assert "checks=25" in out


# --- example --------------------------------------------------------------------


def test_example_matches_golden(capsys, request):
    golden = request.path.parent / "data" / "example_table.txt"
    code, out, _ = run(capsys, "example")
    assert code == EXIT_OK
    assert out == golden.read_text(encoding="utf-8")


def test_example_row_structure(capsys):
    _, out, _ = run(capsys, "example")
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("span{π(C_{1,0})} = {")
    assert lines[-1].startswith("span{π(D_{∞})} = {")
    for line in lines:
        assert line.count("⊗") == 9  # nine monomials per row


# --- mub ------------------------------------------------------------------------


def test_mub_p3(tmp_path, capsys):
    out_path = tmp_path / "mub.txt"
    code, out, _ = run(capsys, "mub", "--p", "3", "--k", "1", "--out", str(out_path))
    assert code == EXIT_OK
    assert "10 bases of C^9" in out
    text = out_path.read_text()
    assert sum(1 for li in text.splitlines() if li.startswith("basis ")) == 10
    # 10 bases x 9 vectors, one line each
    assert sum(1 for li in text.splitlines() if li and not li.startswith(("#", "basis"))) == 90


def test_mub_p5(tmp_path, capsys):
    code, out, _ = run(capsys, "mub", "--p", "5", "--out", str(tmp_path / "m.txt"))
    assert code == EXIT_OK
    assert "26 bases of C^25" in out


def test_mub_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "mub", "--p", "3", "--out", str(a))
    run(capsys, "mub", "--p", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_mub_guard(tmp_path, capsys):
    code, _, err = run(capsys, "mub", "--p", "11", "--out", str(tmp_path / "x.txt"))
    assert code == EXIT_BAD_INPUT
    assert "guard" in err


# --- randomized fault injection (small version; the acceptance suite runs 20) ----


def test_random_single_coordinate_corruption_detected(family_path, capsys):
    rng = random.Random(0)
    original = family_path.read_text()
    for _ in range(5):
        doc = yaml.safe_load(original)
        member = rng.choice(doc["members"])
        row = rng.choice(member["generators"])
        pos = rng.randrange(len(row))
        row[pos] = (row[pos] + rng.randrange(1, 3)) % 3
        family_path.write_text(yaml.safe_dump(doc))
        code, _, _ = run(capsys, "verify", str(family_path))
        assert code == EXIT_VERIFY_FAILED
