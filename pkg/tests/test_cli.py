import subprocess
import sys
from pathlib import Path

from ucw.cli import main
from ucw.constructions import renaud_family
from ucw.core import is_separating, is_union_closed, max_frequency
from ucw.familyfile import load_family, parse_family, serialize_family

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def as_pairs(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if ": " in line:
            key, value = line.split(": ", 1)
            out[key] = value
    return out


def test_gen_conway(capsys):
    code, out, _ = run_cli(capsys, "gen", "conway", "-n", "23")
    assert code == 0
    values = out.split()
    assert len(values) == 23
    assert values[0] == values[1] == "1"
    assert values[-1] == "14"


def test_gen_renaud_writes_file_and_reports_beta(capsys, tmp_path):
    target = tmp_path / "b23.ucs"
    code, out, _ = run_cli(capsys, "gen", "renaud", "-n", "23", "-o", str(target))
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["beta"] == "13"
    assert pairs["k"] == "5"
    fam = load_family(target)
    assert len(fam) == 23 and max_frequency(fam) == (1, 13)


def test_gen_renaud_stdout_document(capsys):
    code, out, err = run_cli(capsys, "gen", "renaud", "-n", "23")
    assert code == 0
    fam = parse_family(out)
    assert len(fam) == 23
    assert as_pairs(err)["beta"] == "13"


def test_gen_beta_cross_check(capsys):
    code, out, _ = run_cli(capsys, "gen", "beta", "-n", "56")
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["beta"] == "31"
    assert pairs["cross_check"] == "ok"


def test_gen_block_upset(capsys, tmp_path):
    target = tmp_path / "c.ucs"
    code, out, _ = run_cli(
        capsys, "gen", "block-upset", "-s", "3", "-k", "2", "-o", str(target)
    )
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["n"] == "79"
    assert pairs["max_freq"] == "43"
    assert pairs["block_freq_equal"] == "true"
    assert pairs["hole_levels"] == "5..5"
    fam = load_family(target)
    assert len(fam) == 79


def test_gen_block_upset_rejects_2_2(capsys):
    code, _, err = run_cli(capsys, "gen", "block-upset", "-s", "2", "-k", "2")
    assert code == 2
    assert "error" in err


def test_gen_pad(capsys, tmp_path):
    src = tmp_path / "p3.ucs"
    dst = tmp_path / "padded.ucs"
    run_cli(capsys, "gen", "block-upset", "-s", "3", "-k", "2", "-o", str(src))
    code, out, _ = run_cli(
        capsys, "gen", "pad", "-c", "5/2", "-i", str(src), "-o", str(dst)
    )
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["ratio_ok"] == "true"
    fam = load_family(dst)
    assert is_union_closed(fam) and is_separating(fam)


def test_analyze_b23(capsys):
    code, out, _ = run_cli(capsys, "analyze", str(GOLDEN / "b23.ucs"))
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["n"] == "23"
    assert pairs["m"] == "5"
    assert pairs["union_closed"] == "true"
    assert pairs["separating"] == "true"
    assert pairs["max_freq"] == "13"
    assert pairs["conjecture"] == "holds"
    assert pairs["s_table_rows"] == "5"
    assert int(pairs["s_bound_frequency"]) >= 5


def test_analyze_emits_stable_audit_keys(capsys):
    code, out, _ = run_cli(capsys, "analyze", str(GOLDEN / "b23.ucs"))
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["conjecture_holds"] == "true"
    assert pairs["parity_ok"] == "n/a"
    assert pairs["maxfreq_equals_n"] == "n/a"
    assert pairs["size_bound_ok"] == "n/a"


def test_analyze_non_union_closed(capsys, tmp_path):
    path = tmp_path / "open.ucs"
    path.write_text("ucs 1\nm=2\n1\n2\n")
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["union_closed"] == "false"
    assert pairs["basis_count"] == "n/a"
    assert pairs["conjecture"] == "n/a"
    assert "s_table_rows" not in pairs


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify", str(GOLDEN / "b23.ucs"))
    assert code == 0
    assert as_pairs(out)["conjecture"] == "holds"

    bad = tmp_path / "broken.ucs"
    bad.write_text("ucs 1\nm=2\n2 1\n")
    code, _, err = run_cli(capsys, "verify", str(bad))
    assert code == 2
    assert "element-order" in err

    missing = tmp_path / "nope.ucs"
    code, _, err = run_cli(capsys, "verify", str(missing))
    assert code == 2


def test_verify_usage_error_exit_2(capsys):
    assert main(["verify"]) == 2
    capsys.readouterr()


def test_search_phi_naive(capsys):
    code, out, _ = run_cli(capsys, "search", "phi", "-n", "3", "--naive")
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["phi"] == "2"
    witness = parse_family(out[out.index("ucs 1") :])
    assert len(witness) == 3 and max_frequency(witness)[1] == 2


def test_search_phi_workers_deterministic(capsys, tmp_path):
    outputs = []
    for workers in ("1", "4", "8"):
        target = tmp_path / f"w{workers}.ucs"
        code, out, _ = run_cli(
            capsys, "search", "phi", "-n", "7", "--workers", workers,
            "-o", str(target),
        )
        assert code == 0
        outputs.append((out, target.read_text()))
    assert outputs[0] == outputs[1] == outputs[2]
    pairs = as_pairs(outputs[0][0])
    assert pairs["phi"] == "4"
    assert pairs["conjecture_violations"] == "0"


def test_domain_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "gen", "beta", "-n", "1")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "gen", "pad", "-c", "2/1", "-i", "x", "-o", "y")
    assert code == 2


def test_compare_gap(capsys):
    code, out, _ = run_cli(capsys, "compare", "gap", "-N", "3")
    assert code == 0
    pairs = as_pairs(out)
    assert pairs["two_block_max_freq"] == "43"
    assert pairs["beta_max_freq"] == "44"
    assert pairs["gap"] == "1"


def test_golden_roundtrip_all_files():
    for path in sorted(GOLDEN.glob("*.ucs")):
        text = path.read_text()
        fam = parse_family(text)
        assert serialize_family(fam) == text, path.name


def test_golden_b23_regenerates_byte_identical():
    assert serialize_family(renaud_family(23)) == (GOLDEN / "b23.ucs").read_text()


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "ucw.cli"],
        capture_output=True,
        text=True,
    )
    # bare invocation is a usage error
    assert proc.returncode == 2


def test_cli_determinism_same_flags(capsys):
    first = run_cli(capsys, "gen", "beta", "-n", "100")
    second = run_cli(capsys, "gen", "beta", "-n", "100")
    assert first == second
