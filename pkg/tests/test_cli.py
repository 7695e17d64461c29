import io
import json
import random
from contextlib import redirect_stdout
from pathlib import Path

from cohprobe.cli import main

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_hilbert_free2_json():
    code, out = run_cli(["hilbert", str(ALGEBRAS / "free2.alg"), "-D", "10", "--json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["hilbert"]["dims"] == [2 ** d for d in range(11)]
    assert rep["algebra"] == "free2"
    assert rep["content_hash"]


def test_hilbert_oracle_flag():
    code, out = run_cli(
        ["hilbert", str(ALGEBRAS / "example1.alg"), "-D", "6", "--oracle-check", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["hilbert"]["oracle_agrees"] is True


def test_json_byte_identical():
    argv = ["probe", str(ALGEBRAS / "example2.alg"), "--side", "both",
            "--field", "F32003", "--json", "-D", "8", "--max-ideals", "6"]
    code1, out1 = run_cli(argv)
    code2, out2 = run_cli(argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_probe_ideal_subcommand():
    code, out = run_cli(
        ["probe", str(ALGEBRAS / "example1.alg"), "--ideal", "x",
         "--field", "F32003", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    block = rep["probe"]["right"]["ideal"]
    assert block["profile"] == [0, 0] + [1] * 9
    assert block["verdict"]["kind"] == "GROWING"


def test_probe_both_sides_example2():
    code, out = run_cli(
        ["probe", str(ALGEBRAS / "example2.alg"), "--side", "both",
         "--field", "F32003", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["probe"]["right"]["aggregate"]["kind"] == "STABLE"
    assert rep["probe"]["left"]["aggregate"]["kind"] == "GROWING"
    assert rep["probe"]["left"]["witness_ideal"] == ["z"]


def test_tor_module_json(tmp_path):
    spec = {"shifts0": [0], "shifts1": [1], "matrix": [["x"]]}
    mod = tmp_path / "mod.json"
    mod.write_text(json.dumps(spec), encoding="utf-8")
    code, out = run_cli(
        ["tor", str(ALGEBRAS / "xy_zero.alg"), "--module", str(mod), "-D", "6", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    # coker(A(-1) -x-> A) over xy=0: one generator, one relation, one syzygy chain
    assert rep["tor"]["rows"]["tor0"] == [1, 0, 0, 0, 0, 0, 0]
    assert rep["tor"]["rows"]["tor1"] == [0, 1, 0, 0, 0, 0, 0]
    assert rep["tor"]["audit"]["minimal"] is True


def test_veronese_subcommand():
    code, out = run_cli(
        ["veronese", str(ALGEBRAS / "remark.alg"), "--n", "2", "--field", "F32003", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    v = rep["veronese"]
    assert v["all_relations_monomial"] is True
    assert v["relations_per_internal_degree"]["2"] == 11
    assert v["trailing_silent_degrees"] >= 3


def test_zalg_subcommand():
    code, out = run_cli(
        ["zalg", str(ALGEBRAS / "commutative.alg"), "--window=-2..8",
         "--hom-range", "2", "--json"]
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["zalgebra"]["audit"]["ok"] is True
    assert rep["homtables"]["P0->P2"]["value"] == 3


def test_missing_file_exit_code():
    code, _ = run_cli(["hilbert", "no/such/file.alg"])
    assert code == 1


def test_degree_floor():
    code, _ = run_cli(["hilbert", str(ALGEBRAS / "free2.alg"), "-D", "1"])
    assert code == 1


def test_exit_codes_on_corrupted_inputs(tmp_path):
    base = (ALGEBRAS / "example1.alg").read_text(encoding="utf-8")
    rng = random.Random(41)
    corruptions = 0
    for trial in range(20):
        lines = base.splitlines()
        k = rng.randrange(len(lines))
        mode = rng.randrange(3)
        if mode == 0:
            lines[k] = lines[k] + " ^"
        elif mode == 1:
            lines[k] = "bogus " + lines[k]
        else:
            lines[k] = lines[k].replace("1", "0") or "gen"
        bad = tmp_path / f"bad{trial}.alg"
        bad.write_text("\n".join(lines), encoding="utf-8")
        code, _ = run_cli(["hilbert", str(bad), "-D", "4"])
        assert code in (0, 1)
        if code == 1:
            corruptions += 1
    assert corruptions >= 10  # most random corruptions must be rejected


def test_text_mode_runs():
    code, out = run_cli(["hilbert", str(ALGEBRAS / "free2.alg"), "-D", "6"])
    assert code == 0
    assert "dim A_d" in out


def test_corpus_exit_codes(monkeypatch):
    import cohprobe.cli as cli
    from cohprobe.coherence import builtin_corpus

    entries = [e for e in builtin_corpus(cli.parse_field("F32003")) if e.label == "free1"]
    monkeypatch.setattr(cli, "builtin_corpus", lambda field: entries)
    code, out = run_cli(["corpus", "-D", "8", "--json"])
    assert code == 0
    assert json.loads(out)["all_ok"] is True

    entries[0].expected_right = "GROWING"  # tamper: must be detected
    code2, out2 = run_cli(["corpus", "-D", "8", "--json"])
    assert code2 == 2
    assert json.loads(out2)["all_ok"] is False
