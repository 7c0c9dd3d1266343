import io
import json
import subprocess
import sys

import pytest

from cyclokappa.cache import ENV_VAR, SCHEMA_VERSION, ResultCache
from cyclokappa.cli import CSV_FIELDS, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE, compute_kappas, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def csv_rows(text):
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_FIELDS)
    return [line.split(",") for line in lines[1:]]


def test_kappa_range_csv():
    code, text = run("kappa", "--from", "3", "--to", "30")
    assert code == EXIT_OK
    rows = csv_rows(text)
    assert [int(r[0]) for r in rows] == list(range(3, 31))
    pairs = {",".join(r[:2]) for r in rows}
    assert {"25,5", "27,0"} <= pairs


def test_kappa_N1():
    code, text = run("kappa", "--N", "1")
    assert code == EXIT_OK and csv_rows(text)[0][:2] == ["1", "0"]


def test_kappa_N_lists():
    _, a = run("kappa", "--N", "6,8", "--N", "9", "--stable")
    assert [r[0] for r in csv_rows(a)] == ["6", "8", "9"]


def test_large_cap():
    code, _ = run("kappa", "--N", "201")
    assert code == EXIT_USAGE
    code, text = run("kappa", "--N", "121", "--allow-large")
    assert code == EXIT_OK and csv_rows(text)[0][:2] == ["121", "330"]


def test_usage_errors():
    assert run("kappa")[0] == EXIT_USAGE
    assert run("kappa", "--from", "5")[0] == EXIT_USAGE
    assert run("kappa", "--from", "9", "--to", "3")[0] == EXIT_USAGE
    assert run("kappa", "--N", "0")[0] == EXIT_USAGE
    assert run("kappa", "--N", "5", "--threads", "0")[0] == EXIT_USAGE
    assert run("bogus")[0] == EXIT_USAGE
    assert run("kappa", "--format", "xml", "--N", "5")[0] == EXIT_USAGE


def test_json_and_table_formats():
    _, text = run("kappa", "--N", "25,6", "--format", "json")
    objs = [json.loads(line) for line in text.strip().split("\n")]
    assert [set(o) for o in objs] == [set(CSV_FIELDS)] * 2
    assert [(o["N"], o["kappa"]) for o in objs] == [(25, 5), (6, 0)]
    _, text = run("kappa", "--N", "25", "--format", "table")
    lines = text.strip().split("\n")
    assert lines[0].split() == CSV_FIELDS and set(lines[1]) <= {"-", " "}
    assert lines[2].split()[:2] == ["25", "5"]


def test_diff_mode():
    code, text = run("kappa", "--from", "20", "--to", "30", "--diff")
    assert code == EXIT_OK
    from cyclokappa.kappa import load_table1

    n = sum(1 for N in load_table1() if 20 <= N <= 30)
    assert n == 9
    assert f"compared {n} values against the table, 0 mismatches" in text


def test_diff_reports_mismatch(monkeypatch):
    from cyclokappa import kappa as km

    monkeypatch.setattr(km, "load_table1", lambda: {25: 4})
    code, text = run("kappa", "--N", "25", "--diff")
    assert code == EXIT_FALSIFIED
    assert "MISMATCH N=25: computed 5, table 4" in text


def test_conjectures_flag():
    code, text = run("kappa", "--N", "49,34,35", "--conjectures", "--stable")
    assert code == EXIT_OK
    assert "N=49 [p^2]: predicted 35, computed 35, holds" in text
    assert "N=34 [qp]: predicted 1, computed 1, holds" in text
    assert "N=35: no conjecture covers this N" in text


def test_csv_byte_stable_across_threads():
    args = ["kappa", "--from", "20", "--to", "44", "--stable"]
    _, one = run(*args, "--threads", "1")
    _, four = run(*args, "--threads", "4")
    _, again = run(*args, "--threads", "4")
    assert one == four == again


def test_verify_unipotence():
    code, text = run("verify", "unipotence", "--p", "3", "--M", "1", "--k", "3", "--d", "2")
    assert code == EXIT_OK
    assert text.startswith("unipotence N=9") and "pass, index" in text


def test_verify_surjectivity():
    code, text = run("verify", "surjectivity", "--N", "5", "--k", "2", "--d", "2")
    assert code == EXIT_FALSIFIED
    assert text.strip() == "cokernel 1, P(5,2,2) fails"
    code, text = run("verify", "surjectivity", "--N", "9", "--k", "2", "--d", "2")
    assert code == EXIT_OK and "holds" in text
    assert run("verify", "surjectivity", "--N", "5", "--k", "1", "--d", "2")[0] == EXIT_USAGE
    assert run("verify", "surjectivity", "--N", "5")[0] == EXIT_USAGE


def test_verify_dual():
    code, text = run("verify", "dual", "--p", "2", "--q", "17")
    assert code == EXIT_OK and "kernel 1 == kappa 1" in text
    code, text = run("verify", "dual", "--p", "17", "--q", "2")
    assert code == EXIT_OK and "1 witnesses (n_q(p)-1 = 1) verified" in text
    assert run("verify", "dual", "--p", "5", "--q", "5")[0] == EXIT_USAGE
    assert run("verify", "dual", "--p", "5")[0] == EXIT_USAGE


def test_verify_special_shape_diagnostic(capsys):
    code, _ = run("verify", "basis", "--N", "10")
    assert code == EXIT_USAGE
    assert "q*p^M" in capsys.readouterr().err
    assert run("verify", "unipotence", "--p", "5", "--M", "1")[0] == EXIT_USAGE


def test_verify_json_report():
    code, text = run("verify", "decomposition", "--N", "9", "--k", "2", "--d", "2", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(text.strip().split("\n")[-1])
    assert report == [{"suite": "decomposition", "N": 9, "k": 2, "d": 2, "pass": True, "detail": "pass"}]


def test_coproduct_command(capsys):
    code, text = run("coproduct", "I(0; e1, e2; 1)", "--N", "5")
    assert code == EXIT_OK
    assert text.strip().split("\n") == [
        "1 ⊗ I(0; e1, e2; 1)",
        "+ I(0; e1; e2) ⊗ I(0; e2; 1)",
        "+ I(e1; e2; 1) ⊗ I(0; e1; 1)",
        "+ I(0; e1, e2; 1) ⊗ 1",
    ]
    assert run("coproduct", "I(0; 0, 0; 1)", "--N", "5")[1] == "0\n"
    assert run("coproduct", "I(0; ; 1)", "--N", "5")[1].replace(" ", "") == "1⊗1\n"
    code, _ = run("coproduct", "I(0; e7; 1)", "--N", "5")
    assert code == EXIT_USAGE
    assert "position 5" in capsys.readouterr().err
    assert run("coproduct", "I(0; e1; 1)")[0] == EXIT_USAGE


def test_cache_round_trip(tmp_path):
    path = tmp_path / "c.jsonl"
    Ns = list(range(21, 41))
    fresh = compute_kappas(Ns)
    cache = ResultCache(path)
    first = compute_kappas(Ns, cache=cache)
    assert len(ResultCache(path)) == 20
    again = compute_kappas(Ns, cache=ResultCache(path))
    strip = lambda rows: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rows]
    assert strip(fresh) == strip(first) == strip(again)
    assert again == first
    lines = path.read_text().strip().split("\n")
    rec = json.loads(lines[0])
    assert rec["schema_version"] == SCHEMA_VERSION and rec["command"] == "kappa"
    assert {"parameters", "result", "software_version", "timestamp"} <= set(rec)


def test_cache_skips_bad_lines(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('not json\n{"schema_version": 99}\n')
    c = ResultCache(path)
    assert len(c) == 0 and c.skipped == 2


def test_cache_commands_and_env(tmp_path, monkeypatch):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv(ENV_VAR, str(path))
    assert run("kappa", "--N", "25")[0] == EXIT_OK
    assert path.exists()
    code, text = run("cache", "stats")
    assert code == EXIT_OK and "1 records" in text
    assert run("cache", "path")[1].strip() == str(path)
    assert csv_rows(run("cache", "show")[1])[0][:2] == ["25", "5"]
    other = tmp_path / "flag.jsonl"
    run("kappa", "--N", "6", "--cache", str(other))
    assert len(ResultCache(other)) == 1 and len(ResultCache(path)) == 1
    assert run("cache", "clear")[0] == EXIT_OK and not path.exists()
    monkeypatch.delenv(ENV_VAR)
    assert run("cache", "stats")[0] == EXIT_USAGE


def test_console_script_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "cyclokappa.cli", "kappa", "--N", "25", "--stable"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0
    assert r.stdout.split("\n")[1].startswith("25,5,")
    r = subprocess.run([sys.executable, "-m", "cyclokappa.cli", "kappa"], capture_output=True, text=True)
    assert r.returncode == 2
