import json

from timecredits.cli import main
from timecredits.recurrence import save_spec
from timecredits.algorithms.sorting import merge_sort_recurrence


def test_run_merge_sort_ok(capsys):
    code = main(["run", "merge_sort", "--sizes", "0,16", "--trials", "2"])
    out = capsys.readouterr().out
    assert code == 0
    lines = [l for l in out.strip().splitlines() if not l.startswith("#")]
    assert lines[0].split(",")[:4] == ["n", "trial", "cost", "bound"]
    assert len(lines) == 1 + 4  # header plus 2 sizes x 2 trials
    # the n = 0 rows show the exact base cost
    zero_rows = [l for l in lines[1:] if l.startswith("0,")]
    assert all(row.split(",")[2] == "2" and row.split(",")[3] == "2" for row in zero_rows)


def test_run_unknown_algorithm(capsys):
    code = main(["run", "nosuch"])
    assert code == 2
    assert "unknown algorithm" in capsys.readouterr().err


def test_run_bad_sizes(capsys):
    assert main(["run", "merge_sort", "--sizes", "abc"]) == 2
    assert main(["run", "merge_sort", "--sizes", "-4"]) == 2


def test_run_deterministic_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["run", "select", "--sizes", "64", "--trials", "3", "--seed", "7",
                 "--out", str(a)]) == 0
    assert main(["run", "select", "--sizes", "64", "--trials", "3", "--seed", "7",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_markdown_format(capsys):
    code = main(["run", "binary_search", "--sizes", "8", "--trials", "1",
                 "--format", "markdown"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("| n")
    assert "|---" in out.splitlines()[1]


def test_recurrence_builtin_karatsuba(capsys):
    code = main(["recurrence", "--builtin", "karatsuba"])
    out = capsys.readouterr().out
    assert code == 0
    p_line = next(l for l in out.splitlines() if "exponent" in l)
    assert abs(float(p_line.split("=")[1]) - 1.5849625007) < 1e-6
    assert "bottom-heavy" in out
    assert "pass" in out


def test_recurrence_builtin_merge_sort(capsys):
    code = main(["recurrence", "--builtin", "merge_sort"])
    out = capsys.readouterr().out
    assert code == 0
    assert "balanced" in out
    assert "Theta(n ln n)" in out


def test_recurrence_spec_file(tmp_path, capsys):
    path = tmp_path / "spec.json"
    save_spec(merge_sort_recurrence(), path)
    code = main(["recurrence", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "balanced" in out
    # file-loaded specs have no concrete toll; the empirical pass is skipped
    assert "skipped" in out


def test_recurrence_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["recurrence", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    assert main(["recurrence", str(missing)]) == 2
    assert main(["recurrence"]) == 2


def test_recurrence_poly_toll_roundtrip(tmp_path, capsys):
    path = tmp_path / "ms.json"
    data = {
        "name": "merge_sort_time",
        "x0": 2,
        "terms": [
            {"a": "1", "b": "1/2", "round": "floor"},
            {"a": "1", "b": "1/2", "round": "ceil"},
        ],
        "g_class": [1, 0],
        "g_poly": {"1": 4, "0": 4},
        "base": {"0": 2, "1": 2},
    }
    path.write_text(json.dumps(data))
    code = main(["recurrence", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "balanced" in out and "pass" in out


def test_amortized_dynarray(capsys):
    code = main(["amortized", "dynarray", "--ops", "2000", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "per-op inequality: pass" in out
    assert "telescoped inequality: pass" in out
    assert "K = 4" in out


def test_amortized_insufficient_multiplier(capsys):
    code = main(["amortized", "splay_tree", "--ops", "200", "--seed", "1",
                 "--multiplier", "1"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out
    assert "replay" in out


def test_amortized_ledger_file(tmp_path, capsys):
    path = tmp_path / "ledger.csv"
    code = main(["amortized", "skew_heap", "--ops", "500", "--seed", "2",
                 "--out", str(path)])
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert lines[1] == "op,n,f_t,f_at,P_before,P_after,slack"
    assert len(lines) == 502


def test_report_all_pass(capsys):
    code = main(["report", "--trials", "1", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 0
    body = [l for l in out.splitlines() if l.startswith("|") and "---" not in l]
    assert len(body) == 1 + 9
    assert all("pass" in row for row in body[1:])


def test_report_fault_injection_fails(monkeypatch, capsys):
    """An off-by-one in one runtime function makes its report row fail."""
    import timecredits.cli as cli_mod
    from timecredits.algorithms import all_bundles

    def faulted_bundles():
        bundles = all_bundles()
        weak = dict(bundles["merge_sort"].consts)
        weak["base"] -= 1
        bundles["merge_sort"] = bundles["merge_sort"].with_consts(weak)
        return bundles

    monkeypatch.setattr(cli_mod, "all_bundles", faulted_bundles)
    code = main(["report", "--trials", "1", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 1
    merge_row = next(l for l in out.splitlines() if "merge_sort" in l)
    assert "FAIL" in merge_row


def test_recurrence_rejects_out_of_range_ratio(tmp_path):
    bad = tmp_path / "bad_b.json"
    bad.write_text(
        json.dumps(
            {
                "x0": 2,
                "terms": [{"a": "1", "b": "3/2", "round": "ceil"}],
                "g_class": [1, 0],
                "base": {},
            }
        )
    )
    assert main(["recurrence", str(bad)]) == 2


def test_report_csv_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["report", "--trials", "1", "--seed", "3", "--format", "csv",
                 "--out", str(a)]) == 0
    assert main(["report", "--trials", "1", "--seed", "3", "--format", "csv",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
