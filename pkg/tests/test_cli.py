import pytest

from eqgc import cli, verify


def run(argv):
    return cli.main(argv)


def test_expt1_csv(tmp_path):
    out = tmp_path / "e1.csv"
    assert run(["expt1", "--points", "5", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "alpha,k,prob_g1,prob_g2,accuracy"
    assert len(lines) == 1 + 5 * 7
    rows = [ln.split(",") for ln in lines[1:]]
    # per-alpha distributions are normalized
    for i in range(5):
        block = rows[7 * i : 7 * (i + 1)]
        assert abs(sum(float(r[2]) for r in block) - 1.0) < 1e-9
        assert abs(sum(float(r[3]) for r in block) - 1.0) < 1e-9
    # grid ends hit alpha = ±pi with accuracy 0.625; midpoint alpha = 0 gives 0.5
    assert abs(float(rows[0][4]) - 0.625) < 1e-9
    assert abs(float(rows[-1][4]) - 0.625) < 1e-9
    assert abs(float(rows[14][4]) - 0.5) < 1e-9


def test_expt1_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["expt1", "--points", "3", "--out", str(a)])
    run(["expt1", "--points", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_expt2_smoke_and_determinism(tmp_path):
    out1, out2 = tmp_path / "m1.csv", tmp_path / "m2.csv"
    argv = ["expt2", "--depths", "1", "--seeds", "1", "--epochs", "2"]
    assert run(argv + ["--out", str(out1)]) == 0
    assert run(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "depth,seed,epoch,loss,train_ss,train_ms,eval_ss,eval_ms,grad_norm"
    assert len(lines) == 1 + 3  # epochs 0..2
    first = lines[1].split(",")
    assert first[0] == "1" and first[1] == "0" and first[2] == "0"


def test_expt2_depth_range_parsing(tmp_path):
    out = tmp_path / "m.csv"
    assert run(["expt2", "--depths", "1-2", "--seeds", "1", "--epochs", "1", "--out", str(out)]) == 0
    depths = {ln.split(",")[0] for ln in out.read_text().splitlines()[1:]}
    assert depths == {"1", "2"}


def test_dims_csv(tmp_path):
    out = tmp_path / "dims.csv"
    assert run(["dims", "--n-max", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,s,full_dim,diag_dim,rank_verified"
    table = {tuple(ln.split(",")[:2]): ln.split(",") for ln in lines[1:]}
    assert table[("3", "2")][2] == "20"  # C(6,3)
    assert table[("3", "2")][4] == "yes"
    assert table[("4", "2")][3] == "5"
    assert table[("2", "3")][3] == "6"
    assert table[("2", "3")][2] == ""  # full dimension only tabulated for s=2


def test_dims_rejects_large_n(capsys):
    assert run(["dims", "--n-max", "13", "--out", "/dev/null"]) == 2


def test_parity_csv(tmp_path):
    out = tmp_path / "p.csv"
    assert run(["parity", "--n", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,bitstring,prob"
    assert [ln.split(",")[1] for ln in lines[1:]] == ["001", "010", "100", "111"]
    assert all(abs(float(ln.split(",")[2]) - 0.25) < 1e-12 for ln in lines[1:])


def test_parity_rejects_bad_n():
    assert run(["parity", "--n", "0", "--out", "/dev/null"]) == 2


def test_verify_exit_codes(monkeypatch, capsys):
    ok = [verify.CheckResult("s", "fine", True, 1e-9)]
    monkeypatch.setattr(verify, "all_suites", lambda seed, tol=None: ok)
    assert run(["verify"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] s: fine" in out and "1/1 checks passed" in out

    bad = ok + [verify.CheckResult("s", "broken", False, 1e-9, "witness gate 7")]
    monkeypatch.setattr(verify, "all_suites", lambda seed, tol=None: bad)
    assert run(["verify"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] s: broken" in out and "witness gate 7" in out


def test_verify_report_file(tmp_path, monkeypatch):
    monkeypatch.setattr(verify, "all_suites", lambda seed, tol=None: [verify.CheckResult("s", "fine", True, 1e-9)])
    out = tmp_path / "report.txt"
    assert run(["verify", "--report", "--out", str(out)]) == 0
    assert "[PASS] s: fine" in out.read_text()


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("points = 3\nout = " + str(tmp_path / "cfg.csv") + "\n")
    assert run(["--config", str(cfg), "expt1"]) == 0
    assert (tmp_path / "cfg.csv").exists()
    lines = (tmp_path / "cfg.csv").read_text().splitlines()
    assert len(lines) == 1 + 3 * 7

    override = tmp_path / "override.csv"
    assert run(["--config", str(cfg), "expt1", "--out", str(override)]) == 0
    assert override.exists()


def test_config_file_missing(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--config", "/nonexistent/x.cfg", "expt1"])
    assert exc.value.code == 2


def test_unwritable_out_path():
    with pytest.raises(SystemExit):
        run(["parity", "--n", "3", "--out", "/nonexistent-dir/x.csv"])


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_twelve_significant_digits(tmp_path):
    out = tmp_path / "p.csv"
    run(["parity", "--n", "5", "--out", str(out)])
    probs = {ln.split(",")[2] for ln in out.read_text().splitlines()[1:]}
    assert probs == {"0.0625"}
    assert cli._fmt(1 / 3) == "0.333333333333"
