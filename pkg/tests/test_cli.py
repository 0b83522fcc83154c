import json

from masscut.cli import run


def test_gen_solve_verify_pipeline(tmp_path, capsys):
    inst = tmp_path / "sym.json"
    cuts = tmp_path / "cuts.json"
    assert run(["gen", "--kind", "symmetric", "--d", "2", "--n", "400", "--seed", "3", "-o", str(inst)]) == 0
    assert run([
        "solve", "--instance", str(inst), "--h", "2", "--strategy", "auto",
        "--seed", "1", "--tol", "0", "--boundary-budget", "0", "-o", str(cuts),
    ]) == 0
    assert run([
        "verify", "--instance", str(inst), "--cuts", str(cuts),
        "--tol", "0", "--boundary-budget", "0",
    ]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "mass 0: imbalance" in out


def test_bounds_value_and_chain(capsys):
    assert run(["bounds", "--h", "5", "--m", "2"]) == 0
    assert capsys.readouterr().out.strip() == "15"
    assert run(["bounds", "--h", "2", "--m", "5", "--show-chain"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "8"
    assert out[1].startswith("Base[MVZ")


def test_bounds_cap_factor_flag(capsys):
    assert run(["bounds", "--h", "6", "--m", "4", "--cap-factor", "4"]) == 0
    assert capsys.readouterr().out.strip() == "60"


def test_solve_failure_exits_one_but_writes_cuts(tmp_path, capsys):
    inst = tmp_path / "line.json"
    cuts = tmp_path / "cuts.json"
    assert run(["gen", "--kind", "grid", "--d", "1", "--n", "10", "--m", "1", "-o", str(inst)]) == 0
    code = run([
        "solve", "--instance", str(inst), "--h", "2", "--strategy", "direct",
        "--seed", "0", "--tol", "0", "--boundary-budget", "0", "--restarts", "4", "-o", str(cuts),
    ])
    assert code == 1
    assert cuts.exists()
    out = capsys.readouterr().out
    assert "converged: False" in out


def test_verify_failure_exit_code(tmp_path, capsys):
    inst = tmp_path / "sym.json"
    bad_cuts = tmp_path / "bad.json"
    run(["gen", "--kind", "symmetric", "--d", "2", "--n", "64", "--seed", "1", "-o", str(inst)])
    bad_cuts.write_text(json.dumps({
        "dim": 2,
        "planes": [{"normal": [1.0, 0.0], "offset": 10.0}, {"normal": [0.0, 1.0], "offset": 0.0}],
    }))
    assert run(["verify", "--instance", str(inst), "--cuts", str(bad_cuts), "--tol", "0"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_dump_csv(tmp_path, capsys):
    inst = tmp_path / "sym.json"
    cuts = tmp_path / "cuts.json"
    dump = tmp_path / "measures.csv"
    run(["gen", "--kind", "symmetric", "--d", "2", "--n", "64", "--seed", "1", "-o", str(inst)])
    run(["solve", "--instance", str(inst), "--h", "2", "--seed", "0", "--tol", "0",
         "--boundary-budget", "0", "-o", str(cuts)])
    assert run(["verify", "--instance", str(inst), "--cuts", str(cuts), "--tol", "0",
                "--boundary-budget", "0", "--dump-csv", str(dump)]) == 0
    lines = dump.read_text().strip().splitlines()
    assert lines[0] == "mass,label,measure"
    assert any(line.startswith("0,boundary,") for line in lines)
    assert len(lines) == 1 + 4 + 1  # header, four orthants, boundary row


def test_trace_flag_emits_json(tmp_path, capsys):
    inst = tmp_path / "line.json"
    run(["gen", "--kind", "grid", "--d", "1", "--n", "10", "--m", "1", "-o", str(inst)])
    assert run(["solve", "--instance", str(inst), "--h", "1", "--strategy", "lemma2",
                "--seed", "0", "--tol", "1e-2", "--ball-n", "1024",
                "--eps-schedule", "0.1,0.03", "--trace"]) == 0
    out = capsys.readouterr().out
    payload = out[out.index("["):]
    trace = json.loads(payload)
    assert trace[0]["strategy"] == "lemma2"
    assert trace[0]["lifted"] == {"d": 2, "h": 1, "m": 2}


def test_table_csv_output(tmp_path, capsys):
    out_file = tmp_path / "table.csv"
    assert run(["table", "--h-max", "2", "--m-max", "3", "--format", "csv", "-o", str(out_file)]) == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "h,m,value,chain"
    assert len(lines) == 7


def test_table_text_stdout(capsys):
    assert run(["table", "--h-max", "1", "--m-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "h\\m" in out


def test_usage_errors_exit_two(tmp_path, capsys):
    assert run(["bogus"]) == 2
    assert run(["bounds", "--h", "5"]) == 2
    assert run(["solve", "--instance", str(tmp_path / "missing.json"), "--h", "1"]) == 2
    assert run(["gen", "--kind", "symmetric", "--d", "2", "--n", "64", "--m", "3",
                "-o", str(tmp_path / "x.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "--instance", str(bad), "--cuts", str(bad), "--tol", "0"]) == 2
    capsys.readouterr()


def test_gen_gaussian_multi_mass(tmp_path):
    inst = tmp_path / "pair.json"
    assert run(["gen", "--kind", "gaussian", "--d", "2", "--n", "50", "--m", "2",
                "--seed", "5", "-o", str(inst)]) == 0
    payload = json.loads(inst.read_text())
    assert payload["dim"] == 2 and len(payload["masses"]) == 2
    assert payload["metadata"]["generator"] == "gaussian"


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()
