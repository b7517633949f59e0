import csv

import pytest

from signedcolor import coloring as col
from signedcolor import graph as gr
from signedcolor.cli import main
from signedcolor.exact import degree_demands


@pytest.fixture
def files(tmp_path):
    def make(name, g):
        path = tmp_path / name
        gr.write(g, path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "c.sg"
    assert run(capsys, "gen", "neg_cube", "-o", str(out))[0] == 0
    assert gr.read(out) == gr.neg_cube()
    code, text, _ = run(capsys, "gen", "random_subcubic", "--n", "12", "--seed", "3")
    assert code == 0 and gr.loads(text) == gr.random_subcubic(12, 3)


def test_gen_bad_params(capsys):
    assert run(capsys, "gen", "neg_cycle", "--k", "2")[0] == 1


def test_balance(files, capsys):
    code, out, _ = run(capsys, "balance", files("c5.sg", gr.generate("neg_cycle", k=5)))
    assert code == 0 and out.startswith("unbalanced") and "negative_cycle" in out
    code, out, _ = run(capsys, "balance", files("p.sg", gr.generate("pos_cycle", k=4)))
    assert out.startswith("balanced")


def test_switch(files, capsys):
    g = gr.generate("neg_cycle", k=5)
    code, out, _ = run(capsys, "switch", files("c5.sg", g), "--at", "0,2")
    assert code == 0 and gr.loads(out) == gr.switch_at(g, {0, 2})
    assert run(capsys, "switch", files("c5.sg", g), "--at", "9")[0] == 1


def test_blocks(files, capsys):
    code, out, _ = run(capsys, "blocks", files("k.sg", gr.k4_bullet()))
    assert code == 0 and "bad_block K4bullet 0,1,2,3,4" in out


def test_color_k4_minus_exact_exit_2(files, capsys):
    assert run(capsys, "color", files("k.sg", gr.k4_minus()), "--p", "5", "--q", "3", "--method", "exact")[0] == 2
    assert run(capsys, "color", files("k.sg", gr.k4_minus()), "--q", "3")[0] == 2


def test_color_k4_bullet_construct(files, tmp_path, capsys):
    out = tmp_path / "k.col"
    path = files("k.sg", gr.k4_bullet())
    assert run(capsys, "color", path, "--p", "5", "--q", "3", "--method", "construct", "-o", str(out))[0] == 0
    assert col.verify(gr.k4_bullet(), col.read(out), 3)
    code, text, _ = run(capsys, "verify", path, str(out), "--q", "3")
    assert code == 0 and text.strip() == "VALID"


def test_color_negative_five_cycle_degree(files, capsys):
    g = gr.generate("neg_cycle", k=5)
    code, out, _ = run(capsys, "color", files("c5.sg", g), "--phi", "degree", "--method", "construct")
    f = col.loads(out)
    assert code == 0 and f.sizes() == (4,) * 5 and col.verify(g, f, degree_demands(g))


def test_color_cycle_method(files, capsys):
    g = gr.generate("neg_cycle", k=7)
    code, out, _ = run(capsys, "color", files("c7.sg", g), "--q", "4", "--method", "cycle")
    assert code == 0 and col.verify(g, col.loads(out), 4)
    assert run(capsys, "color", files("c7.sg", g), "--p", "7", "--q", "7", "--method", "cycle")[0] == 2


def test_color_trace(files, capsys):
    code, _, err = run(capsys, "color", files("c.sg", gr.neg_cube()), "--phi", "degree", "--trace")
    lines = err.splitlines()
    assert code == 0 and lines and all(line.startswith("step ") for line in lines)


def test_color_bad_block_diagnostic(files, capsys):
    code, _, err = run(capsys, "color", files("k4.sg", gr.k4_minus()), "--phi", "degree")
    assert code == 1 and "K4" in err


def test_color_usage_errors(files, capsys):
    path = files("k.sg", gr.k4_bullet())
    assert run(capsys, "color", path)[0] == 1
    assert run(capsys, "color", path, "--q", "4", "--method", "construct")[0] == 1
    with pytest.raises(SystemExit) as err:
        main(["color", path, "--q", "3", "--phi", "degree"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1


def test_parse_error_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.sg"
    bad.write_text("sg 2 1\ne 0 1 x\n")
    code, _, err = run(capsys, "blocks", str(bad))
    assert code == 1 and "line 2" in err


def test_verify_invalid(files, tmp_path, capsys):
    g = gr.k4_minus()
    f = col.Coloring(5, (frozenset({1, 2, 3}),) * 4)
    cpath = tmp_path / "f.col"
    col.write(f, cpath)
    code, out, _ = run(capsys, "verify", files("k.sg", g), str(cpath))
    assert code == 2 and out.startswith("INVALID")


def test_chifb(files, tmp_path, capsys):
    cert = tmp_path / "k.cert"
    code, out, _ = run(capsys, "chifb", files("k.sg", gr.k4_bullet()), "--cert", str(cert))
    assert code == 0 and "chi_fb = 5/3" in out and "lower_bound n/beta = 5/3" in out
    assert cert.read_text().count("set ") >= 1
    code, out, _ = run(capsys, "chifb", files("c.sg", gr.neg_cube()))
    assert "chi_fb = 8/5" in out
    code, out, _ = run(capsys, "chifb", files("p.sg", gr.generate("pos_cycle", k=5)))
    assert "chi_fb = 1/1" in out


def test_chifb_cap(files, capsys, monkeypatch):
    path = files("r.sg", gr.generate("pos_cycle", k=9))
    code, _, err = run(capsys, "chifb", path, "--cap", "5")
    assert code == 1 and "--cap" in err
    monkeypatch.setenv("SG_LP_CAP", "5")
    assert run(capsys, "chifb", path)[0] == 1


def test_beta(files, capsys):
    code, out, _ = run(capsys, "beta", files("k.sg", gr.k4_bullet()))
    assert code == 0 and "beta = 3" in out


def test_audit_single_claim(tmp_path, capsys):
    code, out, _ = run(capsys, "audit-claims", "--claim", "4", "--report", str(tmp_path), "-v")
    assert code == 0 and "claim 4: PASS" in out
    rows = list(csv.DictReader((tmp_path / "audit.csv").open()))
    assert rows[0]["kind"] == "TwoTwo" and rows[0]["status"] == "PASS"
    assert (tmp_path / "audit.png").stat().st_size > 0


def test_audit_bad_claim(capsys):
    assert run(capsys, "audit-claims", "--claim", "9")[0] == 1


def test_bench_report(tmp_path, capsys):
    code, out, _ = run(capsys, "bench", "--n-min", "6", "--n-max", "10", "--step", "4", "--seeds", "2",
                       "--report", str(tmp_path))
    assert code == 0 and "0 failures" in out
    rows = list(csv.DictReader((tmp_path / "bench.csv").open()))
    assert {r["method"] for r in rows} >= {"construct"} and all(r["ok"] == "True" for r in rows)
    assert (tmp_path / "bench.png").stat().st_size > 0


def test_bench_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "bench", "--n-min", "5", "--n-max", "5", "--seeds", "1")
    assert code == 0 and "family,n,m,seed,method,ok,seconds,chi_fb" in out


def test_bench_usage(capsys):
    assert run(capsys, "bench", "--n-min", "9", "--n-max", "3")[0] == 1
