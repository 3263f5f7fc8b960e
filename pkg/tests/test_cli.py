import pytest

from friendly_partitions.certificate import Certificate
from friendly_partitions.cli import main
from friendly_partitions.graph import load_graph


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c10(tmp_path, capsys):
    path = tmp_path / "c10.txt"
    assert run(capsys, "gen", "circulant", "--n", 10, "--gens", "1,2,5", "-o", path)[0] == 0
    return path


def test_gen_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "standard", "--kind", "complete", "--size", 4)
    assert code == 0 and out.startswith("4 6\n")
    code, out, _ = run(capsys, "gen", "cayley", "--factors", "2,4", "--conn", "1:0,0:1,0:3,1:2,0:2")
    assert code == 0 and load_graph(out.strip()).is_regular(5)
    code, out, _ = run(capsys, "gen", "paley", "--q", 13)
    assert code == 0 and load_graph(out.strip()).is_regular(6)
    part = tmp_path / "p.txt"
    code, out, _ = run(capsys, "gen", "hard", "--valency", 5, "--half", 8, "--partition-out", part)
    assert code == 0 and part.read_text().startswith("0 1 2 3 4 5 6 7")


def test_gen_random_deterministic(capsys):
    a = run(capsys, "gen", "random", "--n", 30, "--d", 5, "--seed", 4)[1]
    b = run(capsys, "gen", "random", "--n", 30, "--d", 5, "--seed", 4)[1]
    assert a == b
    assert run(capsys, "gen", "random", "--n", 31, "--d", 5)[0] == 2
    assert run(capsys, "gen", "random", "--n", 100, "--d", 20, "--max-attempts", 0)[0] == 3


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "gen", "circulant", "--n", 10)[0] == 2
    assert run(capsys, "gen", "circulant", "--n", 10, "--gens", "7")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    code, _, err = run(capsys, "search", "internal", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "search", "internal", tmp_path / "missing.txt")[0] == 2


def test_search_and_check_round_trip(capsys, tmp_path):
    g = tmp_path / "g.txt"
    run(capsys, "gen", "random", "--n", 24, "--d", 5, "--seed", 1, "-o", g)
    cert = tmp_path / "g.cert"
    assert run(capsys, "search", "internal", g, "-o", cert)[0] == 0
    assert Certificate.from_text(cert.read_text()).kind == "internal-partition"
    code, out, _ = run(capsys, "check", "internal", g, cert)
    assert code == 0 and out.strip() == "valid"
    # raw partition file, 1-indexed
    cert1 = tmp_path / "g1.cert"
    run(capsys, "search", "internal", g, "--one-indexed", "-o", cert1)
    assert run(capsys, "check", "internal", g, cert1, "--one-indexed")[0] == 0


def test_exceptional_graph_exit_codes(capsys, tmp_path, c10):
    code, out, _ = run(capsys, "search", "internal", c10, "--method", "exhaustive")
    assert code == 1 and out.startswith("nonexistence")
    assert run(capsys, "search", "internal", c10, "--method", "exhaustive", "--node-cap", 2)[0] == 3
    assert run(capsys, "search", "internal", c10, "--method", "switch", "--restarts", 2)[0] == 3
    witness = tmp_path / "w.txt"
    witness.write_text("0 1 2 3 4\n*\n")
    code, out, _ = run(capsys, "check", "internal", c10, witness)
    assert code == 1 and "bad vertex 0" in out


def test_check_cohesive(capsys, tmp_path, c10):
    w = tmp_path / "w.txt"
    w.write_text("0 1 2 3 4 5\n3 4 5 6 7 8\n")
    assert run(capsys, "check", "cohesive", c10, w, "--k", 3)[0] == 0
    w.write_text("0 1 2\n")
    assert run(capsys, "check", "cohesive", c10, w, "--k", 3)[0] == 1


def test_cohesive_and_bisect(capsys, tmp_path):
    g = tmp_path / "g.txt"
    run(capsys, "gen", "random", "--n", 40, "--d", 5, "--seed", 2, "-o", g)
    code, out, _ = run(capsys, "cohesive", g, "--ban-linial")
    assert code == 0 and len(out.split()) <= 21
    assert run(capsys, "cohesive", g)[0] == 2
    assert run(capsys, "cohesive", g, "--k", 6)[0] == 1
    code, out, err = run(capsys, "bisect", g)
    assert code == 0 and err.startswith("cut=")


def test_pipeline_writes_report(capsys, tmp_path):
    g = tmp_path / "g.txt"
    run(capsys, "gen", "random", "--n", 40, "--d", 5, "--seed", 5, "-o", g)
    out_dir = tmp_path / "rep"
    code, out, _ = run(capsys, "pipeline", g, "-o", out_dir)
    assert code == 0 and out.startswith("n,seed,")
    assert (out_dir / "report.csv").read_text() == out
    assert run(capsys, "check", "cohesive", g, out_dir / "pair.cert")[0] == 0
    assert run(capsys, "pipeline", g, "-o", out_dir)[1] == out


def test_classify_and_cyclic(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "abelian", "--max-order", 10)
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "order,group,S,verdict,method,verified"
    assert sum("exceptional" in ln for ln in lines) >= 3
    code, _, err = run(capsys, "cyclic", "--n", 10, "--gens", "3,4,5")
    assert code == 1 and "C125_10" in err
    assert run(capsys, "classify", "cyclic", "--n", 16, "--gens", "1,3,8")[0] == 0
    assert run(capsys, "cyclic", "--n", 16, "--gens", "1,3,7")[0] == 2


def test_scan_and_near_complete(capsys, tmp_path):
    out_dir = tmp_path / "paley"
    assert run(capsys, "scan", "paley", "--max-q", 30, "-o", out_dir)[0] == 0
    assert (out_dir / "summary.csv").read_text().startswith("q,prime,verdict,method,verified")
    assert (out_dir / "paley_29.cert").exists()
    nc = tmp_path / "nc.txt"
    nc.write_text("6 9\n0 1\n0 2\n0 4\n1 3\n1 5\n2 3\n2 5\n3 4\n4 5\n")
    # complement is two triangles: two odd cycles, no partition
    assert run(capsys, "near-complete", nc)[0] == 1
    run(capsys, "gen", "circulant", "--n", 6, "--gens", "2,3", "-o", nc)
    code, out, _ = run(capsys, "near-complete", nc)
    assert code == 0 and out.startswith("internal-partition")


def test_output_is_byte_identical(capsys, tmp_path):
    g = tmp_path / "g.txt"
    run(capsys, "gen", "random", "--n", 50, "--d", 5, "--seed", 8, "-o", g)
    first = run(capsys, "search", "internal", g, "--seed", 3)[1]
    second = run(capsys, "search", "internal", g, "--seed", 3)[1]
    assert first == second
