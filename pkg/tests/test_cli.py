import json
import subprocess
import sys

import pytest

from pcsds.catalog import ASSET_DIR
from pcsds.cli import main

P3N36 = str(ASSET_DIR / "sds" / "p3-n36.sds")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def seqfile(tmp_path):
    def make(text, name="f.seq"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def test_verify_sds_asset(capsys):
    code, out, _ = run(capsys, "verify", P3N36)
    assert code == 0 and "constant profile 18" in out


def test_verify_roles(capsys, seqfile):
    assert run(capsys, "verify", seqfile("+++-\n"))[0] == 0
    assert run(capsys, "verify", seqfile("# role: golay\n++\n+-\n"))[0] == 0
    assert run(capsys, "verify", seqfile("# role: acs\n++\n+-\n+-\n++\n"))[0] == 0
    assert run(capsys, "verify", seqfile("# role: base m=1 n=1\n+\n+\n+\n-\n"))[0] == 0
    code, out, _ = run(capsys, "verify", seqfile("++\n++\n"))
    assert code == 1 and "shift 1" in out


def test_verify_bad_sds_names_offending_difference(capsys, seqfile):
    code, out, _ = run(capsys, "verify", seqfile("N=4 lambda=2\n0 1\n", "bad.sds"))
    assert code == 1 and "m=" in out


def test_corr_prints_periodic(capsys, seqfile):
    code, out, _ = run(capsys, "corr", seqfile("+++-\n"))
    assert code == 0 and "periodic [4,0,0,0]" in out and "aperiodic [4,1,0,-1]" in out
    code, out, _ = run(capsys, "corr", "--format", "structured", seqfile("++\n+-\n"))
    d = json.loads(out)
    assert d["periodic_sum"] == [4, 0] and d["aperiodic_sum"] == [4, 0]


def test_convert_round_trip(capsys, tmp_path):
    seq = tmp_path / "c.seq"
    assert run(capsys, "convert", P3N36, "--output", str(seq))[0] == 0
    code, out, _ = run(capsys, "convert", str(seq))
    assert code == 0 and out.splitlines()[0] == "N=36 lambda=18"
    code, out, _ = run(capsys, "convert", "--format", "structured", str(seq))
    assert json.loads(out)["lambda"] == 18


def test_parse_and_usage_errors(capsys, seqfile):
    assert run(capsys, "verify", seqfile("garbage\n"))[0] == 2
    assert run(capsys, "verify", "/nonexistent/file")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "search", "--params", "(4;3;x)")[0] == 2
    assert run(capsys, "search")[0] == 2
    assert run(capsys, "search", "--params", "(4;3;2)", "--seed", "1", "--mode", "exhaustive")[0] == 2
    assert run(capsys, "search", "--params", "(7;3;1)", "--seed", "1")[0] == 2
    assert run(capsys, "table", "--pmax", "0")[0] == 2


def test_search_exhaustive(capsys):
    code, out, _ = run(capsys, "search", "--params", "(4;3;2)")
    assert code == 0 and "found" in out and "0 1 2" in out
    code, out, _ = run(capsys, "search", "--pcs", "2", "6", "--format", "structured")
    assert code == 0 and json.loads(out)["status"] == "exhausted-none"


def test_search_budget_refusal(capsys):
    code, _, err = run(capsys, "search", "--params", "(40;19,18,15;22)", "--no-prune", "--budget", "100")
    assert code == 3 and "estimated" in err


def test_search_seed_implies_stochastic_and_is_byte_identical(capsys):
    args = ("search", "--params", "(12;5,4,4;4)", "--seed", "3", "--format", "structured")
    code, a, _ = run(capsys, *args)
    assert code == 0
    d = json.loads(a)
    assert d["config"]["mode"] == "stochastic" and d["status"] == "found"
    assert run(capsys, *args)[1] == a


def test_search_progress_to_stderr(capsys):
    code, out, err = run(capsys, "search", "--params", "(36;15,15,15;18)", "--seed", "0",
                         "--budget", "30000", "--progress-interval", "10000")
    assert code == 0 and "budget-exhausted" in out
    assert err.count("evaluations=") >= 2 and "best_fitness=" in err


def test_search_request_file(capsys, tmp_path):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({"parameters": "(4;3;2)", "config": {"mode": "stochastic", "seed": 2}}))
    code, out, _ = run(capsys, "search", "--request", str(req), "--format", "structured")
    assert code == 0 and json.loads(out)["config"]["seed"] == 2


def test_table_and_catalog(capsys):
    code, out, _ = run(capsys, "table", "--pmax", "12", "--nmax", "50")
    assert code == 0
    row5 = next(l for l in out.splitlines() if l.split() and l.split()[0] == "5")
    marks = row5.split()[1:]
    assert [N for N, g in enumerate(marks, 1) if g != "."] == [1] + list(range(4, 51, 4))
    a = run(capsys, "table", "--format", "structured")[1]
    assert a == run(capsys, "table", "--format", "structured")[1]
    code, out, _ = run(capsys, "catalog", "--p", "3", "--n", "20")
    assert code == 0 and "not-exists-cited" in out
    code, out, _ = run(capsys, "catalog", "--p", "1", "--n", "4", "--show", "--format", "structured")
    assert json.loads(out)[0]["witness"]


def test_catalog_contradiction_exit_code(capsys, monkeypatch):
    import pcsds.catalog as cat
    from pcsds.errors import CatalogContradiction

    def boom(*a, **k):
        raise CatalogContradiction("test")

    monkeypatch.setattr(cat, "load_catalog", boom)
    assert run(capsys, "catalog")[0] == 4


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pcsds", "verify", P3N36], capture_output=True, text=True)
    assert r.returncode == 0 and "constant profile 18" in r.stdout
