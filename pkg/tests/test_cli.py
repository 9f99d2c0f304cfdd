import json

import pytest

from exact_lattice.cli import main
from exact_lattice.config import ENV_VAR, Config, load_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def results(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)["results"]


def test_dvr_closed_sets_count(capsys):
    code, res = results(capsys, "dvr", "closed-sets", "--N", "1")
    assert code == 0 and res["count"] == 4


def test_global_flags_before_or_after_subcommand(capsys):
    assert results(capsys, "--N", "2", "dvr", "closed-sets")[1]["count"] == 8
    assert results(capsys, "dvr", "closed-sets", "--N", "2")[1]["count"] == 8


def test_enomoto_classify_summary(capsys):
    code, out = run(capsys, "enomoto", "--model", "a3", "--classify", "--format", "text")
    assert code == 0 and out.strip() == "7 hereditary, 1 of gldim 2"
    code, res = results(capsys, "enomoto", "enumerate", "--dot")
    assert res["count"] == 8 and res["dot"].count("->") == 12


def test_json_is_deterministic(capsys):
    a = run(capsys, "enomoto", "classify")[1]
    b = run(capsys, "enomoto", "classify")[1]
    assert a == b
    d = json.loads(a)
    assert list(d) == sorted(d)


def test_dvr_subcommands(capsys):
    assert results(capsys, "dvr", "ext", "--m", "3", "--l", "2")[1]["order"] == 4
    assert results(capsys, "dvr", "rad", "--m", "3", "--l", "2", "--n", "1")[1]["order"] == 2
    res = results(capsys, "dvr", "membership", "--m", "2", "--l", "2", "--class", "1", "--L", "2")[1]
    assert res["middle"] == "R/P^4" and res["member"] is False
    res = results(capsys, "dvr", "closure", "--points", "1,2", "--N", "3", "--infinite-tail")[1]
    assert res["closure"] == {"finite": [1, 2], "adic": True}
    assert results(capsys, "dvr", "gldim", "--L", "1,3")[1]["gldim"]["display"] == "Infinite"
    code, res = results(capsys, "dvr", "lattice", "--N", "2")
    assert code == 0 and len(res["nodes"]) == 8 and res["order_reversal_violations"] == 0


def test_dedekind_subcommands(capsys):
    res = results(capsys, "dedekind", "ext", "--X", "Z/4+Z/9", "--Y", "Z/8+Z/3", "--primes", "2,3",
                  "--M", "2", "--n", "2=1")[1]
    assert res["order"] == 12 and res["structure_order"] == 6
    assert results(capsys, "dedekind", "closed-sets", "--primes", "2", "--N", "1")[1]["count"] > 0


def test_kronecker_subcommands(capsys):
    assert results(capsys, "kronecker", "hom", "--X", "(1,0)", "--Y", "(2,1)")[1]["hom"] == 2
    assert results(capsys, "kronecker", "ext", "--X", "(0,1)", "--Y", "(1,0)")[1]["ext"] == 2
    res = results(capsys, "kronecker", "indec", "--label", "S_2[2]")[1]
    assert res["indecomposables"][0]["dimv"] == [2, 2]
    res = results(capsys, "kronecker", "closed-check", "--descr", '{"generic": true, "M": [0], "inf_P": true}')[1]
    assert res["closed"] is False and res["violations"][0]["rule"] == "c1"
    code, out = run(capsys, "kronecker", "ext-table", "--dim-bound", "2,2", "--format", "text")
    assert code == 0 and out.splitlines()[-1].startswith("Q") and "Zero" in out.splitlines()[-1]
    res = results(capsys, "kronecker", "typeII", "--H", "(0,1);(1,2);(3,4)", "--probe", "(4,5)")[1]
    assert res["coresolutions"][0]["idim"] == 2


def test_functor_subcommands(capsys):
    code, res = results(capsys, "functor", "gldim-identity")
    assert code == 0 and res["values"] == [1, 1, 0]
    res = results(capsys, "functor", "induce", "--functor", "t")[1]
    assert res["valid"] and res["equals_torsion_structure"] and res["exactness"]["kind"] == "left-exact"
    assert results(capsys, "functor", "torsion")[1]["pair"]["hereditary"] is True


def test_verify_suite_text(capsys):
    code, out = run(capsys, "verify", "--suite", "functor", "--format", "text")
    assert code == 0 and out.startswith("[PASS] criterion-9")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dvr"])
    assert exc.value.code == 2
    assert main(["kronecker", "hom", "--X", "(3,3)"]) == 2
    assert main(["--dim-bound", "0,3", "kronecker", "indec"]) == 2
    assert main(["kronecker", "typeII"]) == 2
    capsys.readouterr()


def test_csv_and_out_file(capsys, tmp_path):
    out = tmp_path / "ext.csv"
    assert main(["dvr", "ext", "--m", "1", "--l", "1", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "class,label,middle" and len(lines) == 3


def test_config_file_and_env(tmp_path, monkeypatch):
    assert Config().to_json()["dim_bound"] == [6, 6]
    f = tmp_path / "c.json"
    f.write_text('{"q": 7, "dim-bound": [3, 3]}')
    monkeypatch.setenv(ENV_VAR, str(f))
    cfg = load_config()
    assert cfg.q == 7 and cfg.dim_bound == (3, 3) and cfg.p == 2
    assert load_config(q=11).q == 11
    y = tmp_path / "c.yaml"
    y.write_text("N: 3\nformat: text\n")
    assert load_config(y).N == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 1}')
    with pytest.raises(ValueError):
        load_config(bad)
    with pytest.raises(ValueError):
        Config(format="xml")
