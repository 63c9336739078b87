"""End-to-end command-line behavior and file round-trips."""

import json

import pytest

from qca.cli import main
from qca.kronecker import a11_seed
from qca.laurent import parse_laurent
from qca.seed import load_seed, save_seed
from qca.torus import TorusElement


@pytest.fixture()
def a11_file(tmp_path):
    path = tmp_path / "a11.json"
    save_seed(a11_seed(), str(path))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_seed_check(a11_file, capsys):
    code, out = run(capsys, "seed", "check", a11_file)
    assert code == 0
    assert "valid" in out and "acyclic" in out
    assert "compatible orders: [1,2]" in out


def test_seed_check_invalid(tmp_path, capsys):
    bad = dict(m=2, n=2, B=[[0, -2], [2, 0]], Lambda=[[0, 5], [-5, 0]], d=[2, 2])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out = run(capsys, "seed", "check", str(path))
    assert code == 1
    assert "INVALID" in out


def test_seed_mutate(a11_file, tmp_path, capsys):
    out_path = str(tmp_path / "mut.json")
    code, _ = run(capsys, "seed", "mutate", a11_file, "-k", "1", "-o", out_path)
    assert code == 0
    mutated = load_seed(out_path)
    assert mutated.btilde == ((0, 2), (-2, 0))


def test_seed_principal_and_double(tmp_path, capsys):
    bfile = tmp_path / "b.json"
    bfile.write_text("[[0,-1],[1,0]]")
    out_path = str(tmp_path / "p.json")
    code, _ = run(capsys, "seed", "principal", "--B", str(bfile), "--d", "1,1", "-o", out_path)
    assert code == 0
    seed = load_seed(out_path)
    assert seed.m == 4 and seed.n == 2
    dbl_path = str(tmp_path / "d.json")
    code, _ = run(capsys, "seed", "double", out_path, "-o", dbl_path)
    assert code == 0
    assert load_seed(dbl_path).m == 8


def test_basis_c_output(a11_file, tmp_path, capsys):
    elt_path = str(tmp_path / "c.json")
    exp_path = str(tmp_path / "c_exp.json")
    code, out = run(
        capsys,
        "basis",
        "c",
        a11_file,
        "--a=-1,-1",
        "--no-cache",
        "-o",
        elt_path,
        "--expansion-out",
        exp_path,
    )
    assert code == 0
    assert "C = E(-1,-1) - v^4 E(1,1)" in out
    # Emitted element file re-parses to the computed element.
    records = json.loads(open(elt_path).read())
    seed = a11_seed()
    element = TorusElement.from_records(seed.form(), records)
    from qca.ebasis import EBasis
    from qca.lusztig import TriangularTable

    assert element == TriangularTable(EBasis(seed)).element((-1, -1))
    expansion = json.loads(open(exp_path).read())
    parsed = {tuple(rec["a"]): parse_laurent(rec["coeff"]) for rec in expansion}
    assert set(parsed) == {(-1, -1), (1, 1)}


def test_basis_e_single_monomial(a11_file, capsys):
    code, out = run(capsys, "basis", "e", a11_file, "--a=1,1", "--no-cache")
    assert code == 0
    assert "E = E(1,1)" in out
    assert "X^(1,1)" in out


def test_basis_cache_hit(a11_file, tmp_path, capsys):
    cache = str(tmp_path / "cache")
    code, out = run(capsys, "basis", "c", a11_file, "--a=-2,-2", "--cache", cache)
    assert code == 0 and "cached: no" in out
    code, out = run(capsys, "basis", "c", a11_file, "--a=-2,-2", "--cache", cache)
    assert code == 0 and "cached: yes" in out


def test_verify_kronecker(capsys):
    code, out = run(capsys, "verify", "kronecker", "--rmax", "2", "--box", "2")
    assert code == 0
    assert out.count("PASS") == 3


def test_verify_rank2_principal(capsys):
    code, out = run(capsys, "verify", "rank2-principal", "--b", "1", "--c", "1", "--box", "1")
    assert code == 0
    assert "PASS" in out


def test_verify_compare_bases(tmp_path, capsys):
    bfile = tmp_path / "b.json"
    bfile.write_text("[[0,-1],[1,0]]")
    seed_path = str(tmp_path / "p.json")
    run(capsys, "seed", "principal", "--B", str(bfile), "--d", "1,1", "-o", seed_path)
    code, out = run(capsys, "verify", "compare-bases", "--seed", seed_path, "--window", "1")
    assert code == 0
    assert "PASS" in out


def test_verify_compare_bases_parallel(tmp_path, capsys):
    bfile = tmp_path / "b.json"
    bfile.write_text("[[0,-1],[1,0]]")
    seed_path = str(tmp_path / "p.json")
    run(capsys, "seed", "principal", "--B", str(bfile), "--d", "1,1", "-o", seed_path)
    code, out = run(
        capsys,
        "verify",
        "compare-bases",
        "--seed",
        seed_path,
        "--window",
        "1",
        "--jobs",
        "2",
    )
    assert code == 0
    assert "PASS" in out and "(9 checks)" in out


def test_cache_env_override(a11_file, tmp_path, capsys, monkeypatch):
    cache_dir = tmp_path / "envcache"
    monkeypatch.setenv("QCA_CACHE_DIR", str(cache_dir))
    code, out = run(capsys, "basis", "c", a11_file, "--a=-1,-2")
    assert code == 0 and "cached: no" in out
    assert cache_dir.is_dir()
    code, out = run(capsys, "basis", "c", a11_file, "--a=-1,-2")
    assert code == 0 and "cached: yes" in out


def test_verify_machine_format(capsys):
    code, out = run(
        capsys,
        "--format",
        "machine",
        "verify",
        "identities",
        "--seeds",
        "2",
        "--bound",
        "1",
        "--pairs",
        "1,1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert all(rec["failed"] == 0 for rec in payload["reports"])


def test_error_exit_code(tmp_path, capsys):
    code, _ = run(capsys, "seed", "check", str(tmp_path / "missing.json"))
    assert code == 2
