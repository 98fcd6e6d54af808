import json

import prelie
from prelie import cli
from prelie.cli import OP_REGISTRY, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# enumerate


def test_enumerate_planar_text(capsys):
    code, out = run(capsys, "enumerate", "planar", "--degree", "3")
    assert code == 0
    assert out.splitlines() == ["((()))  energy=3", "(()())  energy=2", "count 2"]


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "nonplanar", "--degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 4
    assert len(payload["trees"]) == 4


def test_enumerate_binary_shows_rotation(capsys):
    code, out = run(capsys, "enumerate", "binary", "--degree", "2")
    assert code == 0
    assert "->" in out


def test_enumerate_cap_exit_code(capsys):
    code, _ = run(capsys, "enumerate", "planar", "--degree", "13")
    assert code == 3


def test_enumerate_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("PRELIE_MAX_DEGREE", "3")
    code, _ = run(capsys, "enumerate", "planar", "--degree", "5")
    assert code == 3
    monkeypatch.delenv("PRELIE_MAX_DEGREE")
    code, _ = run(capsys, "enumerate", "planar", "--degree", "5")
    assert code == 0


# ---------------------------------------------------------------------------
# compute


def test_compute_product(capsys):
    code, out = run(
        capsys, "compute", "product", "--product", "graft", "--left", "()", "--right", "(())"
    )
    assert code == 0
    assert out.strip() == "1 ((())) + 1 (()())"


def test_compute_product_bad_tree(capsys):
    code, _ = run(
        capsys, "compute", "product", "--product", "graft", "--left", "((", "--right", "()"
    )
    assert code == 2


def test_compute_psi_json(capsys):
    code, out = run(capsys, "compute", "psi", "--tree", "(()())", "--format", "json")
    assert code == 0
    terms = json.loads(out)
    assert len(terms) == 2
    assert {t["coeff"] for t in terms} == {"1"}


def test_compute_psi_inverse(capsys):
    code, out = run(capsys, "compute", "psi-inverse", "--tree", "(()())")
    assert code == 0
    assert out.strip() == "-1 ((())) + 1 (()())"


def test_compute_coeff_both(capsys):
    code, out = run(
        capsys,
        "compute", "coeff",
        "--sigma", "(()(()))",
        "--tau", "(()()())",
        "--method", "both",
    )
    assert code == 0
    assert "recursive: 2" in out
    assert "bijections: 2" in out
    assert "match" in out


def test_compute_coeff_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "coeff_c_bijections", lambda *a, **kw: -1)
    code, out = run(
        capsys,
        "compute", "coeff", "--sigma", "(())", "--tau", "(())", "--method", "both",
    )
    assert code == 4
    assert "MISMATCH" in out


def test_compute_alpha_both(capsys):
    code, out = run(
        capsys,
        "compute", "alpha",
        "--s", "(()())", "--tau", "(()())", "--method", "both",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "alpha": 1, "tilde_b": 2, "sym": 2, "tilde_b_over_sym": 1, "match": True
    }


def test_compute_matrix_csv(capsys):
    code, out = run(capsys, "compute", "matrix", "--degree", "3", "--format", "csv")
    assert code == 0
    assert "1,1" in out and "0,1" in out


def test_compute_beta_default(capsys):
    code, out = run(capsys, "compute", "beta", "--degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["entries"] == [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 3], [0, 0, 0, 1]]


def test_compute_beta_section_file(capsys, tmp_path):
    path = tmp_path / "sec.txt"
    path.write_text(prelie.default_section(3).to_text())
    code, out = run(
        capsys, "compute", "beta", "--degree", "3", "--section", str(path), "--format", "csv"
    )
    assert code == 0
    assert "1,1" in out


def test_compute_expand(capsys):
    code, out = run(capsys, "compute", "expand", "--ag", "--degree", "4", "--format", "csv")
    assert code == 0
    assert "3" in out
    code, _ = run(capsys, "compute", "expand", "--degree", "4")
    assert code == 2


def test_compute_ag_multigen(capsys):
    code, out = run(
        capsys, "compute", "ag-multigen", "--degree", "3", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["count"] == 14


# ---------------------------------------------------------------------------
# verify


def test_verify_sequences(capsys):
    code, out = run(capsys, "verify", "sequences")
    assert code == 0
    assert "suite sequences: pass" in out


def test_verify_identities_json(capsys):
    code, out = run(
        capsys, "verify", "identities", "--max-degree", "5", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert {c["name"] for c in payload["checks"]} == {"pre-lie-identity", "nap-identity"}


def test_verify_oracle_small(capsys):
    code, out = run(capsys, "verify", "oracle", "--max-degree", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_matrices(capsys):
    code, out = run(capsys, "verify", "matrices", "--max-degree", "4")
    assert code == 0
    assert "[PASS]" in out


def test_verify_tree_grounded(capsys):
    code, out = run(capsys, "verify", "tree-grounded", "--max-degree", "5")
    assert code == 0
    assert "section-round-trip-n4" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(
        cli.VERIFY_SUITES, "sequences", lambda max_degree, seed: [cli._check("forced", False)]
    )
    code, out = run(capsys, "verify", "sequences")
    assert code == 1
    assert "fail" in out


# ---------------------------------------------------------------------------
# section


def test_section_show_and_validate(capsys, tmp_path):
    code, out = run(capsys, "section", "show", "--degree", "3")
    assert code == 0
    assert "(()()) => (()())" in out
    path = tmp_path / "sec.txt"
    path.write_text(out)
    code, out = run(capsys, "section", "validate", str(path))
    assert code == 0
    assert "valid section" in out


def test_section_validate_rejects_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("((())) => (()())\n")
    code, _ = run(capsys, "section", "validate", str(path))
    assert code == 2
    code, _ = run(capsys, "section", "validate", str(tmp_path / "missing.txt"))
    assert code == 2


# ---------------------------------------------------------------------------
# determinism and coverage


def test_repeat_runs_byte_identical(capsys):
    _, first = run(capsys, "compute", "matrix", "--degree", "5", "--format", "json")
    _, second = run(capsys, "compute", "matrix", "--degree", "5", "--format", "json")
    assert first == second
    _, v1 = run(capsys, "verify", "matrices", "--max-degree", "4", "--format", "json")
    _, v2 = run(capsys, "verify", "matrices", "--max-degree", "4", "--format", "json")
    assert v1 == v2


def test_registry_names_are_public_api():
    for name in OP_REGISTRY:
        assert hasattr(prelie, name), name


def test_registry_paths_name_real_subcommands():
    parser = cli.build_parser()
    top = {"enumerate", "compute", "verify", "section"}
    for path in OP_REGISTRY.values():
        assert path.split()[0] in top, path
    assert parser.prog == "prelie"
