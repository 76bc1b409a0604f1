"""Exit-code contract, output determinism, machine-readable round trips."""

import json

import pytest

from qlogic.cli import main
from qlogic.core import LogicDescription, validate_logic
from qlogic.fixtures import load_fixture
from qlogic.states import State, parse_rational


@pytest.fixture(scope="module")
def fixture_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    paths = {}
    for name in ("boolean2", "boolean3", "MO2", "O6", "prod22"):
        path = root / f"{name}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(load_fixture(name).data, fh, indent=2)
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_validate_accepts(fixture_files, capsys):
    code, out = run(capsys, "validate", fixture_files["boolean3"])
    assert code == 0 and "valid" in out


def test_validate_rejects_hexagon_with_witness(fixture_files, capsys):
    code, out = run(capsys, "validate", fixture_files["O6"], "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["axiom"] == "E"
    assert set(payload["witness"]) == {"x", "y"}


def test_check_G_fails_on_mo2_with_witnesses(fixture_files, capsys):
    code, out = run(capsys, "check", "G", fixture_files["MO2"],
                    "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["element"] == "a"
    w1, w2 = payload["witnesses"]
    assert w1 != w2 and w1["a"] == w2["a"] == "1/1"


def test_check_F_and_H_hold(fixture_files, capsys):
    for cond in ("F", "H"):
        code, out = run(capsys, "check", cond, fixture_files["MO2"])
        assert code == 0, out


def test_input_error_is_exit_2(capsys, tmp_path):
    code, _ = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(capsys, "atoms", str(bad))
    assert code == 2


def test_unknown_label_is_input_error(fixture_files, capsys):
    code, out = run(capsys, "transprob", fixture_files["MO2"], "nope", "a")
    assert code == 2


def test_budget_exceeded_is_exit_3(fixture_files, capsys):
    code, out = run(capsys, "compat", fixture_files["MO2"],
                    "--members", "a,b", "--budget", "0", "--format", "json")
    assert code == 3
    assert json.loads(out)["error"] == "budget_exceeded"


def test_clone_search_contract(fixture_files, capsys):
    code, out = run(capsys, "clone-search",
                    "--composite", fixture_files["prod22"],
                    "--C", "x,y", "--f", "x", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["cloner_found"] and payload["theorem_consistent"]
    assert set(payload["pairwise"].values()) <= {"0/1", "1/1"}


def test_certify_theorem1(fixture_files, capsys):
    code, out = run(capsys, "certify-theorem1",
                    "--composite", fixture_files["prod22"],
                    "--C", "x,y", "--f", "y", "--format", "json")
    assert code == 0
    assert json.loads(out)["holds"]


def test_atoms_compat_autos(fixture_files, capsys):
    code, out = run(capsys, "atoms", fixture_files["boolean3"],
                    "--format", "json")
    assert code == 0 and json.loads(out)["atoms"] == ["x", "y", "z"]
    code, out = run(capsys, "compat", fixture_files["MO2"], "--members", "a,b")
    assert code == 1
    code, out = run(capsys, "autos", fixture_files["MO2"], "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 8


def test_product_command(fixture_files, capsys, tmp_path):
    out_path = str(tmp_path / "prod.json")
    code, _ = run(capsys, "product", fixture_files["boolean2"], "-o", out_path)
    assert code == 0
    code, out = run(capsys, "check-I", out_path)
    assert code == 0
    code, out = run(capsys, "check-J", out_path)
    assert code == 0
    code, out = run(capsys, "product", fixture_files["MO2"])
    assert code == 2  # not Boolean: precondition, not refutation


def test_lemma_commands(fixture_files, capsys, tmp_path):
    morph = tmp_path / "ident.json"
    with open(morph, "w", encoding="utf-8") as fh:
        json.dump({"source": fixture_files["boolean2"],
                   "target": fixture_files["boolean2"],
                   "map": [0, 1, 2, 3]}, fh)
    code, out = run(capsys, "lemma1", str(morph), "--format", "json")
    assert code == 0 and json.loads(out)["holds"]
    code, out = run(capsys, "lemma2", fixture_files["prod22"],
                    "--format", "json")
    assert code == 0 and json.loads(out)["tuples_checked"] == 100
    code, out = run(capsys, "lemma3", fixture_files["prod22"],
                    "--format", "json")
    assert code == 0 and json.loads(out)["states_checked"] == 4


def test_hilbert_subcommands(capsys, tmp_path):
    code, out = run(capsys, "hilbert", "no-cloning", "--xi1", "1,0",
                    "--xi2", "0.7071067811865476,0.7071067811865476",
                    "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert not payload["cloneable"]
    assert abs(payload["overlap"] - 0.5) < 1e-9

    proj = tmp_path / "proj.json"
    with open(proj, "w", encoding="utf-8") as fh:
        json.dump([[[1, 0], [0, 0]], [[0, 0], [0, 0]]], fh)
    code, out = run(capsys, "hilbert", "atom", "--xi", "1,0",
                    "--f", str(proj), "--format", "json")
    assert code == 0 and abs(json.loads(out)["value"] - 1.0) < 1e-12

    code, out = run(capsys, "hilbert", "lemma2", "--dim", "2",
                    "--trials", "25", "--seed", "3", "--format", "json")
    assert code == 0 and json.loads(out)["max_residual"] <= 1e-9


def test_condprob_round_trip(fixture_files, capsys, tmp_path):
    logic = validate_logic(
        LogicDescription.from_dict(load_fixture("boolean3").data)
    )
    state_file = tmp_path / "uniform.json"
    values = [f"{len(logic.atoms_below(e))}/3" for e in range(logic.n)]
    with open(state_file, "w", encoding="utf-8") as fh:
        json.dump({"logic": fixture_files["boolean3"], "values": values}, fh)
    code, out = run(capsys, "condprob", str(state_file), "--given", "z'",
                    "--format", "json")
    assert code == 0
    payload = json.loads(out)
    # machine output re-parses into a valid state on the same logic
    mu = State(logic, [parse_rational(payload["state"][lbl])
                       for lbl in logic.labels])
    assert mu[logic.index("x")] == parse_rational("1/2")


def test_states_output_round_trip(fixture_files, capsys):
    code, out = run(capsys, "states", fixture_files["MO2"], "--format", "json")
    assert code == 0
    payload = json.loads(out)
    logic = validate_logic(
        LogicDescription.from_dict(load_fixture("MO2").data)
    )
    # every reported vertex re-validates as a state (exact additivity)
    for vert in payload["vertices"]:
        State(logic, [parse_rational(vert[lbl]) for lbl in logic.labels])
    assert payload["vertex_count"] == 4


def test_machine_output_is_deterministic(fixture_files, capsys):
    runs = []
    for _ in range(2):
        code, out = run(capsys, "clone-search",
                        "--composite", fixture_files["prod22"],
                        "--C", "x,y", "--f", "x", "--format", "json")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    for _ in range(2):
        code, out = run(capsys, "states", fixture_files["MO2"],
                        "--format", "json")
        runs.append(out)
    assert runs[2] == runs[3]


def test_fixture_commands(capsys, tmp_path):
    code, out = run(capsys, "fixture", "list", "--format", "json")
    assert code == 0 and "MO2" in json.loads(out)["names"]
    code, out = run(capsys, "fixture", "info", "MO2", "--format", "json")
    assert code == 0 and json.loads(out)["annotations"]["aut_order"] == 8
    code, _ = run(capsys, "fixture", "export", "MO2", str(tmp_path / "m.json"))
    assert code == 0
    code, _ = run(capsys, "fixture", "info", "nope")
    assert code == 2
