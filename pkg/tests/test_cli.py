import json

import pytest

from isogeny_lab.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_counterexample_paper_exit_zero(capsys):
    code, out = run_cli(["counterexample", "--paper"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["claims"]["counterexample-v2-w1"] == "verified"
    assert data["version"]
    assert data["parameters"]["v"] == 2 and data["parameters"]["w"] == 1


def test_counterexample_abstract(capsys):
    code, out = run_cli(["counterexample", "--abstract"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["claims"]["necessity-abstract"] == "verified"


def test_theorem1_7_3_exit_zero(capsys):
    code, out = run_cli(["theorem1", "--q", "7", "--ell", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["violations"] == []
    assert data["counts"]["graphs_order_2"] == 1


def test_module_fixed_on_identity(capsys, tmp_path):
    path = tmp_path / "trivial.json"
    path.write_text(json.dumps({
        "ell": 3, "dim": 2,
        "generators": [[[1, 0], [0, 1]]],
        "hyperplanes": [],
    }))
    code, out = run_cli(["module", "--input", str(path), "--op", "fixed"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["fixed_subspace"] == [[1, 0], [0, 1]]


def test_module_semisimple_and_construct(capsys, tmp_path):
    path = tmp_path / "mod.json"
    path.write_text(json.dumps({
        "ell": 3, "dim": 4,
        "generators": [[[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]],
        "hyperplanes": [
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
        ],
    }))
    code, out = run_cli(["module", "--input", str(path), "--op", "semisimple"], capsys)
    assert code == 0 and json.loads(out)["semisimple"] is True
    code, out = run_cli(["module", "--input", str(path), "--op", "order"], capsys)
    assert code == 0 and json.loads(out)["order"] == 2
    code, out = run_cli(["module", "--input", str(path), "--op", "construct"], capsys)
    assert code == 0
    assert json.loads(out)["vectors"] == [[0, 1, 0, 0], [0, 0, 0, 1]]


def test_lemmas_command(capsys):
    code, out = run_cli(["lemmas", "--q", "7", "--ell", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["claims"]["lem32-distinct-kernels"] == "verified"


def test_usage_error_exit_one(capsys):
    assert main(["theorem1", "--q", "notanumber", "--ell", "3"]) == 1
    assert main(["nonsense"]) == 1


def test_capability_error_exit_one(capsys):
    # enumeration cap exceeded -> capability error, exit 1, message names cap
    code = main(["theorem1", "--q", "199", "--ell", "3", "--max-curves", "10"])
    assert code == 1


def test_replay_round_trip(capsys, tmp_path):
    # synthetic violating witness: replay exits 2 and echoes the claim id
    witness = {
        "claim": "lem42-lattice-dims",
        "ell": 3,
        "dim": 4,
        "hyperplanes": [
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        ],
    }
    path = tmp_path / "w.json"
    path.write_text(json.dumps(witness))
    code, out = run_cli(["replay", str(path)], capsys)
    assert code == 2
    data = json.loads(out)
    assert data["witness"]["claim"] == "lem42-lattice-dims"
    assert data["passes_now"] is False
    # a passing witness replays to exit 0
    good = {"claim": "counterexample-v2-w1"}
    path2 = tmp_path / "g.json"
    path2.write_text(json.dumps(good))
    code, _ = run_cli(["replay", str(path2)], capsys)
    assert code == 0


def test_output_file_and_text_format(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code = main(["counterexample", "--paper", "--output", str(out_path)])
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["claims"]["counterexample-v2-w1"] == "verified"
    code, out = run_cli(["counterexample", "--paper", "--format", "text"], capsys)
    assert code == 0
    assert "verified" in out


def test_sweep_command_small(capsys):
    code, out = run_cli(
        ["sweep", "--ell-list", "2,3", "--q-min", "5", "--q-max", "12",
         "--threads", "1"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert data["parameters"]["ell_list"] == [2, 3]
    assert data["violations"] == []


def test_json_schema_stability(capsys):
    _, out = run_cli(["theorem1", "--q", "7", "--ell", "3"], capsys)
    data = json.loads(out)
    assert set(data) == {"version", "parameters", "counts", "claims",
                         "violations", "timing"}
