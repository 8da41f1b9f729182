from minpart import TOOL_NAME

from minpart_lab import run
import minpart_lab

from pathlib import Path
from typing import Any
import pytest
import json
import csv


def read_data(path: Path) -> dict[str, Any]:
    document: dict[str, Any] = json.loads(path.read_text())
    assert document["tool"] == TOOL_NAME
    return document["data"]


def test_constants(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    assert run(["constants", "--out", str(tmp_path)]) == 0
    data = read_data(tmp_path / "constants.json")
    assert set(data["ledgers"]) == {"paper", "corrected"}
    assert data["ledgers"]["paper"]["eps_max"] == pytest.approx(0.214117, abs=1e-5)
    assert [entry["k"] for entry in data["nu_lower_bound"]] == [1, 10, 100, 1000]
    assert json.loads(capsys.readouterr().out) == data


def test_weyl(tmp_path: Path):
    assert run(["weyl", "--t-min", "2", "--t-max", "3", "--step", "0.1", "--eps", "0.05", "--wq-t-max", "10",
                "--out", str(tmp_path)]) == 0
    with open(tmp_path / "weyl.csv") as f:
        rows = [row for row in csv.reader(line for line in f if not line.startswith("#"))]
    assert rows[0] == ["t", "n_exact", "bound_paper", "ok_paper", "bound_corrected", "ok_corrected"]
    assert len(rows) == 12
    assert rows[1][0] == "2.0"
    assert rows[1][5] == "false"
    summary = read_data(tmp_path / "weyl_summary.json")
    assert summary["corrected"]["violations"] == 2
    assert summary["wq_threshold"] is None


def test_weyl_rejects_small_t(tmp_path: Path):
    assert run(["weyl", "--t-min", "1", "--out", str(tmp_path)]) == 2


def test_solve(tmp_path: Path):
    assert run(["solve", "--h", str(1 / 3), "--k", "4", "--dump-matrix", "--out", str(tmp_path)]) == 0
    data = read_data(tmp_path / "spectrum.json")
    assert data["eigenvalues"] == pytest.approx([18, 36, 36, 54])
    assert data["dimension"] == 4
    assert len((tmp_path / "operator.coo").read_text().splitlines()) == 12


def test_solve_asks_for_too_many_eigenvalues(tmp_path: Path):
    assert run(["solve", "--h", str(1 / 3), "--k", "5", "--out", str(tmp_path)]) == 3


def test_partition(tmp_path: Path):
    domain: str = json.dumps({"shape": "rectangle", "width": 2, "height": 1})
    assert run(["partition", "--domain", domain, "--h", "0.0625", "--k", "2", "-proc", "1", "--out", str(tmp_path)]) == 0
    data = read_data(tmp_path / "partition.json")
    assert data["k"] == 2
    assert data["courant"]["index"] == 2
    assert all(check["satisfied"] for check in data["faber_krahn"])
    assert (tmp_path / "partition.pgm").read_text().startswith("P2\n")


def test_search_with_too_many_poles(tmp_path: Path):
    assert run(["search", "--h", "0.125", "--k", "2", "--poles", "1", "--out", str(tmp_path)]) == 2


def test_search(tmp_path: Path):
    assert run(["search", "--h", str(1 / 12), "--k", "3", "--poles", "1", "--budget", "10", "--restarts", "1",
                "-proc", "1", "--out", str(tmp_path)]) == 0
    data = read_data(tmp_path / "search.json")
    assert data["evaluations"] <= 10
    assert len(data["poles"]) == 1
    assert data["feasible"] == (data["domains"] == 3)
    assert "processes" not in json.loads((tmp_path / "search.json").read_text())["config"]


def test_certify(tmp_path: Path):
    assert run(["certify", "--h", "0.03125", "--k", "4", "--lk", "200", "--t", "5", "--bound", "corrected",
                "--out", str(tmp_path)]) == 0
    data = read_data(tmp_path / "certificate.json")
    assert data["bound"] == "corrected"
    assert data["superadditivity"]["holds"]
    assert data["nu_lower_bound"]["conjectured"] == 8


def test_certify_rejects_eps(tmp_path: Path):
    assert run(["certify", "--h", "0.0625", "--k", "4", "--lk", "200", "--t", "5", "--eps", "0.5",
                "--out", str(tmp_path)]) == 2


def test_hexagonal_diagnostic_needs_two_values(tmp_path: Path):
    assert run(["hexa-diagnostic", "--lk", "19", "--out", str(tmp_path)]) == 2


def test_unknown_subcommand():
    assert run(["mesh"]) == 2


def test_domain_json_errors_are_input_errors(tmp_path: Path):
    assert run(["solve", "--domain", '{"shape": "disk", "radius": -1}', "--out", str(tmp_path)]) == 2
    assert run(["solve", "--domain", "{not json", "--out", str(tmp_path)]) == 2


def test_internal_value_errors_are_not_reported_as_input_errors(monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    def broken_handler(_: Any) -> None:
        raise ValueError("operands could not be broadcast together")

    monkeypatch.setattr(minpart_lab, "run_constants", broken_handler)
    with pytest.raises(ValueError, match="broadcast"):
        run(["constants", "--out", str(tmp_path)])
