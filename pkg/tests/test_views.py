from minpart.numerics.partition_analysis import NodalPartition, extract_partition
from minpart.numerics.magnetic_operator import GaugeField
from minpart.views.ascii_view import PartitionASCIIView
from minpart.views.trace_view import SearchTraceView
from minpart.data_structs.search import SearchData
from minpart.views.pgm_view import PGMView
from minpart.data_structs.grid import Grid

from pathlib import Path
import numpy as np
import pytest
import json
import math


@pytest.fixture
def checkerboard(tiny_grid: Grid) -> NodalPartition:
    return extract_partition(np.array([1.0, -1.0, -1.0, 1.0]), GaugeField.trivial(tiny_grid), tiny_grid)


def test_pgm_raster(tmp_path: Path, tiny_grid: Grid, checkerboard: NodalPartition):
    assert checkerboard.k == 4
    path = tmp_path / "partition.pgm"
    PGMView(tiny_grid).write_to_file(checkerboard, path)
    assert path.read_text().splitlines() == ["P2", "4 4", "4", "0 0 0 0", "0 3 4 0", "0 1 2 0", "0 0 0 0"]


def test_pgm_rejects_other_grids(square_grid: Grid, checkerboard: NodalPartition):
    with pytest.raises(ValueError):
        PGMView(square_grid).levels(checkerboard)


def test_ascii_drawing(tiny_grid: Grid, checkerboard: NodalPartition):
    lines = PartitionASCIIView(tiny_grid).render(checkerboard)
    assert len(lines) == 6
    assert all(len(line) == 6 for line in lines)
    assert lines[3] == "‖ AB ‖"
    assert lines[2] == "‖ CD ‖"


def test_ascii_summary(capsys: pytest.CaptureFixture[str], tiny_grid: Grid, checkerboard: NodalPartition):
    PartitionASCIIView(tiny_grid).print_partition(checkerboard)
    assert "4 domains" in capsys.readouterr().out


def test_trace_round_trip(tmp_path: Path):
    view = SearchTraceView()
    callback = view.get_callback()
    callback(SearchData(restart=1, evaluations=1, step=0.25, value=30.0, best_value=30.0, poles=((0.5, 0.5),)))
    callback(SearchData(restart=1, iteration=1, evaluations=5, step=0.25, value=31.0, best_value=31.0,
                        poles=((0.25, 0.5),), event="move"))
    path = tmp_path / "trace.json"
    view.write_to_file(str(path))
    other = SearchTraceView()
    other.read_from_file(str(path))
    assert other.searchdatas == view.searchdatas


def test_trace_from_a_search_result(tmp_path: Path):
    path = tmp_path / "search.json"
    start = SearchData(restart=1, evaluations=1, step=0.25, value=-math.inf, best_value=-math.inf)
    path.write_text(json.dumps({"data": {"trace": [start.to_dict() | {"value": None, "best_value": None}]}}))
    view = SearchTraceView()
    view.read_from_file(str(path))
    assert view.searchdatas == [start]
    path.write_text(json.dumps({"data": {}}))
    with pytest.raises(ValueError):
        view.read_from_file(str(path))
