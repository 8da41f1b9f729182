from minpart.views.report_writer import ReportWriter, to_jsonable
from minpart.numerics.weyl_counting import CountReport
from minpart.data_structs.grid import CutDirection
from minpart import TOOL_NAME, __version__

from pathlib import Path
import numpy as np
import pytest
import json
import math


def test_to_jsonable():
    assert to_jsonable({"a": np.float64(1.5), "b": np.int64(3), "c": np.bool_(True)}) == {"a": 1.5, "b": 3, "c": True}
    assert to_jsonable([math.nan, math.inf, -math.inf]) == [None, None, None]
    assert to_jsonable(np.arange(3)) == [0, 1, 2]
    assert to_jsonable(CutDirection.UP) == "up"
    assert to_jsonable((Path("out"), 1)) == ["out", 1]
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_dataclasses_are_serialized():
    report = CountReport(t=5.0, n_exact=1, bound_paper=1.0, bound_corrected=2.0)
    assert to_jsonable(report)["n_exact"] == 1


def test_json_layout(tmp_path: Path):
    writer = ReportWriter(tmp_path / "out", {"h": np.float64(0.5), "k": 2})
    path = writer.write_json("result.json", {"value": np.float32(2.0)})
    document = json.loads(path.read_text())
    assert set(document) == {"tool", "version", "config", "data", "timestamp"}
    assert document["tool"] == TOOL_NAME
    assert document["version"] == __version__
    assert document["config"] == {"h": 0.5, "k": 2}
    assert document["data"] == {"value": 2.0}
    assert [entry.name for entry in (tmp_path / "out").iterdir()] == ["result.json"]


def test_payload_is_deterministic_without_the_timestamp(tmp_path: Path):
    writer = ReportWriter(tmp_path, {"seed": 42})
    assert writer.payload([1, 2], timestamp="t") == writer.payload([1, 2], timestamp="t")


def test_csv_layout(tmp_path: Path):
    writer = ReportWriter(tmp_path, {"step": 0.1})
    path = writer.write_csv("table.csv", ("t", "ok"), [(2.0, False), (np.float64(2.5), np.bool_(True))])
    lines = path.read_text().splitlines()
    assert lines[0] == f"# tool: {TOOL_NAME}"
    assert lines[1] == f"# version: {__version__}"
    assert lines[2] == '# config: {"step": 0.1}'
    assert lines[3:] == ["t,ok", "2.0,false", "2.5,true"]
