from minpart import TOOL_NAME, __version__

from dataclasses import asdict, is_dataclass
from datetime import datetime, timezone
from collections.abc import Iterable, Sequence
from pathlib import Path
from enum import Enum
from typing import Any
import numpy as np
import tempfile
import logging
import json
import math
import csv
import io
import os

logger = logging.getLogger(__name__)

def write_text_atomic(file_path: str | Path, text: str) -> None:
    """Write ``text`` in ``file_path`` through a temporary file in the same directory, then rename it."""
    path: Path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temporary_path = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent, text=True)
    try:
        with os.fdopen(descriptor, "wt", newline="") as f:
            f.write(text)
        os.replace(temporary_path, path)
    except BaseException:
        if os.path.exists(temporary_path):
            os.remove(temporary_path)
        raise


def to_jsonable(value: Any) -> Any:
    """Convert dataclasses, enums, numpy values and paths to plain JSON values; non finite floats become ``None``."""
    match value:
        case bool() | None | str():
            return value
        case Enum():
            return to_jsonable(value.value)
        case int() | np.integer():
            return int(value)
        case float() | np.floating():
            return float(value) if math.isfinite(value) else None
        case np.bool_():
            return bool(value)
        case np.ndarray():
            return to_jsonable(value.tolist())
        case Path():
            return str(value)
        case dict():
            return {str(key): to_jsonable(item) for key, item in value.items()}
        case list() | tuple():
            return [to_jsonable(item) for item in value]
        case _ if is_dataclass(value) and not isinstance(value, type):
            return to_jsonable(asdict(value))
        case _:
            raise TypeError(f"Cannot serialize {type(value).__name__}")


class ReportWriter:
    """Writes the artifacts of a run in ``out_dir``.

    Every JSON artifact has the layout ``{"tool", "version", "config", "data", "timestamp"}`` with sorted keys,
    so reruns differ only in ``timestamp``.
    CSV artifacts start with ``#`` provenance lines and carry no timestamp.
    """

    def __init__(self, out_dir: str | Path, config: dict[str, Any]) -> None:
        self.__out_dir: Path = Path(out_dir)
        self.__config: dict[str, Any] = to_jsonable(config)

    @property
    def out_dir(self) -> Path:
        return self.__out_dir

    def path(self, name: str) -> Path:
        return self.__out_dir / name

    def payload(self, data: Any, timestamp: str | None = None) -> dict[str, Any]:
        """Return the JSON document wrapping ``data``."""
        return {
            "tool": TOOL_NAME,
            "version": __version__,
            "config": self.__config,
            "data": to_jsonable(data),
            "timestamp": timestamp if timestamp is not None else datetime.now(timezone.utc).isoformat()
        }

    def write_json(self, name: str, data: Any) -> Path:
        path: Path = self.path(name)
        write_text_atomic(path, json.dumps(self.payload(data), sort_keys=True, indent=2) + "\n")
        logger.info("wrote %s", path)
        return path

    def write_csv(self, name: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path: Path = self.path(name)
        buffer: io.StringIO = io.StringIO()
        buffer.write(f"# tool: {TOOL_NAME}\n")
        buffer.write(f"# version: {__version__}\n")
        buffer.write(f"# config: {json.dumps(self.__config, sort_keys=True)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(cell) for cell in row])
        write_text_atomic(path, buffer.getvalue())
        logger.info("wrote %s", path)
        return path

    def write_text(self, name: str, text: str) -> Path:
        path: Path = self.path(name)
        write_text_atomic(path, text)
        logger.info("wrote %s", path)
        return path


def _csv_cell(cell: Any) -> str:
    match cell:
        case bool() | np.bool_():
            return "true" if cell else "false"
        case float() | np.floating():
            return repr(float(cell))
        case _:
            return str(cell)
