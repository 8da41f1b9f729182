from minpart.numerics.partition_analysis import BOUNDARY, NodalPartition
from minpart.views.report_writer import write_text_atomic
from minpart.data_structs.grid import Grid

from pathlib import Path
import numpy as np
import logging

logger = logging.getLogger(__name__)

class PGMView:
    """Renders nodal partitions as plain PGM (P2) rasters.

    Domain ``i`` gets gray level ``i + 1``; nodal nodes and nodes outside the domain get ``0``.
    The first raster row is the top row of the lattice.
    """

    def __init__(self, grid: Grid) -> None:
        self.__grid: Grid = grid

    def levels(self, partition: NodalPartition) -> np.ndarray:
        """Return the gray levels on the lattice, indexed ``[row, column]`` from the top left."""
        if partition.labels.shape != (self.__grid.size,):
            raise ValueError(f"Partition does not belong to the grid.\n"
                             + f"It has {partition.labels.shape[0]} labels, the grid {self.__grid.size} points")
        levels: np.ndarray = np.zeros(self.__grid.shape, dtype=np.int64)
        labels: np.ndarray = partition.labels
        levels[self.__grid.iy, self.__grid.ix] = np.where(labels == BOUNDARY, 0, labels + 1)
        return levels[::-1, :]

    def render(self, partition: NodalPartition) -> str:
        levels: np.ndarray = self.levels(partition)
        height, width = levels.shape
        lines: list[str] = ["P2", f"{width} {height}", str(max(1, partition.k))]
        lines += [" ".join(str(level) for level in row) for row in levels]
        return "\n".join(lines) + "\n"

    def write_to_file(self, partition: NodalPartition, file_path: str | Path) -> None:
        write_text_atomic(file_path, self.render(partition))
        logger.info("wrote %s", file_path)
