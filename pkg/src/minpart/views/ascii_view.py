from minpart.numerics.partition_analysis import BOUNDARY, NodalPartition
from minpart.data_structs.grid import Grid

import numpy as np

class PartitionASCIIView:
    """An object that allows the user to view a nodal partition in the terminal.

    Domains are drawn with letters (cycling after ``z``), nodal nodes with ``.``, odd critical points and poles
    with ``*`` on the nearest lattice node.
    """

    __void_char: str = " "
    __boundary_char: str = "."
    __critical_char: str = "*"
    __domain_chars: str = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
    __horizontal_border_char: str = "="
    __vertical_border_char: str = u"‖"
    __horizontal_border_size: int = 1
    __vertical_border_size: int = 1

    def __init__(self, grid: Grid) -> None:
        self.__grid: Grid = grid

    def render(self, partition: NodalPartition) -> list[str]:
        """Return the lines of the drawing, top row first, borders included."""
        ny, nx = self.__grid.shape
        cells: np.ndarray = np.full((ny, nx), self.__void_char, dtype="<U1")
        labels: np.ndarray = partition.labels
        chars: np.ndarray = np.array(list(self.__domain_chars))
        cells[self.__grid.iy, self.__grid.ix] = np.where(labels == BOUNDARY, self.__boundary_char,
                                                          chars[np.maximum(labels, 0) % len(chars)])
        marked: list[tuple[float, float]] = [point.location for point in partition.odd_critical_points]
        marked += [pole.point for pole in partition.pole_associations]
        for x, y in marked:
            i: int = int(round((x - self.__grid.origin[0]) / self.__grid.h))
            j: int = int(round((y - self.__grid.origin[1]) / self.__grid.h))
            if 0 <= i < nx and 0 <= j < ny:
                cells[j, i] = self.__critical_char
        border: str = self.__horizontal_border_char * (nx + 2 * self.__vertical_border_size)
        side: str = self.__vertical_border_char * self.__vertical_border_size
        lines: list[str] = [border] * self.__horizontal_border_size
        lines += [side + "".join(row) + side for row in cells[::-1]]
        lines += [border] * self.__horizontal_border_size
        return lines

    def print_partition(self, partition: NodalPartition) -> None:
        """Print the partition with a one line summary."""
        for line in self.render(partition):
            print(line)
        energy: str = f"{partition.energy:.6g}" if len(partition.energies) > 0 else "n/a"
        print(f"{partition.k} domains, energy {energy}, {len(partition.odd_critical_points)} odd critical points")
