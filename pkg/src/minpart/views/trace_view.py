from matplotlib.ticker import MaxNLocator
from matplotlib.figure import Figure
from matplotlib.axes import Axes
import matplotlib.pyplot as plt

from minpart.views.report_writer import write_text_atomic
from minpart.data_structs.search import SearchData
from collections.abc import Callable
from typing import Any
import json

class SearchTraceView:
    """Object that allows the user to see how a pole search progressed."""

    def __init__(self) -> None:
        self.__searchdatas: list[SearchData] = []

    @property
    def searchdatas(self) -> list[SearchData]:
        return list(self.__searchdatas)

    def get_callback(self) -> Callable[[SearchData], None]:
        """Return the callback for ``SearchManager``."""
        return lambda searchdata: self.__add_searchdata(searchdata)

    def __add_searchdata(self, searchdata: SearchData) -> None:
        self.__searchdatas.append(searchdata)

    def display(self) -> None:
        """Display the incumbent ``λ_k`` and the poll step against the number of eigensolves."""
        plt.style.use("dark_background")
        fig: Figure
        value_axes: Axes
        step_axes: Axes
        fig, (value_axes, step_axes) = plt.subplots(1, 2, figsize=(9, 4.5))
        fig.subplots_adjust(left=0.1, bottom=0.15, right=0.9, top=0.8, wspace=0.4, hspace=0.06)
        fig.suptitle("Pole Search", y=0.95, fontweight="bold", fontsize="x-large")

        label_size: float = 11
        evaluations: list[int] = [data.evaluations for data in self.__searchdatas]

        value_axes.step(evaluations, [data.best_value for data in self.__searchdatas], where="post", label="Best", color="b")
        value_axes.plot(evaluations, [data.value for data in self.__searchdatas], "o", markersize=3, label="Current", color="c")
        value_axes.set_xlabel("Eigensolves", size=label_size)
        value_axes.set_ylabel("λ_k", size=label_size)
        value_axes.xaxis.set_major_locator(MaxNLocator(nbins="auto", integer=True))
        value_axes.legend()

        step_axes.semilogy(evaluations, [data.step for data in self.__searchdatas], label="Poll step", color="g")
        for data in self.__searchdatas:
            if data.event == "start":
                step_axes.axvline(data.evaluations, color=("r", 0.4), linewidth=0.8)
        step_axes.set_xlabel("Eigensolves", size=label_size)
        step_axes.set_ylabel("Step", size=label_size)
        step_axes.xaxis.set_major_locator(MaxNLocator(nbins="auto", integer=True))
        step_axes.legend()

        plt.show()

    def read_from_file(self, file_path: str) -> None:
        """Read a trace written by ``write_to_file`` or the ``trace`` of a ``search`` result file."""
        with open(file_path, "rt") as f:
            data: Any = json.load(f)
        if isinstance(data, dict) and "data" in data:
            data = data["data"]
        if not isinstance(data, dict) or "trace" not in data:
            raise ValueError("SearchTraceView: the file to read did not have a trace.")
        self.__searchdatas = [SearchData.from_dict(item) for item in data["trace"]]

    def write_to_file(self, file_path: str) -> None:
        """Write the trace in ``file_path``."""
        write_text_atomic(file_path, json.dumps({"trace": [data.to_dict() for data in self.__searchdatas]}, indent=2) + "\n")
