"""SVG line plots of CsvTable columns."""

from __future__ import annotations

import io
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..exceptions import DomainError, InvalidConfigError  # noqa: E402
from .tables import CsvTable  # noqa: E402

SVG_RC = {"svg.hashsalt": "ddqe", "svg.fonttype": "none"}
# Monte-Carlo columns are dashed, everything else solid
DASHED_SUFFIXES = ("_mc",)


def _label(table: CsvTable, column: str) -> str:
    unit = table.unit(column)
    return f"{column} [{unit}]" if unit else column


def default_series(table: CsvTable, x: str) -> list[str]:
    return [c for c in table.columns if c != x and not c.endswith("_stderr") and c != "validity"]


def emit_svg(
    table: CsvTable,
    x: str = "t",
    y: Sequence[str] | None = None,
    path: str | Path | None = None,
    title: str | None = None,
) -> str:
    """Render ``y`` against ``x`` as a standalone SVG document.

    Each series carries the gid ``series-<column>``; output bytes depend only on the table.
    """
    if table.empty:
        raise DomainError(f"table {table.name} is empty")
    series = list(y) if y else default_series(table, x)
    if not series:
        raise InvalidConfigError("no series selected", key="y")
    xs = table.column(x)
    columns = {name: table.column(name) for name in series}

    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(8, 5))
        for name, values in columns.items():
            style = "--" if name.endswith(DASHED_SUFFIXES) else "-"
            (line,) = ax.plot(xs, values, linestyle=style, label=name)
            line.set_gid(f"series-{name}")
        ax.set_xlabel(_label(table, x))
        if len(series) == 1:
            ax.set_ylabel(_label(table, series[0]))
        ax.set_title(title or table.name)
        ax.legend()
        ax.grid(True, alpha=0.3)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)

    svg = buf.getvalue()
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(svg)
    return svg
