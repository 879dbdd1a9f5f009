"""
Format module for fractalqm.

Handles formatting of sweep output including:
- Number formatting with a fixed number of significant digits
- Tables rendered as CSV or JSON, and read back
- Gnuplot scripts for the tables each command writes
"""

import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Union

import numpy as np

from ..errors import DataFileError, ParameterError


Number = Union[int, float]

SIGNIFICANT_DIGITS = 12


class OutputFormat(str, Enum):
    """Serialisation of a data table."""
    CSV = "csv"
    JSON = "json"


def format_value(value: Any) -> str:
    """
    Format a number for output.

    Integers are written as integers, floats with 12 significant digits.
    Negative zero is written as 0.

    Args:
        value: Number (or string, passed through)

    Returns:
        Formatted string
    """
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    number = float(value) + 0.0
    return f"{number:.{SIGNIFICANT_DIGITS}g}"


def _json_value(value: Any) -> Any:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, (bool, np.bool_)):
        return int(value)
    number = float(format_value(value))
    if not math.isfinite(number):
        return format_value(value)
    return number


def _parse_value(text: str) -> Number:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError as e:
        raise DataFileError(f"not a number: {text!r}") from e


@dataclass
class DataTable:
    """Rows of numbers under named columns, in output order."""
    columns: tuple[str, ...]
    rows: list[tuple[Number, ...]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.columns = tuple(self.columns)
        if not self.columns:
            raise ParameterError("a table needs at least one column")
        if len(set(self.columns)) != len(self.columns):
            raise ParameterError(f"duplicate column names in {self.columns}")

    def __len__(self) -> int:
        return len(self.rows)

    def append(self, *values: Number) -> None:
        if len(values) != len(self.columns):
            raise ParameterError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def extend(self, rows: Iterable[tuple[Number, ...]]) -> None:
        for row in rows:
            self.append(*row)

    def column(self, name: str) -> np.ndarray:
        """Values of one column as a float array."""
        try:
            index = self.columns.index(name)
        except ValueError as e:
            raise ParameterError(f"no column {name!r} in {self.columns}") from e
        return np.array([row[index] for row in self.rows], dtype=float)

    def to_records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self) -> str:
        """CSV text: header line then one line per row, each ending in \\n."""
        lines = [",".join(self.columns)]
        lines.extend(",".join(format_value(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        """JSON array of objects keyed by column name."""
        records = [{c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows]
        return json.dumps(records, indent=2) + "\n"

    def render(self, fmt: Union[OutputFormat, str] = OutputFormat.CSV) -> str:
        fmt = OutputFormat(fmt)
        if fmt is OutputFormat.JSON:
            return self.to_json()
        return self.to_csv()

    def write(self, path: Union[str, Path], fmt: Union[OutputFormat, str] = OutputFormat.CSV) -> Path:
        path = Path(path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.render(fmt))
        return path


def read_table(path: Union[str, Path]) -> DataTable:
    """
    Read a table written by DataTable.write.

    JSON is recognised by a leading '['; anything else is read as CSV.

    Raises:
        DataFileError: If the file is missing or malformed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"cannot read data file {path}: {e}") from e

    if text.lstrip().startswith("["):
        return _table_from_json(text, path)
    return _table_from_csv(text, path)


def _table_from_csv(text: str, path: Path) -> DataTable:
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise DataFileError(f"data file {path} is empty") from None
    if not header or not all(name.strip() for name in header):
        raise DataFileError(f"data file {path} has no header")

    table = DataTable(tuple(name.strip() for name in header))
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataFileError(f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}")
        table.append(*(_parse_value(v) for v in row))
    return table


def _table_from_json(text: str, path: Path) -> DataTable:
    try:
        records = json.loads(text)
    except json.JSONDecodeError as e:
        raise DataFileError(f"data file {path} is not valid JSON: {e}") from e
    if not isinstance(records, list) or not records or not isinstance(records[0], dict):
        raise DataFileError(f"data file {path} is not an array of objects")

    table = DataTable(tuple(records[0].keys()))
    for record in records:
        if tuple(record.keys()) != table.columns:
            raise DataFileError(f"data file {path} has records with differing fields")
        table.append(*record.values())
    return table


# ---------------------------------------------------------------------------
# Plot scripts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlotLayout:
    """Which columns of a table a plot uses."""
    columns: tuple[str, ...]
    x: str
    y: str
    group: tuple[str, ...] = ()
    style: str = "lines"


PLOT_LAYOUTS: dict[str, PlotLayout] = {
    "hydrogen-density": PlotLayout(("r", "alpha", "P"), x="r", y="P", group=("alpha",)),
    "hydrogen-energies": PlotLayout(
        ("n", "alpha", "E_hartree", "E_eV"), x="n", y="E_eV", group=("alpha",), style="linespoints"
    ),
    "ho-density": PlotLayout(("x", "alpha", "n", "P"), x="x", y="P", group=("n", "alpha")),
    "ho-energies": PlotLayout(
        ("n", "omega_alpha", "E"), x="n", y="E", group=("omega_alpha",), style="linespoints"
    ),
    "ho-position": PlotLayout(("n", "alpha", "x", "E"), x="x", y="E", group=("n", "alpha")),
    "staircase": PlotLayout(("x", "S"), x="x", y="S"),
    "evolve": PlotLayout(("t", "re", "im", "abs2"), x="t", y="abs2"),
}


def _group_values(table: DataTable, layout: PlotLayout) -> list[tuple[str, ...]]:
    """Distinct group keys in order of first appearance."""
    indices = [table.columns.index(name) for name in layout.group]
    seen: dict[tuple[str, ...], None] = {}
    for row in table.rows:
        seen.setdefault(tuple(format_value(row[i]) for i in indices), None)
    return list(seen)


def emit_plot_script(data_path: Union[str, Path], kind: str) -> str:
    """
    Build a gnuplot script plotting a CSV data file.

    Args:
        data_path: CSV file written by the matching command
        kind: One of PLOT_LAYOUTS

    Returns:
        Script text, deterministic for a given file

    Raises:
        ParameterError: If kind is unknown
        DataFileError: If the file is missing or has another header
    """
    layout = PLOT_LAYOUTS.get(kind)
    if layout is None:
        raise ParameterError(f"unknown plot kind {kind!r}, expected one of {', '.join(PLOT_LAYOUTS)}")

    path = Path(data_path)
    table = read_table(path)
    if table.columns != layout.columns:
        raise DataFileError(
            f"{path} has columns {','.join(table.columns)}, {kind} needs {','.join(layout.columns)}"
        )
    if path.read_text(encoding="utf-8").lstrip().startswith("["):
        raise DataFileError(f"{path} is JSON, plot scripts need CSV data")

    x_col = layout.columns.index(layout.x) + 1
    y_col = layout.columns.index(layout.y) + 1
    quoted = str(path).replace('"', '\\"')

    curves = []
    for key in _group_values(table, layout) if layout.group else [()]:
        if key:
            test = " && ".join(
                f'strcol({layout.columns.index(name) + 1}) eq "{value}"'
                for name, value in zip(layout.group, key)
            )
            using = f"{x_col}:({test} ? ${y_col} : 1/0)"
            title = " ".join(f"{name}={value}" for name, value in zip(layout.group, key))
        else:
            using = f"{x_col}:{y_col}"
            title = layout.y
        curves.append(f'"{quoted}" skip 1 using {using} with {layout.style} title "{title}"')

    lines = [
        f"# {kind}",
        'set datafile separator ","',
        f'set title "{kind}"',
        f'set xlabel "{layout.x}"',
        f'set ylabel "{layout.y}"',
        "set key outside right",
        "plot \\",
        ", \\\n".join(f"  {curve}" for curve in curves),
    ]
    return "\n".join(lines) + "\n"
