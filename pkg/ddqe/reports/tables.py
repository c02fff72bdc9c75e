"""CSV tables with a units row, written byte-for-byte deterministically."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from ..exceptions import DomainError, InvalidConfigError


@dataclass
class CsvTable:
    """Rectangular table: header row, units row, data rows.

    Floats are written in their shortest round-trip representation with '.' as the
    decimal separator and '\\n' line endings.
    """

    name: str
    frame: pd.DataFrame
    units: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.frame.columns.duplicated().any():
            raise InvalidConfigError(f"table {self.name} has duplicate columns", key="columns")
        unknown = set(self.units) - set(self.frame.columns)
        if unknown:
            raise InvalidConfigError(f"units given for unknown columns {sorted(unknown)}", key="units")
        # label columns (suite and check names) are allowed; numbers must be finite
        numeric = self.frame.select_dtypes(include=[np.number])
        if not np.isfinite(numeric.to_numpy(dtype=float)).all():
            raise DomainError(f"table {self.name} has non-finite entries")

    @classmethod
    def from_columns(
        cls, name: str, columns: dict[str, np.ndarray], units: dict[str, str] | None = None
    ) -> CsvTable:
        return cls(name, pd.DataFrame({k: np.asarray(v) for k, v in columns.items()}), dict(units or {}))

    @property
    def columns(self) -> list[str]:
        return [str(c) for c in self.frame.columns]

    @property
    def empty(self) -> bool:
        return self.frame.empty

    def column(self, name: str) -> np.ndarray:
        if name not in self.frame.columns:
            raise InvalidConfigError(f"table {self.name} has no column {name!r}", key=name)
        return self.frame[name].to_numpy()

    def unit(self, name: str) -> str:
        return self.units.get(name, "")

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        buf.write(",".join(self.unit(c) for c in self.columns) + "\n")
        self.frame.to_csv(buf, header=False, index=False, lineterminator="\n")
        return buf.getvalue()

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(self.to_csv_text())
        return path

    @classmethod
    def read(cls, path: str | Path) -> CsvTable:
        path = Path(path)
        units_row = pd.read_csv(path, nrows=1, dtype=str, keep_default_na=False)
        frame = pd.read_csv(path, skiprows=[1])
        units = {str(k): str(v) for k, v in units_row.iloc[0].items() if v} if len(units_row) else {}
        return cls(path.stem, frame, units)
