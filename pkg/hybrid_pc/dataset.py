"""Observational dataset type and its CSV format."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from hybrid_pc.exceptions import DatasetFormatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    An n_samples x n_vars matrix of finite reals with named columns.

    The values array is copied on construction and made read-only so a
    Dataset can be shared between worker threads.
    """

    columns: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        columns = tuple(str(c).strip() for c in self.columns)
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise DatasetFormatError(f"Dataset values must be 2-D, got shape {values.shape}")
        if values.shape[1] != len(columns):
            raise DatasetFormatError(
                f"{len(columns)} column name(s) for {values.shape[1]} column(s) of data"
            )
        if len(set(columns)) != len(columns):
            dupes = sorted({c for c in columns if columns.count(c) > 1})
            raise DatasetFormatError(f"Duplicate column name(s): {', '.join(dupes)}")
        if values.shape[0] < 2:
            raise DatasetFormatError(f"Dataset needs at least 2 samples, got {values.shape[0]}")
        if not np.isfinite(values).all():
            raise DatasetFormatError("Dataset contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_vars(self) -> int:
        return int(self.values.shape[1])

    def index(self, name: str) -> int:
        try:
            return self.columns.index(name.strip())
        except ValueError:
            raise DatasetFormatError(f"Unknown column: {name}") from None

    def indices(self, names: Iterable[str]) -> list[int]:
        return [self.index(n) for n in names]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.index(name)]

    def select(self, names: Sequence[str]) -> "Dataset":
        """Dataset restricted to the given columns, in the given order."""
        return Dataset(tuple(names), self.values[:, self.indices(names)])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, columns=list(self.columns))

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Dataset":
        return cls(tuple(str(c) for c in frame.columns), frame.to_numpy(dtype=np.float64))

    @classmethod
    def from_csv(cls, path: str | Path) -> "Dataset":
        """
        Read a dataset from CSV: a header row of names, then rows of decimal reals.

        Raises:
            DatasetFormatError: On ragged rows, non-numeric cells or non-finite values
        """
        try:
            raw = pd.read_csv(
                path, header=None, dtype=str, keep_default_na=False, skipinitialspace=True
            )
        except FileNotFoundError:
            raise DatasetFormatError(f"Dataset file not found: {path}") from None
        except pd.errors.EmptyDataError:
            raise DatasetFormatError(f"Dataset file is empty: {path}") from None
        except pd.errors.ParserError as e:
            raise DatasetFormatError(f"Malformed CSV in {path}: {e}") from e

        # header is read as data so duplicate names are not silently renamed
        columns = [str(c).strip() for c in raw.iloc[0]]
        frame = raw.iloc[1:].reset_index(drop=True)
        if frame.isna().to_numpy().any():
            raise DatasetFormatError(f"Ragged rows in {path}: some rows have too few cells")

        numeric = []
        for col, name in zip(frame.columns, columns):
            cells = frame[col].str.strip()
            parsed = pd.to_numeric(cells, errors="coerce")
            if parsed.isna().any():
                row = int(np.flatnonzero(parsed.isna().to_numpy())[0])
                raise DatasetFormatError(
                    f"Non-numeric cell {frame[col].iloc[row]!r} in column '{name}' "
                    f"(data row {row + 1}) of {path}"
                )
            numeric.append(parsed.to_numpy(dtype=np.float64))

        values = np.column_stack(numeric) if numeric else np.empty((len(frame), 0))
        logger.info(f"Loaded dataset {path}: {values.shape[0]} rows x {values.shape[1]} columns")
        return cls(tuple(columns), values)

    def to_csv(self, path: str | Path) -> None:
        """Write the dataset as CSV with round-trip float precision."""
        self.to_frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
