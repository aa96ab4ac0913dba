# python-ai/olrwa/data_io.py
"""CSV ingestion and column selection for the real-dataset experiments."""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import FieldCountMismatch, MissingColumn, ParseError
from .regression_core import DataBatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CsvSpec:
    path: str
    target: str
    features: Tuple[str, ...]
    shuffle_seed: Optional[int] = None

    def __post_init__(self):
        features = tuple(self.features)
        object.__setattr__(self, 'features', features)
        if not features:
            raise ValueError("At least one feature column is required")
        if self.target in features:
            raise ValueError(f"Target column '{self.target}' is also listed as a feature")
        if len(set(features)) != len(features):
            raise ValueError(f"Duplicate feature columns: {list(features)}")


def parse_feature_list(value: str) -> Tuple[str, ...]:
    """'a, b,c' -> ('a', 'b', 'c')"""
    return tuple(name.strip() for name in value.split(',') if name.strip())


def _parse_column(frame: pd.DataFrame, column: str, path: str) -> np.ndarray:
    raw = frame[column]
    values = pd.to_numeric(raw.str.strip(), errors='coerce').to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        row = int(bad[0])
        raise ParseError(row, column, raw.iloc[row], path=path)
    return values


def _check_field_counts(path: Path):
    """Every non-blank row must have as many fields as the header."""
    with open(path, newline='', encoding='utf-8') as f:
        rows = (fields for fields in csv.reader(f, skipinitialspace=True) if fields)
        header = next(rows, None)
        if header is None:
            return
        for row, fields in enumerate(rows):
            if len(fields) != len(header):
                raise FieldCountMismatch(row, len(header), len(fields), path=str(path))


def load_csv(spec: CsvSpec) -> DataBatch:
    """Read the selected columns of a headed, comma-separated UTF-8 file.

    Rows come back in file order unless ``shuffle_seed`` is set, in which case
    they are permuted with numpy's PCG64 generator seeded by it.

    Raises:
        FileNotFoundError: the file does not exist.
        MissingColumn: a requested column is not in the header.
        ParseError: a selected cell is not a finite decimal number.
        FieldCountMismatch: a row does not have as many fields as the header.
    """
    path = Path(spec.path)
    if not path.is_file():
        raise FileNotFoundError(f"Dataset file not found: {spec.path}")

    _check_field_counts(path)
    # everything as text so that bad cells are reported instead of silently coerced
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding='utf-8',
                        skipinitialspace=True, index_col=False)
    frame.columns = [str(c).strip() for c in frame.columns]

    for column in (*spec.features, spec.target):
        if column not in frame.columns:
            raise MissingColumn(column, path=str(path))

    features = np.column_stack([_parse_column(frame, c, str(path)) for c in spec.features])
    targets = _parse_column(frame, spec.target, str(path))
    batch = DataBatch(features.reshape(len(frame), len(spec.features)), targets)

    if spec.shuffle_seed is not None:
        order = np.random.default_rng(spec.shuffle_seed).permutation(batch.size)
        batch = batch.take(order)
    logger.debug(f"Loaded {batch.size} rows x {batch.dimension} feature(s) from {path}")
    return batch


def load_columns(path: str, target: str, features: Sequence[str],
                 shuffle_seed: Optional[int] = None) -> DataBatch:
    return load_csv(CsvSpec(path, target, tuple(features), shuffle_seed))
