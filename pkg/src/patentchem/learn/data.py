from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ColumnMismatch, DegenerateLabels


@dataclass(frozen=True)
class FeatureMatrix:
    """Rows are compounds, columns are named features.

    ``labels`` (0/1) is optional; ``row_ids`` and ``groups`` (patent ids) are
    carried along for bookkeeping.
    """

    values: np.ndarray
    columns: tuple[str, ...]
    labels: np.ndarray | None = None
    row_ids: tuple[str, ...] | None = None
    groups: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("feature values must be a 2-D array")
        if values.shape[1] != len(self.columns):
            raise ValueError(f"{values.shape[1]} value columns but {len(self.columns)} names")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column names must be unique")
        if not np.all(np.isfinite(values)):
            raise ValueError("feature values must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "columns", tuple(self.columns))
        if self.labels is not None:
            labels = np.asarray(self.labels)
            if labels.shape != (values.shape[0],):
                raise ValueError("one label per row is required")
            if not np.all((labels == 0) | (labels == 1)):
                raise ValueError("labels must be binary")
            object.__setattr__(self, "labels", labels.astype(np.int64))
        for name in ("row_ids", "groups"):
            seq = getattr(self, name)
            if seq is not None:
                if len(seq) != values.shape[0]:
                    raise ValueError(f"{name} must have one entry per row")
                object.__setattr__(self, name, tuple(seq))

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    def select(self, columns: Sequence[str]) -> "FeatureMatrix":
        """Subset and reorder columns; unlike :func:`align_columns`, extras are dropped."""
        pos = {c: i for i, c in enumerate(self.columns)}
        missing = [c for c in columns if c not in pos]
        if missing:
            raise ColumnMismatch(missing, [])
        return FeatureMatrix(
            self.values[:, [pos[c] for c in columns]], tuple(columns), self.labels, self.row_ids, self.groups
        )

    def take(self, rows) -> "FeatureMatrix":
        rows = np.asarray(rows)
        return FeatureMatrix(
            self.values[rows],
            self.columns,
            None if self.labels is None else self.labels[rows],
            None if self.row_ids is None else tuple(self.row_ids[i] for i in rows),
            None if self.groups is None else tuple(self.groups[i] for i in rows),
        )

    @classmethod
    def concat(cls, parts: Sequence["FeatureMatrix"]) -> "FeatureMatrix":
        if not parts:
            raise ValueError("nothing to concatenate")
        cols = parts[0].columns
        for p in parts:
            if p.columns != cols:
                raise ColumnMismatch(set(cols) - set(p.columns), set(p.columns) - set(cols))
        labels = None
        if all(p.labels is not None for p in parts):
            labels = np.concatenate([p.labels for p in parts])
        row_ids = None
        if all(p.row_ids is not None for p in parts):
            row_ids = tuple(r for p in parts for r in p.row_ids)
        groups = None
        if all(p.groups is not None for p in parts):
            groups = tuple(g for p in parts for g in p.groups)
        return cls(np.vstack([p.values for p in parts]), cols, labels, row_ids, groups)


def align_columns(X: FeatureMatrix, columns: Sequence[str]) -> np.ndarray:
    """Values of ``X`` reordered to ``columns``; raises ColumnMismatch otherwise."""
    have = list(X.columns)
    want = list(columns)
    if have == want:
        return X.values
    missing = [c for c in want if c not in have]
    extra = [c for c in have if c not in want]
    if missing or extra:
        raise ColumnMismatch(missing, extra)
    pos = {c: i for i, c in enumerate(have)}
    return X.values[:, [pos[c] for c in want]]


def require_two_classes(labels) -> np.ndarray:
    if labels is None:
        raise DegenerateLabels("training requires labels")
    y = np.asarray(labels)
    if y.size == 0 or np.unique(y).size < 2:
        raise DegenerateLabels("labels contain a single class")
    return y
