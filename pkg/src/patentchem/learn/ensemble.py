from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trees import BoostedModel, ForestModel


@dataclass
class EnsembleModel:
    """Weighted mean of a forest and a boosted model."""

    forest: ForestModel
    boosted: BoostedModel
    weights: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self):
        wf, wb = (float(w) for w in self.weights)
        if wf < 0 or wb < 0 or wf + wb <= 0:
            raise ValueError("ensemble weights must be non-negative and not both zero")
        total = wf + wb
        self.weights = (wf / total, wb / total)
        if tuple(self.forest.columns) != tuple(self.boosted.columns):
            raise ValueError("sub-models were trained on different columns")

    @property
    def columns(self) -> tuple[str, ...]:
        return self.forest.columns

    def predict_proba(self, X) -> np.ndarray:
        wf, wb = self.weights
        if wb == 0.0:
            return self.forest.predict_proba(X)
        if wf == 0.0:
            return self.boosted.predict_proba(X)
        return wf * self.forest.predict_proba(X) + wb * self.boosted.predict_proba(X)


def predict_proba(model, X) -> np.ndarray:
    """Per-row probability of the positive class for any of the model types."""
    return model.predict_proba(X)
