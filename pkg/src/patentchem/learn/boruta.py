"""All-relevant feature selection against permuted shadow features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from ..errors import TooFewRows
from .data import FeatureMatrix, require_two_classes
from .trees import train_forest

CONFIRMED = "confirmed"
REJECTED = "rejected"
TENTATIVE = "tentative"

MIN_ROWS = 20


@dataclass(frozen=True)
class BorutaConfig:
    max_iter: int = 100
    alpha: float = 0.05
    n_trees: int = 10
    max_depth: int | None = None
    seed: int = 0
    workers: int | None = None


@dataclass(frozen=True)
class BorutaResult:
    columns: tuple[str, ...]
    status: dict[str, str]
    hit_count: dict[str, int]
    iterations_run: int

    def with_status(self, *wanted: str) -> tuple[str, ...]:
        return tuple(c for c in self.columns if self.status[c] in wanted)

    @property
    def confirmed(self) -> tuple[str, ...]:
        return self.with_status(CONFIRMED)

    @property
    def rejected(self) -> tuple[str, ...]:
        return self.with_status(REJECTED)

    @property
    def tentative(self) -> tuple[str, ...]:
        return self.with_status(TENTATIVE)


def boruta_select(X: FeatureMatrix, config: BorutaConfig | None = None) -> BorutaResult:
    """Classify every column as confirmed, rejected or tentative.

    Each iteration appends a row-shuffled copy of every column, trains a
    forest and scores a hit for each real column whose impurity importance
    beats the best shadow.  After every iteration the hit count of each
    undecided column is tested against Binomial(n, 1/2).  The two-sided level
    ``alpha`` is split (Bonferroni) over the ``m`` columns and the
    ``max_iter`` looks at the data, so each tail is compared with
    ``alpha / (2 m max_iter)``.  Decisions are final; the loop ends early once
    nothing is undecided.
    """
    config = config or BorutaConfig()
    y = require_two_classes(X.labels)
    n, m = X.values.shape
    if n < MIN_ROWS:
        raise TooFewRows(f"boruta needs at least {MIN_ROWS} rows, got {n}")
    rng = np.random.default_rng(config.seed)
    hits = np.zeros(m, dtype=np.int64)
    status = np.array([TENTATIVE] * m, dtype=object)
    undecided = np.ones(m, dtype=bool)
    threshold = config.alpha / (2.0 * m * config.max_iter)
    iterations = 0
    for it in range(config.max_iter):
        shadow = X.values.copy()
        for j in range(m):
            shadow[:, j] = shadow[rng.permutation(n), j]
        both = np.hstack([X.values, shadow])
        forest = train_forest(
            both, y, n_trees=config.n_trees, max_depth=config.max_depth,
            seed=int(rng.integers(0, 2**63 - 1)), workers=config.workers,
        )
        imp = forest.oob_importances
        hits += imp[:m] > imp[m:].max()
        iterations = it + 1
        upper = binom.sf(hits - 1, iterations, 0.5)  # P(H >= hits)
        lower = binom.cdf(hits, iterations, 0.5)  # P(H <= hits)
        accept = undecided & (upper < threshold)
        reject = undecided & (lower < threshold)
        status[accept] = CONFIRMED
        status[reject] = REJECTED
        undecided &= ~(accept | reject)
        if not undecided.any():
            break
    cols = X.columns
    return BorutaResult(
        cols,
        {c: str(status[j]) for j, c in enumerate(cols)},
        {c: int(hits[j]) for j, c in enumerate(cols)},
        iterations,
    )
