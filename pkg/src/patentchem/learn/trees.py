"""Random forest and Newton-boosted trees for binary targets."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ..errors import DegenerateLabels
from .data import FeatureMatrix, align_columns, require_two_classes


@dataclass(frozen=True)
class Tree:
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def predict(self, X: np.ndarray) -> np.ndarray:
        return _kernels.predict_tree(
            self.feature, self.threshold, self.left, self.right, self.value,
            np.ascontiguousarray(X, dtype=np.float64),
        )

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    def depth(self) -> int:
        depth = [0] * self.n_nodes
        for i in range(self.n_nodes):
            if self.feature[i] >= 0:
                depth[self.left[i]] = depth[self.right[i]] = depth[i] + 1
        return max(depth)

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        return cls(
            np.asarray(d["feature"], dtype=np.int64),
            np.asarray(d["threshold"], dtype=np.float64),
            np.asarray(d["left"], dtype=np.int64),
            np.asarray(d["right"], dtype=np.int64),
            np.asarray(d["value"], dtype=np.float64),
        )


def default_workers() -> int:
    return os.cpu_count() or 1


def _as_arrays(X, y=None):
    if isinstance(X, FeatureMatrix):
        if y is None:
            y = X.labels
        columns = X.columns
        X = X.values
    else:
        X = np.asarray(X, dtype=np.float64)
        columns = tuple(f"x{i}" for i in range(X.shape[1]))
    return np.ascontiguousarray(X, dtype=np.float64), y, columns


def _class_weights(y: np.ndarray, class_weight) -> np.ndarray:
    if class_weight is None:
        return np.ones(y.shape[0])
    if class_weight == "balanced":
        n = y.shape[0]
        pos = y.sum()
        w = np.where(y == 1, n / (2.0 * pos), n / (2.0 * (n - pos)))
        return w.astype(np.float64)
    w1 = float(class_weight.get(1, 1.0))
    w0 = float(class_weight.get(0, 1.0))
    return np.where(y == 1, w1, w0).astype(np.float64)


def _mtry(mtry, p: int) -> int:
    if mtry is None:
        return max(1, int(math.isqrt(p)))
    if isinstance(mtry, float) and not float(mtry).is_integer() or isinstance(mtry, float) and mtry <= 1.0:
        return min(p, max(1, int(round(mtry * p))))
    return min(p, max(1, int(mtry)))


@dataclass
class ForestModel:
    trees: list[Tree]
    columns: tuple[str, ...]
    params: dict
    seed: int
    feature_importances: np.ndarray = field(repr=False)
    oob_importances: np.ndarray | None = field(default=None, repr=False, compare=False)

    def predict_proba(self, X) -> np.ndarray:
        values = align_columns(X, self.columns) if isinstance(X, FeatureMatrix) else np.asarray(X)
        values = np.ascontiguousarray(values, dtype=np.float64)
        out = np.zeros(values.shape[0])
        for tree in self.trees:
            out += tree.predict(values)
        return np.clip(out / len(self.trees), 0.0, 1.0)

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "seed": self.seed,
            "feature_importances": self.feature_importances.tolist(),
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, d: dict, columns) -> "ForestModel":
        return cls(
            [Tree.from_dict(t) for t in d["trees"]],
            tuple(columns),
            dict(d["params"]),
            int(d["seed"]),
            np.asarray(d["feature_importances"], dtype=np.float64),
        )


def train_forest(
    X,
    y=None,
    *,
    n_trees: int = 500,
    mtry=None,
    max_depth: int | None = None,
    min_leaf: int = 1,
    bootstrap: bool = True,
    class_weight=None,
    seed: int = 0,
    workers: int | None = None,
) -> ForestModel:
    """Random forest of Gini trees.

    ``mtry`` is a feature count, a fraction in (0, 1], or None for
    ``floor(sqrt(p))``.  Tree ``t`` draws its bootstrap sample and feature
    subsets from the ``t``-th child of ``SeedSequence(seed)``, so the model
    does not depend on ``workers``.
    """
    Xv, y, columns = _as_arrays(X, y)
    # a single class is allowed here: every leaf is pure and predicts it
    if y is None or np.asarray(y).size == 0:
        raise DegenerateLabels("training requires labels")
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != Xv.shape[0]:
        raise ValueError("one label per row is required")
    n, p = Xv.shape
    k = _mtry(mtry, p)
    weights = _class_weights(y.astype(np.int64), class_weight) if np.unique(y).size == 2 else np.ones(n)
    depth = -1 if max_depth is None else int(max_depth)
    children = np.random.SeedSequence(seed).spawn(n_trees)

    def grow(t: int):
        rng = np.random.default_rng(children[t])
        if bootstrap:
            counts = np.bincount(rng.integers(0, n, n), minlength=n).astype(np.float64)
        else:
            counts = np.ones(n)
        rows = np.flatnonzero(counts > 0).astype(np.int64)
        w = counts * weights
        wy = w * y
        kernel_seed = int(rng.integers(0, 2**31 - 1))
        out = _kernels.build_tree(Xv, w, wy, rows, _kernels.GINI, depth, int(min_leaf), k, 0.0, kernel_seed)
        oob = None
        if bootstrap:
            held = np.flatnonzero(counts == 0).astype(np.int64)
            oob = _kernels.oob_importance(out[0], out[1], out[2], out[3], Xv, y, held, p)
        return Tree(*out[:5]), out[5], oob

    workers = workers or default_workers()
    if workers > 1 and n_trees > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(grow, range(n_trees)))
    else:
        results = [grow(t) for t in range(n_trees)]
    importances = np.zeros(p)
    for _, imp, _ in results:
        total = imp.sum()
        if total > 0:
            importances += imp / total
    importances /= n_trees
    oob_importances = None
    if bootstrap:
        oob_importances = sum(r[2] for r in results) / (n * n_trees)
    params = {
        "n_trees": n_trees,
        "mtry": k,
        "max_depth": max_depth,
        "min_leaf": min_leaf,
        "bootstrap": bootstrap,
        "class_weight": class_weight,
    }
    return ForestModel([r[0] for r in results], tuple(columns), params, seed, importances, oob_importances)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def log_loss(y: np.ndarray, p: np.ndarray, weights: np.ndarray | None = None) -> float:
    p = np.clip(p, 1e-15, 1 - 1e-15)
    losses = -(y * np.log(p) + (1 - y) * np.log1p(-p))
    if weights is None:
        return float(losses.mean())
    return float((weights * losses).sum() / weights.sum())


@dataclass
class BoostedModel:
    trees: list[Tree]
    columns: tuple[str, ...]
    base_score: float
    learning_rate: float
    params: dict
    seed: int
    train_loss: list[float] = field(default_factory=list, repr=False)

    def decision_function(self, X) -> np.ndarray:
        values = align_columns(X, self.columns) if isinstance(X, FeatureMatrix) else np.asarray(X)
        values = np.ascontiguousarray(values, dtype=np.float64)
        margin = np.full(values.shape[0], self.base_score)
        for tree in self.trees:
            margin += self.learning_rate * tree.predict(values)
        return margin

    def predict_proba(self, X) -> np.ndarray:
        return _sigmoid(self.decision_function(X))

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "seed": self.seed,
            "base_score": self.base_score,
            "learning_rate": self.learning_rate,
            "train_loss": self.train_loss,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, d: dict, columns) -> "BoostedModel":
        return cls(
            [Tree.from_dict(t) for t in d["trees"]],
            tuple(columns),
            float(d["base_score"]),
            float(d["learning_rate"]),
            dict(d["params"]),
            int(d["seed"]),
            list(d.get("train_loss", [])),
        )


def train_boosted(
    X,
    y=None,
    *,
    rounds: int = 200,
    learning_rate: float = 0.1,
    max_depth: int = 6,
    reg_lambda: float = 1.0,
    min_leaf: int = 1,
    class_weight=None,
    seed: int = 0,
) -> BoostedModel:
    """Second-order boosting on the logistic loss.

    Starts from the prior log-odds; every round fits a tree to the current
    gradients and hessians with leaf values ``-G / (H + lambda)`` and adds it
    scaled by ``learning_rate``.  All features are scanned at every split.
    """
    Xv, y, columns = _as_arrays(X, y)
    y = require_two_classes(y).astype(np.float64)
    n, p = Xv.shape
    w = _class_weights(y.astype(np.int64), class_weight)
    prior = float(np.clip((w * y).sum() / w.sum(), 1e-12, 1 - 1e-12))
    base = math.log(prior / (1.0 - prior))
    margin = np.full(n, base)
    rows = np.arange(n, dtype=np.int64)
    seeds = np.random.SeedSequence(seed).generate_state(max(rounds, 1))
    trees = []
    losses = [log_loss(y, _sigmoid(margin), w)]
    for t in range(rounds):
        prob = _sigmoid(margin)
        grad = w * (prob - y)
        hess = w * prob * (1.0 - prob)
        out = _kernels.build_tree(
            Xv, hess, grad, rows, _kernels.NEWTON, int(max_depth), int(min_leaf), p,
            float(reg_lambda), int(seeds[t] & 0x7FFFFFFF),
        )
        tree = Tree(*out[:5])
        trees.append(tree)
        margin = margin + learning_rate * tree.predict(Xv)
        losses.append(log_loss(y, _sigmoid(margin), w))
    params = {
        "rounds": rounds,
        "learning_rate": learning_rate,
        "max_depth": max_depth,
        "reg_lambda": reg_lambda,
        "min_leaf": min_leaf,
        "class_weight": class_weight,
    }
    return BoostedModel(trees, tuple(columns), base, float(learning_rate), params, seed, losses)
