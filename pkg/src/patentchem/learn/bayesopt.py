"""Gaussian-process Bayesian optimization with expected improvement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.stats import norm, qmc

from ..errors import EmptySpace

N_INITIAL = 10
N_CANDIDATES = 1024
NOISE = 1e-6
LENGTHSCALES = np.logspace(-2, 1, 13)
AMPLITUDES = np.logspace(-1, 1, 9)


@dataclass(frozen=True)
class Continuous:
    lo: float
    hi: float

    def from_unit(self, u: float) -> float:
        return self.lo + u * (self.hi - self.lo)

    def to_unit(self, v: float) -> float:
        return 0.0 if self.hi == self.lo else (v - self.lo) / (self.hi - self.lo)


@dataclass(frozen=True)
class Integer:
    lo: int
    hi: int

    def from_unit(self, u: float) -> int:
        # equal-width bins so every integer is reachable
        k = int(math.floor(u * (self.hi - self.lo + 1)))
        return self.lo + min(max(k, 0), self.hi - self.lo)

    def to_unit(self, v: int) -> float:
        return (v - self.lo + 0.5) / (self.hi - self.lo + 1)


class SearchSpace:
    """Ordered mapping of parameter names to Continuous or Integer ranges."""

    def __init__(self, params: Mapping[str, Continuous | Integer]):
        if not params:
            raise EmptySpace("search space has no parameters")
        for name, p in params.items():
            if not isinstance(p, (Continuous, Integer)):
                raise TypeError(f"parameter {name!r} must be Continuous or Integer")
            if not p.lo <= p.hi:
                raise EmptySpace(f"parameter {name!r} has an empty range [{p.lo}, {p.hi}]")
        self.params = dict(params)
        self.names = tuple(self.params)

    @property
    def dim(self) -> int:
        return len(self.names)

    def decode(self, u: np.ndarray) -> dict:
        return {name: self.params[name].from_unit(float(x)) for name, x in zip(self.names, u)}

    def encode(self, assignment: Mapping) -> np.ndarray:
        return np.array([self.params[n].to_unit(assignment[n]) for n in self.names])

    def contains(self, assignment: Mapping) -> bool:
        for name in self.names:
            p, v = self.params[name], assignment[name]
            if isinstance(p, Integer) and (not isinstance(v, int) or isinstance(v, bool)):
                return False
            if not p.lo <= v <= p.hi:
                return False
        return True


@dataclass(frozen=True)
class Trial:
    index: int
    params: dict
    value: float


@dataclass(frozen=True)
class BayesOptResult:
    best: Trial
    history: tuple[Trial, ...]


def _sq_dists(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    d = (A * A).sum(1)[:, None] + (B * B).sum(1)[None, :] - 2.0 * A @ B.T
    return np.maximum(d, 0.0)


def _chol(K: np.ndarray):
    jitter = 0.0
    for _ in range(6):
        try:
            return cho_factor(K + jitter * np.eye(K.shape[0]), lower=True)
        except np.linalg.LinAlgError:
            jitter = 1e-8 if jitter == 0.0 else jitter * 10.0
    raise np.linalg.LinAlgError("kernel matrix is not positive definite")


class _GP:
    """Zero-mean GP on standardized targets, SE kernel, grid-fit by marginal likelihood."""

    def __init__(self, X: np.ndarray, y: np.ndarray):
        self.X = X
        self.mu = y.mean()
        self.sd = y.std() if y.std() > 0 else 1.0
        z = (y - self.mu) / self.sd
        D = _sq_dists(X, X)
        n = len(z)
        best = None
        for ls in LENGTHSCALES:
            base = np.exp(-0.5 * D / (ls * ls))
            for amp in AMPLITUDES:
                K = amp * amp * base + NOISE * np.eye(n)
                try:
                    c = _chol(K)
                except np.linalg.LinAlgError:
                    continue
                alpha = cho_solve(c, z)
                ll = -0.5 * z @ alpha - np.log(np.diag(c[0])).sum()
                if best is None or ll > best[0] + 1e-12:
                    best = (ll, ls, amp, c, alpha)
        _, self.ls, self.amp, self.chol, self.alpha = best

    def predict(self, Xs: np.ndarray):
        Ks = self.amp**2 * np.exp(-0.5 * _sq_dists(Xs, self.X) / (self.ls**2))
        mean = Ks @ self.alpha
        v = cho_solve(self.chol, Ks.T)
        var = np.maximum(self.amp**2 - (Ks * v.T).sum(1), 1e-18)
        return mean * self.sd + self.mu, np.sqrt(var) * self.sd


def expected_improvement(mean: np.ndarray, sd: np.ndarray, best: float) -> np.ndarray:
    """EI for minimization."""
    imp = best - mean
    z = imp / sd
    return imp * norm.cdf(z) + sd * norm.pdf(z)


def bayes_opt(
    objective: Callable[[dict], float],
    space: SearchSpace,
    budget: int,
    seed: int = 0,
    n_initial: int = N_INITIAL,
) -> BayesOptResult:
    """Minimize ``objective`` over ``space`` with ``budget`` evaluations.

    The first ``min(n_initial, budget)`` points form a Latin hypercube; every
    later point maximizes expected improvement under a GP surrogate among
    1024 uniform random candidates.  Integer parameters are decoded before
    evaluation, so the objective only ever sees in-range integers.
    """
    if not isinstance(space, SearchSpace):
        space = SearchSpace(space)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(seed)
    n0 = min(n_initial, budget)
    initial = qmc.LatinHypercube(d=space.dim, seed=rng).random(n0)
    history: list[Trial] = []
    U: list[np.ndarray] = []

    def evaluate(u: np.ndarray):
        params = space.decode(u)
        value = float(objective(params))
        if not math.isfinite(value):
            raise ValueError(f"objective returned {value} for {params}")
        history.append(Trial(len(history), params, value))
        # fit the surrogate on the point actually evaluated
        U.append(space.encode(params))

    for u in initial:
        evaluate(u)
    while len(history) < budget:
        y = np.array([t.value for t in history])
        gp = _GP(np.array(U), y)
        cand = rng.random((N_CANDIDATES, space.dim))
        mean, sd = gp.predict(cand)
        ei = expected_improvement(mean, sd, y.min())
        evaluate(cand[int(np.argmax(ei))])
    best = min(history, key=lambda t: (t.value, t.index))
    return BayesOptResult(best, tuple(history))


def random_search(objective: Callable[[dict], float], space: SearchSpace, budget: int, seed: int = 0) -> BayesOptResult:
    """Uniform random baseline with the same interface as :func:`bayes_opt`."""
    if not isinstance(space, SearchSpace):
        space = SearchSpace(space)
    rng = np.random.default_rng(seed)
    history = []
    for i in range(budget):
        params = space.decode(rng.random(space.dim))
        history.append(Trial(i, params, float(objective(params))))
    best = min(history, key=lambda t: (t.value, t.index))
    return BayesOptResult(best, tuple(history))
