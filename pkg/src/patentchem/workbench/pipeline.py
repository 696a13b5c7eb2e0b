"""End-to-end stages: features, selection, training, ranking and OCSR runs."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ..coreid import RankingReport, TopKSummary, assemble_features, make_report, topk_metrics
from ..coreid.ranking import percent_cutoff
from ..learn import (
    BorutaConfig,
    BorutaResult,
    Continuous,
    EnsembleModel,
    FeatureMatrix,
    Integer,
    SearchSpace,
    bayes_opt,
    boruta_select,
    dumps_model,
    load_model,
    train_boosted,
    train_forest,
)
from ..learn.data import require_two_classes
from ..ocsr import BenchmarkReport, OracleEvaluator, SubprocessAdapter, TestRenderer, run_benchmark
from .bundles import PatentBundle
from .config import PipelineConfig

# ranking-loss weight added to the Top-10% miss indicator
RANK_PENALTY = 0.1

SEARCH_SPACE = SearchSpace({
    "n_trees": Integer(100, 800),
    "max_depth": Integer(2, 10),
    "mtry_fraction": Continuous(0.1, 1.0),
    "learning_rate": Continuous(0.01, 0.3),
    "rounds": Integer(50, 400),
    "reg_lambda": Continuous(0.1, 10.0),
    "forest_weight": Continuous(0.0, 1.0),
})


def bundle_features(bundle: PatentBundle, config: PipelineConfig) -> FeatureMatrix:
    """Feature rows for one patent; an unmarked compound counts as non-core."""
    X = assemble_features(
        bundle.compounds, cutoffs=config.cutoff_grid, radius=config.fp_radius, width=config.fp_width
    )
    labels = np.array([int(bool(c.is_core)) for c in bundle.compounds])
    return FeatureMatrix(X.values, X.columns, labels, X.row_ids, X.groups)


def training_matrix(bundles: Sequence[PatentBundle], config: PipelineConfig) -> FeatureMatrix:
    if not bundles:
        raise ValueError("no patents given")
    return FeatureMatrix.concat([bundle_features(b, config) for b in bundles])


def fit_ensemble(X: FeatureMatrix, params: dict, seed: int, workers: int | None = None) -> EnsembleModel:
    frac = params.get("mtry_fraction") or None
    forest_depth = params.get("forest_max_depth", params["max_depth"]) or None
    forest = train_forest(
        X, n_trees=int(params["n_trees"]), mtry=frac, max_depth=forest_depth, seed=seed, workers=workers
    )
    boosted = train_boosted(
        X,
        rounds=int(params["rounds"]),
        learning_rate=float(params["learning_rate"]),
        max_depth=int(params["max_depth"]),
        reg_lambda=float(params["reg_lambda"]),
        seed=seed,
    )
    wf = float(params.get("forest_weight", 0.5))
    return EnsembleModel(forest, boosted, (wf, 1.0 - wf))


def _patent_rows(X: FeatureMatrix) -> dict[str, np.ndarray]:
    groups = np.asarray(X.groups)
    return {g: np.flatnonzero(groups == g) for g in dict.fromkeys(X.groups)}


def rank_loss(rank: int, n: int) -> float:
    """Top-10% miss (0/1) plus a small penalty growing with the core's rank."""
    miss = float(rank > percent_cutoff(10, n))
    return miss + RANK_PENALTY * (rank - 1) / max(n - 1, 1)


def lopo_objective(X: FeatureMatrix, params: dict, seed: int, workers: int | None = None) -> float:
    """Mean held-out rank loss over leave-one-patent-out folds.

    Folds whose training part lacks a positive, or whose held-out patent has
    no core, are skipped.
    """
    losses = []
    for pid, rows in _patent_rows(X).items():
        held = X.take(rows)
        if held.labels.sum() != 1:
            continue
        train = X.take(np.setdiff1d(np.arange(X.n_rows), rows))
        if np.unique(train.labels).size < 2:
            continue
        model = fit_ensemble(train, params, seed, workers)
        report = make_report(pid, list(held.row_ids), model.predict_proba(held),
                             held.row_ids[int(np.argmax(held.labels))])
        losses.append(rank_loss(report.rank_of_core, report.n_compounds))
    if not losses:
        raise ValueError("no usable leave-one-patent-out fold")
    return float(np.mean(losses))


@dataclass(frozen=True)
class TrainResult:
    model: EnsembleModel
    artifact: str
    metadata: dict
    boruta: BorutaResult | None


def _fixed_params(config: PipelineConfig) -> dict:
    lp = config.learner
    return {
        "n_trees": lp.n_trees,
        "max_depth": lp.max_depth,
        "forest_max_depth": lp.forest_max_depth,
        "mtry_fraction": lp.mtry_fraction,
        "learning_rate": lp.learning_rate,
        "rounds": lp.rounds,
        "reg_lambda": lp.reg_lambda,
        "forest_weight": lp.forest_weight,
    }


def train_pipeline(bundles: Sequence[PatentBundle], config: PipelineConfig) -> TrainResult:
    """Features, optional Boruta filtering, optional search, final fit."""
    labeled = [b for b in bundles if b.core_id is not None]
    X = training_matrix(bundles, config)
    require_two_classes(X.labels)
    if len(labeled) < 2:
        raise ValueError("training needs at least two patents with a labeled core")
    workers = config.effective_workers
    meta: dict = {
        "config": config.to_dict(),
        "patents": [b.patent_id for b in bundles],
        "n_rows": X.n_rows,
        "all_columns": list(X.columns),
    }
    boruta = None
    if config.boruta:
        boruta = boruta_select(
            X, BorutaConfig(max_iter=config.boruta_max_iter, seed=config.seed, workers=workers)
        )
        keep = ("confirmed", "tentative") if config.keep_tentative else ("confirmed",)
        chosen = boruta.with_status(*keep)
        meta["boruta"] = {"status": boruta.status, "hit_count": boruta.hit_count,
                          "iterations_run": boruta.iterations_run}
        # an empty selection would leave nothing to learn from
        if chosen:
            X = X.select(chosen)
    if config.search:
        result = bayes_opt(
            lambda p: lopo_objective(X, p, config.seed, workers), SEARCH_SPACE, config.budget, seed=config.seed
        )
        params = dict(result.best.params)
        meta["search"] = {
            "best_value": result.best.value,
            "history": [{"params": t.params, "value": t.value} for t in result.history],
        }
    else:
        params = _fixed_params(config)
    meta["params"] = params
    model = fit_ensemble(X, params, config.seed, workers)
    return TrainResult(model, dumps_model(model, config.seed, meta), meta, boruta)


def run_train(bundles: Sequence[PatentBundle], config: PipelineConfig, out_path) -> TrainResult:
    result = train_pipeline(bundles, config)
    Path(out_path).write_text(result.artifact, encoding="utf-8")
    return result


def rank_bundle(bundle: PatentBundle, model: EnsembleModel, config: PipelineConfig) -> RankingReport:
    X = assemble_features(
        bundle.compounds, cutoffs=config.cutoff_grid, radius=config.fp_radius, width=config.fp_width
    ).select(model.columns)
    return make_report(bundle.patent_id, list(X.row_ids), model.predict_proba(X), bundle.core_id)


def run_rank(bundle: PatentBundle, model_path, config: PipelineConfig, out_dir=None) -> RankingReport:
    """Rank one patent; with ``out_dir`` also write ``<patent>.json`` and ``.md``."""
    report = rank_bundle(bundle, load_model(model_path), config)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{bundle.patent_id}.json").write_text(report.to_json(), encoding="utf-8")
        (out / f"{bundle.patent_id}.md").write_text(report.to_markdown(), encoding="utf-8")
    return report


def run_eval(bundles: Sequence[PatentBundle], model_path, config: PipelineConfig,
             include_top1_percent: bool = False) -> tuple[list[RankingReport], TopKSummary]:
    model = load_model(model_path)
    reports = [rank_bundle(b, model, config) for b in bundles]
    return reports, topk_metrics(reports, include_top1_percent)


def adapters_from_config(config: PipelineConfig):
    recognizers = [SubprocessAdapter(cmd, config.adapter_timeout) for cmd in config.recognizers]
    renderer = SubprocessAdapter(config.renderer, config.adapter_timeout) if config.renderer else TestRenderer()
    evaluator = SubprocessAdapter(config.evaluator, config.adapter_timeout) if config.evaluator else OracleEvaluator()
    return recognizers, renderer, evaluator


def run_ocsr(manifest_path, config: PipelineConfig, recognizers=None, renderer=None, evaluator=None) -> BenchmarkReport:
    """Benchmark the arbiter; adapters default to the ones in ``config``."""
    cfg_rec, cfg_ren, cfg_eval = adapters_from_config(config)
    recognizers = cfg_rec if recognizers is None else recognizers
    if not recognizers:
        raise ValueError("no recognizer configured")
    return run_benchmark(
        manifest_path, recognizers, renderer or cfg_ren, evaluator or cfg_eval,
        workers=config.effective_workers,
    )
