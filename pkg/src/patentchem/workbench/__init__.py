"""Ingestion, configuration, pipeline stages and the command-line interface."""

from .bundles import PatentBundle, bundles_from_json, bundles_to_csv, bundles_to_json, ingest_csv, read_csv_text, write_csv
from .config import CONFIG_ENV, LearnerParams, PipelineConfig, load_config, parse_config
from .pipeline import (
    SEARCH_SPACE,
    TrainResult,
    bundle_features,
    fit_ensemble,
    lopo_objective,
    rank_bundle,
    rank_loss,
    run_eval,
    run_ocsr,
    run_rank,
    run_train,
    train_pipeline,
    training_matrix,
)

__all__ = [
    "CONFIG_ENV", "LearnerParams", "PatentBundle", "PipelineConfig", "SEARCH_SPACE", "TrainResult",
    "bundle_features", "bundles_from_json", "bundles_to_csv", "bundles_to_json", "fit_ensemble",
    "ingest_csv", "load_config", "lopo_objective", "parse_config", "rank_bundle", "rank_loss",
    "read_csv_text", "run_eval", "run_ocsr", "run_rank", "run_train", "train_pipeline",
    "training_matrix", "write_csv",
]
