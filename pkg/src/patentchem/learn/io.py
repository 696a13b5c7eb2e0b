"""Versioned JSON persistence for ensemble models."""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import SchemaVersionError
from .ensemble import EnsembleModel
from .trees import BoostedModel, ForestModel

SCHEMA_VERSION = 1


def model_to_dict(model: EnsembleModel, seed: int = 0, metadata: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "feature_columns": list(model.columns),
        "forest": model.forest.to_dict(),
        "boosted": model.boosted.to_dict(),
        "weights": list(model.weights),
        "seed": seed,
        "training_metadata": metadata or {},
    }


def dumps_model(model: EnsembleModel, seed: int = 0, metadata: dict | None = None) -> str:
    # sorted keys and repr floats make the text a pure function of the model
    return json.dumps(model_to_dict(model, seed, metadata), sort_keys=True, separators=(",", ":")) + "\n"


def model_from_dict(doc: dict) -> EnsembleModel:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported model schema_version {version!r} (expected {SCHEMA_VERSION})")
    cols = doc["feature_columns"]
    return EnsembleModel(
        ForestModel.from_dict(doc["forest"], cols),
        BoostedModel.from_dict(doc["boosted"], cols),
        tuple(doc["weights"]),
    )


def save_model(model: EnsembleModel, path, seed: int = 0, metadata: dict | None = None) -> Path:
    path = Path(path)
    path.write_text(dumps_model(model, seed, metadata), encoding="utf-8")
    return path


def load_model(path) -> EnsembleModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def load_metadata(path) -> dict:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return doc.get("training_metadata", {})
