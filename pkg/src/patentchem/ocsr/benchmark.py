"""Accuracy harness over a JSON-lines manifest of images and true SMILES."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..chem import standardize
from .adapters import Evaluator, Recognizer, Renderer, sniff
from .arbiter import ArbiterResult, NoValidCandidate, arbitrate


@dataclass(frozen=True)
class BenchmarkItem:
    image_path: str
    truth_smiles: str
    result: ArbiterResult | None = None
    correct: bool = False
    solo_correct: tuple[bool, ...] = ()
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "image_path": self.image_path,
            "truth_smiles": self.truth_smiles,
            "correct": self.correct,
            "solo_correct": list(self.solo_correct),
            "error": self.error,
            "result": None if self.result is None else self.result.to_dict(),
        }


@dataclass(frozen=True)
class BenchmarkReport:
    items: tuple[BenchmarkItem, ...]
    n_models: int
    accuracy: float = field(init=False)
    solo_accuracies: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.items)
        acc = sum(i.correct for i in self.items) / n if n else 0.0
        solo = tuple(
            sum(1 for i in self.items if i.solo_correct and i.solo_correct[m]) / n if n else 0.0
            for m in range(self.n_models)
        )
        object.__setattr__(self, "accuracy", acc)
        object.__setattr__(self, "solo_accuracies", solo)

    def to_dict(self) -> dict:
        return {
            "n_images": len(self.items),
            "accuracy": self.accuracy,
            "solo_accuracies": {f"model_{m + 1}": a for m, a in enumerate(self.solo_accuracies)},
            "n_errors": sum(1 for i in self.items if i.error),
            "items": [i.to_dict() for i in self.items],
        }

    def to_markdown(self) -> str:
        lines = ["| Method | Accuracy (%) |", "|---|---|"]
        for m, a in enumerate(self.solo_accuracies, 1):
            lines.append(f"| model {m} | {100 * a:.2f} |")
        lines.append(f"| arbiter | {100 * self.accuracy:.2f} |")
        errors = [i for i in self.items if i.error]
        if errors:
            lines += ["", "Failed items:", ""]
            lines += [f"- {i.image_path}: {i.error}" for i in errors]
        return "\n".join(lines) + "\n"


def read_manifest(path) -> list[dict]:
    out = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"manifest line {n}: {exc}") from exc
        if not isinstance(entry, dict) or "image_path" not in entry or "truth_smiles" not in entry:
            raise ValueError(f"manifest line {n}: expected image_path and truth_smiles")
        out.append(entry)
    return out


def _canon(smiles: str | None) -> str | None:
    if smiles is None:
        return None
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return standardize(smiles)
    except ValueError:
        return None


def run_benchmark(
    manifest_path,
    recognizers: Sequence[Recognizer],
    renderer: Renderer | None = None,
    evaluator: Evaluator | None = None,
    workers: int | None = None,
) -> BenchmarkReport:
    """Arbiter accuracy plus each recognizer's solo accuracy.

    A prediction counts when its standardized form equals the standardized
    truth.  Per-image failures become error entries and the run continues.
    """
    if not recognizers:
        raise ValueError("at least one recognizer is required")
    base = Path(manifest_path).parent
    items = []
    for entry in read_manifest(manifest_path):
        path, truth = entry["image_path"], entry["truth_smiles"]
        target = _canon(truth)
        full = Path(path) if Path(path).is_absolute() else base / path
        try:
            image = sniff(full.read_bytes(), str(full))
        except OSError as exc:
            items.append(BenchmarkItem(path, truth, error=f"unreadable image: {exc}"))
            continue
        try:
            result = arbitrate(image, recognizers, renderer, evaluator, workers)
        except NoValidCandidate as exc:
            items.append(BenchmarkItem(path, truth, error=f"NoValidCandidate: {exc}",
                                       solo_correct=(False,) * len(recognizers)))
            continue
        except ValueError as exc:
            items.append(BenchmarkItem(path, truth, error=f"{type(exc).__name__}: {exc}"))
            continue
        solo = tuple(target is not None and c.standardized == target for c in result.candidates)
        items.append(BenchmarkItem(path, truth, result, target is not None and result.final_smiles == target, solo))
    return BenchmarkReport(tuple(items), len(recognizers))
