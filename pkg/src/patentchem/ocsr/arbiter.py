"""Pick the best of several recognizers by re-rendering and comparing.

Each recognizer's SMILES is standardized, rendered back to a depiction and
scored against the input; the most similar candidate wins, ties going to the
earliest recognizer.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from ..chem import standardize
from ..errors import PatentChemError
from .adapters import (
    AdapterUnreachable,
    DepictionInput,
    Evaluator,
    EvaluatorProtocol,
    OracleEvaluator,
    Recognizer,
    RenderFailed,
    Renderer,
    TestRenderer,
)


class NoValidCandidate(PatentChemError):
    pass


@dataclass(frozen=True)
class RecognizerCandidate:
    model_id: int
    raw_smiles: str | None
    standardized: str | None = None
    rendered: DepictionInput | None = None
    similarity: float = 0.0
    valid: bool = False
    diagnostic: str | None = None

    def __post_init__(self):
        if self.model_id < 1:
            raise ValueError("model ids are 1-based")
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError("similarity must lie in [0, 1]")
        if not self.valid and self.similarity != 0.0:
            raise ValueError("invalid candidates have similarity 0")
        if self.valid and (self.standardized is None or self.rendered is None):
            raise ValueError("valid candidates carry standardized and rendered forms")


@dataclass(frozen=True)
class ArbiterResult:
    candidates: tuple[RecognizerCandidate, ...]
    selected_model: int
    final_smiles: str

    def to_dict(self) -> dict:
        return {
            "selected_model": self.selected_model,
            "final_smiles": self.final_smiles,
            "candidates": [
                {
                    "model_id": c.model_id,
                    "raw_smiles": c.raw_smiles,
                    "standardized": c.standardized,
                    "similarity": c.similarity,
                    "valid": c.valid,
                    "diagnostic": c.diagnostic,
                }
                for c in self.candidates
            ],
        }


def _recognize_one(model_id: int, recognizer: Recognizer, image: DepictionInput) -> RecognizerCandidate:
    try:
        raw = recognizer.recognize(image)
    except AdapterUnreachable as exc:
        return RecognizerCandidate(model_id, None, diagnostic=f"AdapterUnreachable: {exc}")
    except Exception as exc:  # a broken recognizer must not sink the batch
        return RecognizerCandidate(model_id, None, diagnostic=f"{type(exc).__name__}: {exc}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            std = standardize(raw)
    except ValueError as exc:
        return RecognizerCandidate(model_id, raw, diagnostic=f"{type(exc).__name__}: {exc}")
    return RecognizerCandidate(model_id, raw, std)


def recognize_all(
    image: DepictionInput, recognizers: Sequence[Recognizer], workers: int | None = None
) -> list[RecognizerCandidate]:
    """Consult every recognizer once; returned candidates are ordered by model id.

    Candidates that parse are standardized but not yet rendered or scored,
    so they are still marked invalid at this stage.
    """
    if not recognizers:
        raise ValueError("at least one recognizer is required")
    jobs = list(enumerate(recognizers, start=1))
    workers = min(workers or len(jobs), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(lambda job: _recognize_one(job[0], job[1], image), jobs))
    else:
        out = [_recognize_one(m, r, image) for m, r in jobs]
    return sorted(out, key=lambda c: c.model_id)


def render(smiles: str, renderer: Renderer) -> DepictionInput:
    try:
        out = renderer.render(smiles)
    except RenderFailed:
        raise
    except Exception as exc:
        raise RenderFailed(f"{type(exc).__name__}: {exc}") from exc
    if not isinstance(out, DepictionInput) or not out.payload:
        raise RenderFailed("renderer returned no image")
    return out


def score(original: DepictionInput, rendered: DepictionInput, evaluator: Evaluator) -> float:
    value = evaluator.score(original, rendered)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
        raise EvaluatorProtocol(f"similarity {value!r} outside [0, 1]")
    return float(value)


def evaluate_candidate(
    cand: RecognizerCandidate, image: DepictionInput, renderer: Renderer, evaluator: Evaluator
) -> RecognizerCandidate:
    """Render and score a standardized candidate; failures make it invalid."""
    if cand.standardized is None:
        return cand
    try:
        rendered = render(cand.standardized, renderer)
        sim = score(image, rendered, evaluator)
    except (RenderFailed, EvaluatorProtocol, AdapterUnreachable) as exc:
        return replace(cand, diagnostic=f"{type(exc).__name__}: {exc}")
    return replace(cand, rendered=rendered, similarity=sim, valid=True)


def select_best(candidates: Sequence[RecognizerCandidate]) -> ArbiterResult:
    """Highest similarity among valid candidates; ties go to the lowest model id."""
    if not candidates:
        raise ValueError("no candidates")
    ordered = sorted(candidates, key=lambda c: c.model_id)
    valid = [c for c in ordered if c.valid]
    if not valid:
        raise NoValidCandidate("every recognizer output was invalid")
    best = valid[0]
    for c in valid[1:]:
        if c.similarity > best.similarity:
            best = c
    return ArbiterResult(tuple(ordered), best.model_id, best.standardized)


def arbitrate(
    image: DepictionInput,
    recognizers: Sequence[Recognizer],
    renderer: Renderer | None = None,
    evaluator: Evaluator | None = None,
    workers: int | None = None,
) -> ArbiterResult:
    """Recognize, standardize, re-render, score and select for one image."""
    renderer = renderer or TestRenderer()
    evaluator = evaluator or OracleEvaluator()
    cands = recognize_all(image, recognizers, workers)
    scored = [evaluate_candidate(c, image, renderer, evaluator) for c in cands]
    return select_best(scored)
