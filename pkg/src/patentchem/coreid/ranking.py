"""Within-patent core ranking and Top-k bookkeeping."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import UnlabeledReport
from .features import CompoundRecord, assemble_features

TOP_COUNTS = (1, 5, 10)
TOP_PERCENTS = (5, 10)
EXTRA_PERCENT = 1

METRIC_COLUMNS = ("Top 1", "Top 5", "Top 10", "Top 5%", "Top 10%")


def percent_cutoff(pct: int, n: int) -> int:
    """``ceil(pct * n / 100)`` in integer arithmetic, so 10% of 10 is 1."""
    return -(-pct * n // 100)


@dataclass(frozen=True)
class RankingReport:
    patent_id: str
    ranked: tuple[tuple[str, float], ...]
    rank_of_core: int | None = None

    def __post_init__(self):
        probs = [p for _, p in self.ranked]
        if any(b > a for a, b in zip(probs, probs[1:])):
            raise ValueError("probabilities must be in descending order")
        for (ia, pa), (ib, pb) in zip(self.ranked, self.ranked[1:]):
            if pa == pb and ia > ib:
                raise ValueError("tied probabilities must be ordered by compound id")
        if self.rank_of_core is not None and not 1 <= self.rank_of_core <= len(self.ranked):
            raise ValueError("rank_of_core out of range")

    @property
    def n_compounds(self) -> int:
        return len(self.ranked)

    @property
    def labeled(self) -> bool:
        return self.rank_of_core is not None

    def hit(self, k: int) -> bool | None:
        return None if self.rank_of_core is None else self.rank_of_core <= k

    def hit_percent(self, pct: int) -> bool | None:
        return self.hit(percent_cutoff(pct, self.n_compounds))

    @property
    def top1(self):
        return self.hit(1)

    @property
    def top5(self):
        return self.hit(5)

    @property
    def top10(self):
        return self.hit(10)

    @property
    def top5pct(self):
        return self.hit_percent(5)

    @property
    def top10pct(self):
        return self.hit_percent(10)

    @property
    def top1pct(self):
        return self.hit_percent(EXTRA_PERCENT)

    def flags(self) -> dict[str, bool] | None:
        if not self.labeled:
            return None
        return dict(zip(METRIC_COLUMNS, (self.top1, self.top5, self.top10, self.top5pct, self.top10pct)))

    def to_dict(self) -> dict:
        return {
            "patent_id": self.patent_id,
            "ranked": [{"rank": i, "compound_id": c, "probability": p} for i, (c, p) in enumerate(self.ranked, 1)],
            "rank_of_core": self.rank_of_core,
            "metrics": self.flags(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "RankingReport":
        ranked = tuple((r["compound_id"], float(r["probability"])) for r in d["ranked"])
        return cls(d["patent_id"], ranked, d.get("rank_of_core"))

    def to_markdown(self) -> str:
        lines = [f"## Patent {self.patent_id}", ""]
        if self.labeled:
            lines += [
                f"Core compound rank: {self.rank_of_core} of {self.n_compounds}",
                "",
                "| " + " | ".join(METRIC_COLUMNS) + " |",
                "|" + "---|" * len(METRIC_COLUMNS),
                "| " + " | ".join("1" if v else "0" for v in self.flags().values()) + " |",
                "",
            ]
        lines += ["| Rank | Compound | Probability |", "|---|---|---|"]
        for i, (cid, p) in enumerate(self.ranked, 1):
            lines.append(f"| {i} | {cid} | {p:.4f} |")
        return "\n".join(lines) + "\n"


def make_report(patent_id: str, ids: Sequence[str], probabilities, core_id: str | None = None) -> RankingReport:
    """Sort by probability (descending), ties by compound id (ascending)."""
    probs = np.asarray(probabilities, dtype=np.float64)
    if len(ids) != probs.shape[0]:
        raise ValueError("one probability per compound is required")
    order = sorted(range(len(ids)), key=lambda i: (-probs[i], ids[i]))
    ranked = tuple((ids[i], float(probs[i])) for i in order)
    rank = None
    if core_id is not None:
        rank = 1 + [cid for cid, _ in ranked].index(core_id)
    return RankingReport(patent_id, ranked, rank)


def rank_core(compounds: Sequence[CompoundRecord], model, **feature_kwargs) -> RankingReport:
    """Rank the compounds of one patent by the model's core probability."""
    patents = {c.patent_id for c in compounds}
    if len(patents) != 1:
        raise ValueError("rank_core expects compounds from exactly one patent")
    X = assemble_features(compounds, **feature_kwargs)
    columns = getattr(model, "columns", None)
    if columns is not None:
        # models trained on a selected subset ignore the remaining columns
        X = X.select(columns)
    probs = model.predict_proba(X)
    cores = [c.compound_id for c in compounds if c.is_core]
    if len(cores) > 1:
        raise ValueError("more than one compound is marked as core")
    return make_report(patents.pop(), [c.compound_id for c in compounds], probs, cores[0] if cores else None)


@dataclass(frozen=True)
class TopKSummary:
    n_patents: int
    percentages: dict[str, float]

    def to_dict(self) -> dict:
        return {"n_patents": self.n_patents, "percentages": self.percentages}

    def to_markdown(self, label: str = "model") -> str:
        cols = list(self.percentages)
        return "\n".join([
            "| Method | " + " | ".join(cols) + " |",
            "|---|" + "---|" * len(cols),
            f"| {label} | " + " | ".join(f"{self.percentages[c]:.2f}" for c in cols) + " |",
        ]) + "\n"


def _pct(hits: int, n: int) -> float:
    # half-up on the exact ratio so that e.g. 1/32 prints as 3.13
    exact = Fraction(100 * hits, n)
    return float(
        (Decimal(exact.numerator) / Decimal(exact.denominator)).quantize(Decimal("0.01"), ROUND_HALF_UP)
    )


def topk_metrics(reports: Sequence[RankingReport], include_top1_percent: bool = False) -> TopKSummary:
    """Percentage of patents whose core lands in each Top-k window, to 2 decimals."""
    if not reports:
        raise ValueError("no reports given")
    for r in reports:
        if not r.labeled:
            raise UnlabeledReport(f"patent {r.patent_id} has no labeled core")
    n = len(reports)
    out = {
        "Top 1": _pct(sum(r.top1 for r in reports), n),
        "Top 5": _pct(sum(r.top5 for r in reports), n),
        "Top 10": _pct(sum(r.top10 for r in reports), n),
    }
    if include_top1_percent:
        out["Top 1%"] = _pct(sum(r.top1pct for r in reports), n)
    out["Top 5%"] = _pct(sum(r.top5pct for r in reports), n)
    out["Top 10%"] = _pct(sum(r.top10pct for r in reports), n)
    return TopKSummary(n, out)
