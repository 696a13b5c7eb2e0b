"""Core-compound identification within a patent."""

from .features import CompoundRecord, assemble_features, assemble_patents, compound_error, feature_columns
from .mcs import ScaffoldResult, contains, mcs, mcs_pair
from .ranking import (
    METRIC_COLUMNS,
    RankingReport,
    TopKSummary,
    make_report,
    percent_cutoff,
    rank_core,
    topk_metrics,
)

__all__ = [
    "METRIC_COLUMNS", "CompoundRecord", "RankingReport", "ScaffoldResult", "TopKSummary",
    "assemble_features", "assemble_patents", "compound_error", "contains", "feature_columns",
    "make_report", "mcs", "mcs_pair", "percent_cutoff", "rank_core", "topk_metrics",
]
