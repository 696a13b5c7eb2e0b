"""Multi-recognizer structure recognition with render-and-compare selection."""

from .adapters import (
    AdapterUnreachable,
    DepictionInput,
    EvaluatorProtocol,
    MediaKind,
    MockRecognizer,
    OracleEvaluator,
    RenderFailed,
    SubprocessAdapter,
    TestRenderer,
    TruthRecognizer,
    decode_record,
    depiction_record,
    sniff,
)
from .arbiter import (
    ArbiterResult,
    NoValidCandidate,
    RecognizerCandidate,
    arbitrate,
    evaluate_candidate,
    recognize_all,
    render,
    score,
    select_best,
)
from .benchmark import BenchmarkItem, BenchmarkReport, read_manifest, run_benchmark

__all__ = [
    "AdapterUnreachable", "ArbiterResult", "BenchmarkItem", "BenchmarkReport", "DepictionInput",
    "EvaluatorProtocol", "MediaKind", "MockRecognizer", "NoValidCandidate", "OracleEvaluator",
    "RecognizerCandidate", "RenderFailed", "SubprocessAdapter", "TestRenderer", "TruthRecognizer",
    "arbitrate", "decode_record", "depiction_record", "evaluate_candidate", "read_manifest",
    "recognize_all", "render", "run_benchmark", "score", "select_best", "sniff",
]
