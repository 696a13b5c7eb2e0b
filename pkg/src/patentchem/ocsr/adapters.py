"""Recognizer, renderer and evaluator adapters.

External tools are reached through a one-shot subprocess protocol: the
command reads one JSON request line on stdin and writes one JSON response
line on stdout.  Built-in test doubles cover rendering and scoring without
any image model.
"""

from __future__ import annotations

import base64
import enum
import json
import math
import shlex
import subprocess
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Protocol, Sequence

from ..chem import parse_smiles, standardize, standardize_molecule, write_smiles
from ..errors import PatentChemError
from ..molfeat import ecfp, tanimoto

DEFAULT_TIMEOUT = 30.0


class AdapterUnreachable(PatentChemError):
    """The adapter timed out, exited non-zero or could not be started."""


class RenderFailed(PatentChemError):
    pass


class EvaluatorProtocol(PatentChemError):
    """The evaluator's reply was malformed or outside [0, 1]."""


class MediaKind(str, enum.Enum):
    RASTER_IMAGE = "raster_image"
    DEPICTION_RECORD = "depiction_record"


@dataclass(frozen=True)
class DepictionInput:
    payload: bytes
    media_kind: MediaKind = MediaKind.RASTER_IMAGE
    source_path: str | None = None

    def __post_init__(self):
        if not self.payload:
            raise ValueError("depiction payload must not be empty")
        object.__setattr__(self, "media_kind", MediaKind(self.media_kind))

    def b64(self) -> str:
        return base64.b64encode(self.payload).decode("ascii")


def depiction_record(smiles: str, source_path: str | None = None) -> DepictionInput:
    """Test double for a rendered image: a small JSON document carrying the SMILES."""
    doc = json.dumps({"kind": "depiction_record", "smiles": smiles}, sort_keys=True)
    return DepictionInput(doc.encode("utf-8"), MediaKind.DEPICTION_RECORD, source_path)


def decode_record(d: DepictionInput) -> str:
    if d.media_kind is not MediaKind.DEPICTION_RECORD:
        raise ValueError("not a depiction record")
    doc = json.loads(d.payload.decode("utf-8"))
    return doc["smiles"]


def sniff(payload: bytes, source_path: str | None = None) -> DepictionInput:
    """Wrap file bytes, recognizing depiction records by content."""
    if payload[:1] == b"{":
        try:
            doc = json.loads(payload.decode("utf-8"))
            if isinstance(doc, dict) and doc.get("kind") == "depiction_record":
                return DepictionInput(payload, MediaKind.DEPICTION_RECORD, source_path)
        except (UnicodeDecodeError, json.JSONDecodeError):
            pass
    return DepictionInput(payload, MediaKind.RASTER_IMAGE, source_path)


class Recognizer(Protocol):
    def recognize(self, image: DepictionInput) -> str: ...


class Renderer(Protocol):
    def render(self, smiles: str) -> DepictionInput: ...


class Evaluator(Protocol):
    def score(self, original: DepictionInput, rendered: DepictionInput) -> float: ...


class TestRenderer:
    """Renders to a depiction record embedding the SMILES."""

    __test__ = False  # not a pytest class

    def render(self, smiles: str) -> DepictionInput:
        return depiction_record(smiles)


class OracleEvaluator:
    """Graph-level stand-in for image similarity.

    Returns ECFP Tanimoto between the molecules behind two depiction records.
    A score of exactly 1.0 is reserved for identical canonical structures:
    distinct molecules whose fingerprints coincide get the next float below.
    """

    def __init__(self, radius: int = 2, width: int = 2048):
        self.radius = radius
        self.width = width

    def score(self, original: DepictionInput, rendered: DepictionInput) -> float:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                a = standardize_molecule(parse_smiles(decode_record(original)))
                b = standardize_molecule(parse_smiles(decode_record(rendered)))
        except (ValueError, KeyError) as exc:
            raise EvaluatorProtocol(f"oracle evaluator needs depiction records: {exc}") from exc
        sim = tanimoto(ecfp(a, self.radius, self.width), ecfp(b, self.radius, self.width))
        if sim == 1.0 and write_smiles(a) != write_smiles(b):
            sim = math.nextafter(1.0, 0.0)
        return sim


class MockRecognizer:
    """Recognizer backed by a function or a payload -> SMILES mapping.

    ``fn`` may raise; the arbiter records the failure on the candidate.
    """

    def __init__(self, fn: Callable[[DepictionInput], str] | Mapping[bytes, str] | str):
        if isinstance(fn, str):
            const = fn
            self._fn = lambda image: const
        elif isinstance(fn, Mapping):
            table = dict(fn)
            self._fn = lambda image: table[image.payload]
        else:
            self._fn = fn

    def recognize(self, image: DepictionInput) -> str:
        return self._fn(image)


class TruthRecognizer:
    """Reads the SMILES straight out of a depiction record."""

    def recognize(self, image: DepictionInput) -> str:
        return decode_record(image)


class SubprocessAdapter:
    """Runs ``command`` once per call with the JSON-line wire protocol.

    Request: ``{"op", "image_b64", "smiles", "image2_b64"}``.  Response:
    ``{"ok": true, "value": ...}`` or ``{"ok": false, "error": ...}``.
    """

    def __init__(self, command: str | Sequence[str], timeout: float = DEFAULT_TIMEOUT, name: str | None = None):
        self.argv = shlex.split(command) if isinstance(command, str) else list(command)
        if not self.argv:
            raise ValueError("empty adapter command")
        self.timeout = timeout
        self.name = name or self.argv[0]

    def call(self, op: str, image: DepictionInput | None = None, smiles: str | None = None,
             image2: DepictionInput | None = None):
        request = {
            "op": op,
            "image_b64": image.b64() if image else None,
            "smiles": smiles,
            "image2_b64": image2.b64() if image2 else None,
        }
        try:
            proc = subprocess.run(
                self.argv,
                input=json.dumps(request) + "\n",
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except subprocess.TimeoutExpired as exc:
            raise AdapterUnreachable(f"{self.name}: no reply within {self.timeout}s") from exc
        except OSError as exc:
            raise AdapterUnreachable(f"{self.name}: cannot start ({exc})") from exc
        if proc.returncode != 0:
            raise AdapterUnreachable(f"{self.name}: exit status {proc.returncode}")
        line = proc.stdout.splitlines()[0] if proc.stdout else ""
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AdapterUnreachable(f"{self.name}: malformed reply {line[:80]!r}") from exc
        if not isinstance(reply, dict) or "ok" not in reply:
            raise AdapterUnreachable(f"{self.name}: reply lacks 'ok'")
        return reply

    def recognize(self, image: DepictionInput) -> str:
        reply = self.call("recognize", image=image)
        if not reply["ok"]:
            raise AdapterUnreachable(f"{self.name}: {reply.get('error', 'recognition failed')}")
        value = reply.get("value")
        if not isinstance(value, str):
            raise AdapterUnreachable(f"{self.name}: recognize must return a string")
        return value

    def render(self, smiles: str) -> DepictionInput:
        try:
            reply = self.call("render", smiles=smiles)
        except AdapterUnreachable as exc:
            raise RenderFailed(str(exc)) from exc
        if not reply["ok"]:
            raise RenderFailed(f"{self.name}: {reply.get('error', 'render failed')}")
        value = reply.get("value")
        try:
            payload = base64.b64decode(value or "", validate=True)
        except (TypeError, ValueError) as exc:
            raise RenderFailed(f"{self.name}: render value is not base64") from exc
        if not payload:
            raise RenderFailed(f"{self.name}: empty image")
        return sniff(payload)

    def score(self, original: DepictionInput, rendered: DepictionInput) -> float:
        reply = self.call("score", image=original, image2=rendered)
        if not reply["ok"]:
            raise EvaluatorProtocol(f"{self.name}: {reply.get('error', 'scoring failed')}")
        value = reply.get("value")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise EvaluatorProtocol(f"{self.name}: score must be a number, got {value!r}")
        if not 0.0 <= value <= 1.0:
            raise EvaluatorProtocol(f"{self.name}: score {value} outside [0, 1]")
        return float(value)


def canonical_or_none(smiles: str) -> str | None:
    try:
        return standardize(smiles)
    except ValueError:
        return None
