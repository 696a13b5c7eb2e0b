"""Compound CSV and patent-bundle JSON."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..chem import ParseDiagnostic
from ..coreid.features import CompoundRecord, compound_error
from ..errors import CsvFormat, DuplicateCompoundId, MultipleCores

CSV_HEADER = ("patent_id", "compound_id", "smiles", "is_core")
_CORE_VALUES = {"1": True, "0": False, "": None}


@dataclass(frozen=True)
class PatentBundle:
    patent_id: str
    compounds: tuple[CompoundRecord, ...]
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.compounds:
            raise ValueError(f"patent {self.patent_id!r} has no compounds")
        object.__setattr__(self, "compounds", tuple(self.compounds))
        seen = set()
        for c in self.compounds:
            if c.patent_id != self.patent_id:
                raise ValueError(f"compound {c.compound_id!r} belongs to patent {c.patent_id!r}")
            if c.compound_id in seen:
                raise DuplicateCompoundId(f"compound id {c.compound_id!r} repeated in patent {self.patent_id!r}")
            seen.add(c.compound_id)
        if sum(1 for c in self.compounds if c.is_core) > 1:
            raise MultipleCores(self.patent_id)

    @property
    def core_id(self) -> str | None:
        for c in self.compounds:
            if c.is_core:
                return c.compound_id
        return None

    def to_dict(self) -> dict:
        return {
            "patent_id": self.patent_id,
            "provenance": list(self.provenance),
            "compounds": [
                {
                    "compound_id": c.compound_id,
                    "smiles": c.smiles,
                    "canonical_smiles": c.canonical_smiles,
                    "is_core": c.is_core,
                }
                for c in self.compounds
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PatentBundle":
        pid = d["patent_id"]
        comps = tuple(
            CompoundRecord(pid, c["compound_id"], c["smiles"], c.get("is_core"), c.get("canonical_smiles"))
            for c in d["compounds"]
        )
        return cls(pid, comps, tuple(d.get("provenance", ())))


def read_csv_text(text: str, source: str = "<csv>") -> list[PatentBundle]:
    """Group compound rows into bundles in order of first appearance."""
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormat(1, "empty file") from None
    if tuple(header) != CSV_HEADER:
        raise CsvFormat(1, f"header must be exactly {','.join(CSV_HEADER)}")
    groups: dict[str, list[CompoundRecord]] = {}
    seen: dict[tuple[str, str], int] = {}
    while True:
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            raise CsvFormat(reader.line_num, str(exc)) from exc
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != 4:
            raise CsvFormat(line_no, f"expected 4 fields, found {len(row)}")
        pid, cid, smiles, core = row
        if not pid or not cid:
            raise CsvFormat(line_no, "patent_id and compound_id must be non-empty")
        if core not in _CORE_VALUES:
            raise CsvFormat(line_no, f"is_core must be 0, 1 or empty, not {core!r}")
        if (pid, cid) in seen:
            raise DuplicateCompoundId(
                f"line {line_no}: compound {cid!r} already seen on line {seen[(pid, cid)]} in patent {pid!r}"
            )
        seen[(pid, cid)] = line_no
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rec = CompoundRecord(pid, cid, smiles, _CORE_VALUES[core])
        except ParseDiagnostic as exc:
            cause = exc.__cause__ if isinstance(exc.__cause__, ParseDiagnostic) else exc
            raise compound_error(cause, cid, line_no) from exc
        group = groups.setdefault(pid, [])
        if rec.is_core and any(c.is_core for c in group):
            raise MultipleCores(pid, f"line {line_no}: patent {pid!r} marks more than one core compound")
        group.append(rec)
    note = f"ingested from {source}"
    return [PatentBundle(pid, tuple(recs), (note,)) for pid, recs in groups.items()]


def ingest_csv(path) -> list[PatentBundle]:
    p = Path(path)
    return read_csv_text(p.read_text(encoding="utf-8"), p.name)


def bundles_to_csv(bundles: Sequence[PatentBundle]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for b in bundles:
        for c in b.compounds:
            core = "" if c.is_core is None else ("1" if c.is_core else "0")
            writer.writerow((b.patent_id, c.compound_id, c.smiles, core))
    return buf.getvalue()


def write_csv(bundles: Sequence[PatentBundle], path) -> Path:
    p = Path(path)
    p.write_text(bundles_to_csv(bundles), encoding="utf-8", newline="")
    return p


def bundles_to_json(bundles: Sequence[PatentBundle]) -> str:
    return json.dumps([b.to_dict() for b in bundles], indent=2) + "\n"


def bundles_from_json(text: str) -> list[PatentBundle]:
    return [PatentBundle.from_dict(d) for d in json.loads(text)]
