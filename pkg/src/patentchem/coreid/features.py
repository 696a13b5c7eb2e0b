"""Per-compound feature rows: descriptors plus network features per cutoff."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..chem import ParseDiagnostic, parse_smiles, standardize_molecule, write_smiles
from ..chem.molecule import Molecule
from ..learn.data import FeatureMatrix
from ..molfeat import DEFAULT_RADIUS, DEFAULT_WIDTH, DESCRIPTOR_NAMES, descriptors, ecfp
from ..simnet import CUTOFF_GRID, NETWORK_FEATURE_NAMES, build_graphs, network_features


@dataclass(frozen=True)
class CompoundRecord:
    """One compound of a patent.  ``canonical_smiles`` is filled in when omitted."""

    patent_id: str
    compound_id: str
    smiles: str
    is_core: bool | None = None
    canonical_smiles: str | None = None

    def __post_init__(self):
        if self.canonical_smiles is None:
            object.__setattr__(self, "canonical_smiles", write_smiles(self.molecule()))

    def molecule(self) -> Molecule:
        try:
            return standardize_molecule(parse_smiles(self.smiles))
        except ParseDiagnostic as exc:
            raise compound_error(exc, self.compound_id) from exc


def compound_error(exc: ParseDiagnostic, compound_id: str, line_no: int | None = None) -> ParseDiagnostic:
    """Copy of ``exc`` whose message names the offending compound (and line)."""
    where = f"compound {compound_id!r}"
    if line_no is not None:
        where = f"line {line_no}, {where}"
    out = ParseDiagnostic(exc.kind, exc.byte_offset, f"{where}: {exc.message}")
    out.compound_id = compound_id
    out.line_no = line_no
    return out


def feature_columns(cutoffs: Sequence[float] = CUTOFF_GRID) -> tuple[str, ...]:
    """Descriptor names, then ``<network feature>@<cutoff>`` grouped by cutoff."""
    cols = list(DESCRIPTOR_NAMES)
    for c in cutoffs:
        cols.extend(f"{name}@{c:g}" for name in NETWORK_FEATURE_NAMES)
    return tuple(cols)


def assemble_features(
    compounds: Sequence[CompoundRecord],
    *,
    cutoffs: Sequence[float] = CUTOFF_GRID,
    radius: int = DEFAULT_RADIUS,
    width: int = DEFAULT_WIDTH,
) -> FeatureMatrix:
    """Feature matrix for the compounds of a single patent.

    The similarity network is built over exactly these compounds, so network
    features describe a compound's position within its own patent.  Row order
    follows the input.
    """
    if len(compounds) < 2:
        raise ValueError("at least two compounds are required")
    ids = [c.compound_id for c in compounds]
    if len(set(ids)) != len(ids):
        raise ValueError("compound ids must be unique within a patent")
    mols = [c.molecule() for c in compounds]
    fps = {cid: ecfp(m, radius, width) for cid, m in zip(ids, mols)}
    rows = [list(descriptors(m).as_tuple()) for m in mols]
    for graph in build_graphs(fps, cutoffs):
        feats = network_features(graph)
        for row, cid in zip(rows, ids):
            row.extend(feats[cid].as_tuple())
    labels = None
    if all(c.is_core is not None for c in compounds):
        labels = np.array([int(bool(c.is_core)) for c in compounds])
    return FeatureMatrix(
        np.array(rows, dtype=np.float64),
        feature_columns(cutoffs),
        labels,
        tuple(ids),
        tuple(c.patent_id for c in compounds),
    )


def assemble_patents(patents: Sequence[Sequence[CompoundRecord]], **kwargs) -> FeatureMatrix:
    """Stack per-patent matrices; network features never cross patents."""
    return FeatureMatrix.concat([assemble_features(p, **kwargs) for p in patents])
