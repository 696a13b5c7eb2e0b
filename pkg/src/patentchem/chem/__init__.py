"""Molecular graphs, SMILES reading and canonical writing."""

from .aromaticity import aromatize, kekulize
from .canon import canonical_order, canonical_ranks, write_smiles
from .molecule import Atom, Bond, BondOrder, Molecule
from .smiles import DiagnosticKind, ParseDiagnostic, StereoIgnoredWarning, parse_smiles


def standardize_molecule(mol: Molecule) -> Molecule:
    """Kekulize, then re-perceive aromaticity with the Hückel rule."""
    return aromatize(kekulize(mol))


def standardize(smiles: str) -> str:
    """Canonical SMILES with perceived aromaticity.

    Kekulé and aromatic spellings of the same molecule standardize to the same
    string, and the function is idempotent.
    """
    return write_smiles(standardize_molecule(parse_smiles(smiles)))


__all__ = [
    "Atom",
    "Bond",
    "BondOrder",
    "DiagnosticKind",
    "Molecule",
    "ParseDiagnostic",
    "StereoIgnoredWarning",
    "aromatize",
    "canonical_order",
    "canonical_ranks",
    "kekulize",
    "parse_smiles",
    "standardize",
    "standardize_molecule",
    "write_smiles",
]
