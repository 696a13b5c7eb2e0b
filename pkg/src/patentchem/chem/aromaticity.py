"""Kekulization and Hückel aromaticity perception."""

from __future__ import annotations

from dataclasses import replace

import networkx as nx

from .elements import allowed_valences
from .molecule import Bond, BondOrder, Molecule
from .smiles import DiagnosticKind, ParseDiagnostic

# Largest cycle considered when looking for aromatic rings; large enough for
# the envelope of two fused six-membered rings.
MAX_AROMATIC_CYCLE = 10

_LONE_PAIR_DONORS = {7, 8, 15, 16, 34, 52}
_EXOCYCLIC_ACCEPTORS = {7, 8, 16, 34}


def _needs_pi_bond(mol: Molecule, i: int, h: int) -> bool:
    for _, order in mol.adjacency[i]:
        if order in (BondOrder.DOUBLE, BondOrder.TRIPLE):
            return False
    atom = mol.atoms[i]
    used = sum(o.valence_contribution for _, o in mol.adjacency[i]) + h
    for v in allowed_valences(atom.atomic_number, atom.formal_charge):
        if v >= used:
            return v - used >= 1
    return False


def kekulize(mol: Molecule) -> Molecule:
    """Replace aromatic flags by an explicit alternating single/double pattern.

    Hydrogen counts are frozen first so the result keeps every atom's H count.
    Raises ``ParseDiagnostic`` (UnsupportedFeature) when no consistent
    assignment exists.
    """
    hs = mol.hydrogen_counts
    if not any(a.aromatic for a in mol.atoms):
        return mol.with_frozen_hydrogens()
    needy = {
        a.index for a in mol.atoms if a.aromatic and _needs_pi_bond(mol, a.index, hs[a.index])
    }
    g = nx.Graph()
    g.add_nodes_from(sorted(needy))
    for bond in mol.bonds:
        if bond.order is BondOrder.AROMATIC and bond.a in needy and bond.b in needy:
            g.add_edge(bond.a, bond.b)
    matching = nx.max_weight_matching(g, maxcardinality=True)
    matched = {frozenset(e) for e in matching}
    if 2 * len(matched) != len(needy):
        raise ParseDiagnostic(
            DiagnosticKind.UNSUPPORTED_FEATURE, 0, "aromatic system cannot be kekulized"
        )
    atoms = tuple(replace(a, aromatic=False, explicit_h=h) for a, h in zip(mol.atoms, hs))
    bonds = []
    for bond in mol.bonds:
        if bond.order is BondOrder.AROMATIC:
            order = BondOrder.DOUBLE if frozenset((bond.a, bond.b)) in matched else BondOrder.SINGLE
            bond = Bond(bond.a, bond.b, order)
        bonds.append(bond)
    return Molecule(atoms, tuple(bonds))


def _pi_electrons(mol: Molecule, i: int, h: int, ring: frozenset) -> int | None:
    """Electrons atom ``i`` donates to a ring, or None if it cannot be aromatic."""
    atom = mol.atoms[i]
    if mol.degree(i) + h > 3:
        return None
    multiple = [(j, o) for j, o in mol.adjacency[i] if o in (BondOrder.DOUBLE, BondOrder.TRIPLE)]
    if len(multiple) > 1 or any(o is BondOrder.TRIPLE for _, o in multiple):
        return None
    if multiple:
        j, _ = multiple[0]
        key = (i, j) if i < j else (j, i)
        if key in ring:
            return 1
        if mol.atoms[j].atomic_number in _EXOCYCLIC_ACCEPTORS:
            return 0
        return None
    z, q = atom.atomic_number, atom.formal_charge
    if q == 0 and z in _LONE_PAIR_DONORS:
        return 2
    if q == -1 and z in (6, 7):
        return 2
    if (q == 0 and z == 5) or (q == 1 and z == 6):
        return 0
    return None


def aromatize(mol: Molecule) -> Molecule:
    """Mark rings whose pi-electron count satisfies 4n + 2 as aromatic.

    Expects a molecule without aromatic flags (see :func:`kekulize`).  Every
    simple cycle of at most ``MAX_AROMATIC_CYCLE`` atoms built from
    sp2-capable ring atoms is a candidate, which makes the result independent
    of atom order.
    """
    hs = mol.hydrogen_counts
    ring = mol.ring_bonds
    electrons = {}
    for i in range(len(mol.atoms)):
        if mol.atom_in_ring[i]:
            e = _pi_electrons(mol, i, hs[i], ring)
            if e is not None:
                electrons[i] = e
    g = nx.Graph()
    g.add_nodes_from(electrons)
    g.add_edges_from((a, b) for a, b in ring if a in electrons and b in electrons)
    arom_atoms: set[int] = set()
    arom_bonds: set[tuple[int, int]] = set()
    for cycle in nx.simple_cycles(g, length_bound=MAX_AROMATIC_CYCLE):
        if len(cycle) < 3:
            continue
        total = sum(electrons[i] for i in cycle)
        if total % 4 != 2:
            continue
        arom_atoms.update(cycle)
        for k in range(len(cycle)):
            a, b = cycle[k], cycle[(k + 1) % len(cycle)]
            arom_bonds.add((a, b) if a < b else (b, a))
    atoms = tuple(
        replace(a, aromatic=a.index in arom_atoms, explicit_h=h) for a, h in zip(mol.atoms, hs)
    )
    bonds = tuple(
        Bond(b.a, b.b, BondOrder.AROMATIC) if b.key in arom_bonds else Bond(b.a, b.b, b.order)
        for b in mol.bonds
    )
    return Molecule(atoms, bonds)
