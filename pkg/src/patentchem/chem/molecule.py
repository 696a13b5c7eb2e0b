"""Immutable molecular graph types."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from .elements import ORGANIC_VALENCES, SYMBOLS


class BondOrder(enum.IntEnum):
    SINGLE = 1
    DOUBLE = 2
    TRIPLE = 3
    AROMATIC = 4

    @property
    def valence_contribution(self) -> int:
        # aromatic bonds count as single; the pi electron is handled per atom
        return 1 if self is BondOrder.AROMATIC else int(self)


@dataclass(frozen=True)
class Atom:
    atomic_number: int
    formal_charge: int = 0
    isotope: int | None = None
    aromatic: bool = False
    explicit_h: int | None = None
    index: int = 0
    # annotations, excluded from graph identity
    chirality: str | None = field(default=None, compare=False)
    atom_class: int | None = field(default=None, compare=False)

    @property
    def symbol(self) -> str:
        return SYMBOLS[self.atomic_number - 1]


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: BondOrder = BondOrder.SINGLE
    stereo: str | None = field(default=None, compare=False)

    @property
    def key(self) -> tuple[int, int]:
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)

    def other(self, i: int) -> int:
        return self.b if i == self.a else self.a


@dataclass(frozen=True)
class Molecule:
    """An attributed molecular graph.

    Hydrogens are implicit unless written as bracket atoms: ``hydrogen_counts``
    derives them from ``explicit_h`` when set and from the organic-subset
    valence table otherwise.  Instances never change after construction, so
    derived properties are cached.
    """

    atoms: tuple[Atom, ...]
    bonds: tuple[Bond, ...] = ()

    def __post_init__(self):
        atoms = tuple(self.atoms)
        bonds = tuple(self.bonds)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "bonds", bonds)
        n = len(atoms)
        for i, atom in enumerate(atoms):
            if atom.index != i:
                raise ValueError(f"atom at position {i} carries index {atom.index}")
            if not 1 <= atom.atomic_number <= 118:
                raise ValueError(f"atomic number {atom.atomic_number} out of range")
            if not -4 <= atom.formal_charge <= 4:
                raise ValueError(f"formal charge {atom.formal_charge} out of range")
            if atom.isotope is not None and atom.isotope < 0:
                raise ValueError("isotope must be non-negative")
            if atom.explicit_h is not None and atom.explicit_h < 0:
                raise ValueError("hydrogen count must be non-negative")
        seen = set()
        for bond in bonds:
            if not (0 <= bond.a < n and 0 <= bond.b < n):
                raise ValueError(f"bond {bond.a}-{bond.b} references a missing atom")
            if bond.a == bond.b:
                raise ValueError(f"self bond on atom {bond.a}")
            if bond.key in seen:
                raise ValueError(f"duplicate bond {bond.key}")
            seen.add(bond.key)
            if bond.order is BondOrder.AROMATIC and not (
                atoms[bond.a].aromatic and atoms[bond.b].aromatic
            ):
                raise ValueError(f"aromatic bond {bond.key} between non-aromatic atoms")

    @classmethod
    def from_parts(cls, atoms: Iterable[Atom], bonds: Iterable[Bond] = ()) -> "Molecule":
        """Build a molecule, renumbering atom indices by position."""
        atoms = tuple(replace(a, index=i) for i, a in enumerate(atoms))
        return cls(atoms, tuple(bonds))

    def __len__(self) -> int:
        return len(self.atoms)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, BondOrder], ...], ...]:
        adj: list[list[tuple[int, BondOrder]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a].append((bond.b, bond.order))
            adj[bond.b].append((bond.a, bond.order))
        return tuple(tuple(x) for x in adj)

    @cached_property
    def _bond_index(self) -> dict[tuple[int, int], Bond]:
        return {bond.key: bond for bond in self.bonds}

    def bond_between(self, i: int, j: int) -> Bond | None:
        return self._bond_index.get((i, j) if i < j else (j, i))

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @cached_property
    def hydrogen_counts(self) -> tuple[int, ...]:
        return tuple(implicit_hydrogens(self, i) for i in range(len(self.atoms)))

    @cached_property
    def ring_bonds(self) -> frozenset[tuple[int, int]]:
        """Keys of bonds that lie on at least one cycle (non-bridges)."""
        bridges = _bridges(len(self.atoms), self.adjacency)
        return frozenset(b.key for b in self.bonds if b.key not in bridges)

    @cached_property
    def atom_in_ring(self) -> tuple[bool, ...]:
        flags = [False] * len(self.atoms)
        for a, b in self.ring_bonds:
            flags[a] = flags[b] = True
        return tuple(flags)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted atom-index tuples, ordered by first atom."""
        seen = [False] * len(self.atoms)
        out = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                i = stack.pop()
                comp.append(i)
                for j, _ in self.adjacency[i]:
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    @property
    def cyclomatic_number(self) -> int:
        return len(self.bonds) - len(self.atoms) + len(self.components)

    def permuted(self, order: Sequence[int]) -> "Molecule":
        """Relabel atoms so that new atom ``k`` is old atom ``order[k]``."""
        if sorted(order) != list(range(len(self.atoms))):
            raise ValueError("order must be a permutation of atom indices")
        new_of_old = {old: new for new, old in enumerate(order)}
        atoms = [replace(self.atoms[old], index=new) for new, old in enumerate(order)]
        bonds = [
            replace(b, a=new_of_old[b.a], b=new_of_old[b.b]) for b in self.bonds
        ]
        return Molecule(tuple(atoms), tuple(bonds))

    def subgraph(self, atom_indices: Sequence[int]) -> "Molecule":
        """Induced subgraph; hydrogen counts of the fragment are frozen explicitly."""
        keep = list(atom_indices)
        pos = {old: new for new, old in enumerate(keep)}
        atoms = [
            replace(self.atoms[old], index=new, explicit_h=self.hydrogen_counts[old])
            for new, old in enumerate(keep)
        ]
        bonds = [
            replace(b, a=pos[b.a], b=pos[b.b])
            for b in self.bonds
            if b.a in pos and b.b in pos
        ]
        return Molecule(tuple(atoms), tuple(bonds))

    def with_frozen_hydrogens(self) -> "Molecule":
        """Copy with every atom's hydrogen count stored explicitly."""
        atoms = tuple(
            replace(a, explicit_h=h) for a, h in zip(self.atoms, self.hydrogen_counts)
        )
        return Molecule(atoms, self.bonds)

    def formula(self) -> str:
        """Hill-order molecular formula including implicit hydrogens."""
        counts: dict[str, int] = {}
        for atom, h in zip(self.atoms, self.hydrogen_counts):
            counts[atom.symbol] = counts.get(atom.symbol, 0) + 1
            if h:
                counts["H"] = counts.get("H", 0) + h
        keys = sorted(counts)
        if "C" in counts:
            keys = ["C"] + (["H"] if "H" in counts else []) + [
                k for k in keys if k not in ("C", "H")
            ]
        return "".join(k + (str(counts[k]) if counts[k] > 1 else "") for k in keys)


def bond_valence(mol: Molecule, i: int) -> int:
    return sum(order.valence_contribution for _, order in mol.adjacency[i])


def implicit_hydrogens(mol: Molecule, i: int) -> int:
    atom = mol.atoms[i]
    if atom.explicit_h is not None:
        return atom.explicit_h
    valences = ORGANIC_VALENCES.get(atom.atomic_number)
    if valences is None or atom.formal_charge != 0:
        return 0
    used = bond_valence(mol, i)
    for v in valences:
        if v >= used:
            h = v - used
            if atom.aromatic:
                h -= 1
            return max(h, 0)
    return 0


def _bridges(n: int, adjacency) -> set[tuple[int, int]]:
    # iterative Tarjan low-link
    disc = [-1] * n
    low = [0] * n
    bridges: set[tuple[int, int]] = set()
    counter = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w, _ in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(adjacency[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add((parent, v) if parent < v else (v, parent))
    return bridges
