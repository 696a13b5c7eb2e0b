"""Maximum common connected substructure by branch and bound.

Atoms match when atomic number and aromatic flag agree; bonds match when
their orders agree.  The common substructure is induced: two matched atoms
are bonded in one molecule exactly when their images are bonded in the
other.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from ..chem.molecule import Molecule

DEFAULT_PAIR_BUDGET = 5.0
_CHECK_EVERY = 256


def atom_label(mol: Molecule, i: int) -> tuple[int, bool]:
    a = mol.atoms[i]
    return a.atomic_number, a.aromatic


@dataclass(frozen=True)
class PairResult:
    mapping: dict[int, int]
    exhausted: bool


@dataclass(frozen=True)
class ScaffoldResult:
    scaffold: Molecule
    coverage: float
    search_exhausted: bool

    @property
    def n_atoms(self) -> int:
        return len(self.scaffold.atoms)


class _Search:
    def __init__(self, a: Molecule, b: Molecule, deadline: float | None):
        self.a, self.b = a, b
        self.la = [atom_label(a, i) for i in range(len(a.atoms))]
        self.lb = [atom_label(b, j) for j in range(len(b.atoms))]
        self.bond_a = {}
        for bd in a.bonds:
            self.bond_a[(bd.a, bd.b)] = self.bond_a[(bd.b, bd.a)] = bd.order
        self.bond_b = {}
        for bd in b.bonds:
            self.bond_b[(bd.a, bd.b)] = self.bond_b[(bd.b, bd.a)] = bd.order
        self.nbr_a = [[j for j, _ in a.adjacency[i]] for i in range(len(a.atoms))]
        self.nbr_b = [[j for j, _ in b.adjacency[i]] for i in range(len(b.atoms))]
        self.deadline = deadline
        self.best: dict[int, int] = {}
        self.best_bonds = 0
        self.timed_out = False
        self.steps = 0

    def _expired(self) -> bool:
        if self.timed_out:
            return True
        self.steps += 1
        if self.deadline is not None and self.steps % _CHECK_EVERY == 0 and time.monotonic() > self.deadline:
            self.timed_out = True
        return self.timed_out

    def _consistent(self, i: int, j: int, mapping: dict[int, int]) -> bool:
        for ii, jj in mapping.items():
            if self.bond_a.get((i, ii)) != self.bond_b.get((j, jj)):
                return False
        return True

    def _bound(self, avail_a: set[int], used_b: set[int]) -> int:
        ca = Counter(self.la[i] for i in avail_a)
        cb = Counter(self.lb[j] for j in range(len(self.lb)) if j not in used_b)
        return sum(min(n, cb[k]) for k, n in ca.items())

    def _record(self, mapping: dict[int, int]) -> None:
        nb = sum(1 for (x, y) in self.bond_a if x < y and x in mapping and y in mapping)
        if len(mapping) > len(self.best) or (len(mapping) == len(self.best) and nb > self.best_bonds):
            self.best = dict(mapping)
            self.best_bonds = nb

    def _extend(self, mapping: dict[int, int], used_b: set[int], avail_a: set[int]) -> None:
        if self._expired():
            return
        self._record(mapping)
        frontier = sorted(i for i in avail_a if any(n in mapping for n in self.nbr_a[i]))
        if not frontier:
            return
        if len(mapping) + self._bound(avail_a, used_b) <= len(self.best):
            return
        i = frontier[0]
        avail_a.discard(i)
        seen_b = set()
        for ii in self.nbr_a[i]:
            if ii not in mapping:
                continue
            for j in self.nbr_b[mapping[ii]]:
                if j in used_b or j in seen_b or self.lb[j] != self.la[i]:
                    continue
                seen_b.add(j)
                if not self._consistent(i, j, mapping):
                    continue
                mapping[i] = j
                used_b.add(j)
                self._extend(mapping, used_b, avail_a)
                del mapping[i]
                used_b.discard(j)
                if self.timed_out:
                    avail_a.add(i)
                    return
        # branch where atom i stays outside the common substructure
        self._extend(mapping, used_b, avail_a)
        avail_a.add(i)

    def run(self) -> PairResult:
        na = len(self.a.atoms)
        remaining = set(range(na))
        for seed in range(na):
            if self.timed_out:
                break
            if len(self.best) >= len(remaining):
                break
            for j in range(len(self.lb)):
                if self.lb[j] != self.la[seed]:
                    continue
                avail = set(remaining)
                avail.discard(seed)
                self._extend({seed: j}, {j}, avail)
                if self.timed_out:
                    break
            # every substructure containing ``seed`` has been explored
            remaining.discard(seed)
        return PairResult(self.best, not self.timed_out)


def mcs_pair(a: Molecule, b: Molecule, time_budget: float | None = DEFAULT_PAIR_BUDGET) -> PairResult:
    """Largest induced common connected substructure as an atom map a -> b.

    Ties in atom count prefer more bonds.  With a finite ``time_budget``
    (seconds) the best mapping found so far is returned once it expires.
    """
    deadline = None if time_budget is None else time.monotonic() + time_budget
    return _Search(a, b, deadline).run()


def _graph(mol: Molecule) -> nx.Graph:
    g = nx.Graph()
    for i in range(len(mol.atoms)):
        g.add_node(i, label=atom_label(mol, i))
    for bd in mol.bonds:
        g.add_edge(bd.a, bd.b, order=int(bd.order))
    return g


def contains(mol: Molecule, fragment: Molecule) -> bool:
    """Whether ``fragment`` is an induced, label-compatible subgraph of ``mol``."""
    if not fragment.atoms:
        return True
    gm = isomorphism.GraphMatcher(
        _graph(mol), _graph(fragment),
        node_match=lambda x, y: x["label"] == y["label"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )
    return gm.subgraph_is_isomorphic()


def _empty() -> Molecule:
    return Molecule((), ())


def mcs(mols: Sequence[Molecule], time_budget: float | None = DEFAULT_PAIR_BUDGET) -> ScaffoldResult:
    """Common scaffold of ``mols`` by folding pairwise searches left to right.

    ``time_budget`` applies to each pair.  Coverage is the fraction of inputs
    that contain the scaffold; for an empty scaffold it falls back to the best
    single atom type, so it stays positive whenever any input has atoms.
    """
    if len(mols) < 2:
        raise ValueError("at least two molecules are required")
    scaffold = mols[0]
    exhausted = True
    for mol in mols[1:]:
        if not scaffold.atoms:
            break
        res = mcs_pair(scaffold, mol, time_budget)
        exhausted &= res.exhausted
        scaffold = scaffold.subgraph(sorted(res.mapping)) if res.mapping else _empty()
    if scaffold.atoms:
        coverage = sum(contains(m, scaffold) for m in mols) / len(mols)
    else:
        counts = Counter(lab for m in mols for lab in {atom_label(m, i) for i in range(len(m.atoms))})
        coverage = max(counts.values()) / len(mols) if counts else 0.0
    return ScaffoldResult(scaffold, coverage, exhausted)
