"""Canonical atom ranking and canonical SMILES output."""

from __future__ import annotations

import sys
from typing import Sequence

from .elements import AROMATIC_ORGANIC, ORGANIC_VALENCES
from .molecule import BondOrder, Molecule

# Upper bound on tie-breaking leaves explored for one molecule.  Only highly
# symmetric molecules come close; past the bound the best string seen so far
# is returned, which stays a valid (sound) encoding of the graph.
MAX_TIE_BREAK_LEAVES = 2048


def _dense(keys: Sequence) -> list[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def initial_invariants(mol: Molecule) -> list[tuple]:
    hs = mol.hydrogen_counts
    return [
        (a.atomic_number, a.formal_charge, mol.degree(a.index), hs[a.index],
         a.isotope or 0, a.aromatic)
        for a in mol.atoms
    ]


def refine(mol: Molecule, ranks: Sequence[int]) -> list[int]:
    """Iterate neighbour-rank refinement until the partition stops splitting."""
    ranks = list(ranks)
    classes = len(set(ranks))
    adj = mol.adjacency
    while True:
        keys = [
            (ranks[i], tuple(sorted((ranks[j], int(o)) for j, o in adj[i])))
            for i in range(len(ranks))
        ]
        new = _dense(keys)
        n_new = len(set(new))
        ranks = new
        if n_new == classes:
            return ranks
        classes = n_new


def canonical_ranks(mol: Molecule) -> tuple[int, ...]:
    """Symmetry-class ranks of each atom, invariant under atom relabeling.

    Atoms that are topologically equivalent share a rank (all six benzene
    carbons get rank 0).
    """
    if not mol.atoms:
        return ()
    return tuple(refine(mol, _dense(initial_invariants(mol))))


def _interchangeable(mol: Molecule, members: list[int]) -> list[int]:
    # Terminal atoms of one class hanging off the same neighbour are swapped
    # by an automorphism, so only one of them needs to be tried.
    out, seen = [], set()
    for m in members:
        if mol.degree(m) == 1:
            anchor = mol.adjacency[m][0][0]
            if anchor in seen:
                continue
            seen.add(anchor)
        out.append(m)
    return out


def _leaves(mol: Molecule, ranks: list[int], budget: list[int]):
    ranks = refine(mol, ranks)
    n_classes = len(set(ranks))
    if n_classes == len(ranks):
        budget[0] -= 1
        yield ranks
        return
    counts: dict[int, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    target = min(r for r, c in counts.items() if c > 1)
    members = [i for i, r in enumerate(ranks) if r == target]
    for m in _interchangeable(mol, members):
        if budget[0] <= 0:
            return
        split = [2 * r + (1 if r == target and i != m else 0) for i, r in enumerate(ranks)]
        yield from _leaves(mol, split, budget)


def canonical_order(mol: Molecule) -> tuple[int, ...]:
    """A total ranking (permutation of 0..n-1) that yields the canonical SMILES."""
    return _best(mol)[1]


def _best(mol: Molecule) -> tuple[str, tuple[int, ...]]:
    start = _dense(initial_invariants(mol))
    best: tuple[str, tuple[int, ...]] | None = None
    budget = [MAX_TIE_BREAK_LEAVES]
    for leaf in _leaves(mol, start, budget):
        text = smiles_from_ranks(mol, leaf)
        if best is None or text < best[0]:
            best = (text, tuple(leaf))
    assert best is not None
    return best


def write_smiles(mol: Molecule) -> str:
    """Canonical SMILES for ``mol``.

    Among all atom orders consistent with :func:`canonical_ranks`, the
    lexicographically smallest output string wins, so the result does not
    depend on the input atom order.  Stereo annotations are not written.
    """
    if not mol.atoms:
        return ""
    return _best(mol)[0]


def _bare_hydrogens(mol: Molecule, i: int) -> int | None:
    """H count a reader would assign to atom ``i`` written without brackets."""
    atom = mol.atoms[i]
    valences = ORGANIC_VALENCES.get(atom.atomic_number)
    if valences is None:
        return None
    used = sum(o.valence_contribution for _, o in mol.adjacency[i])
    for v in valences:
        if v >= used:
            h = v - used - (1 if atom.aromatic else 0)
            return max(h, 0)
    return 0


def atom_token(mol: Molecule, i: int) -> str:
    atom = mol.atoms[i]
    h = mol.hydrogen_counts[i]
    symbol = atom.symbol.lower() if atom.aromatic else atom.symbol
    bare_ok = (
        atom.formal_charge == 0
        and atom.isotope is None
        and (not atom.aromatic or symbol in AROMATIC_ORGANIC)
        and _bare_hydrogens(mol, i) == h
    )
    if bare_ok:
        return symbol
    out = ["["]
    if atom.isotope is not None:
        out.append(str(atom.isotope))
    out.append(symbol)
    if h:
        out.append("H" if h == 1 else f"H{h}")
    q = atom.formal_charge
    if q:
        sign = "+" if q > 0 else "-"
        out.append(sign if abs(q) == 1 else f"{sign}{abs(q)}")
    out.append("]")
    return "".join(out)


def _bond_token(mol: Molecule, a: int, b: int, order: BondOrder) -> str:
    if order is BondOrder.DOUBLE:
        return "="
    if order is BondOrder.TRIPLE:
        return "#"
    if order is BondOrder.AROMATIC:
        return ""
    if mol.atoms[a].aromatic and mol.atoms[b].aromatic:
        return "-"
    return ""


def smiles_from_ranks(mol: Molecule, ranks: Sequence[int]) -> str:
    """Depth-first SMILES walk visiting lower-ranked atoms first."""
    n = len(mol.atoms)
    if n > 800:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 3 * n))
    adj = [sorted(mol.adjacency[i], key=lambda t: ranks[t[0]]) for i in range(n)]
    visited = [False] * n
    parent = [-1] * n
    children: list[list[int]] = [[] for _ in range(n)]
    opens: list[list[int]] = [[] for _ in range(n)]
    closes: list[list[int]] = [[] for _ in range(n)]
    ring_edges: set[tuple[int, int]] = set()

    def explore(v: int) -> None:
        visited[v] = True
        for w, _ in adj[v]:
            if w == parent[v]:
                continue
            if visited[w]:
                key = (v, w) if v < w else (w, v)
                if key not in ring_edges:
                    ring_edges.add(key)
                    # w was reached earlier on the current path: it opens
                    opens[w].append(v)
                    closes[v].append(w)
            else:
                parent[w] = v
                children[v].append(w)
                explore(w)

    roots = []
    for comp in mol.components:
        root = min(comp, key=lambda i: ranks[i])
        roots.append(root)
    roots.sort(key=lambda i: ranks[i])
    for root in roots:
        explore(root)

    digit_of: dict[tuple[int, int], int] = {}
    in_use: set[int] = set()
    out: list[str] = []

    def take_digit() -> int:
        d = 1
        while d in in_use:
            d += 1
        in_use.add(d)
        return d

    def digit_text(d: int) -> str:
        return str(d) if d < 10 else f"%{d:02d}"

    def emit(v: int) -> None:
        out.append(atom_token(mol, v))
        released = []
        for w in sorted(closes[v], key=lambda x: ranks[x]):
            d = digit_of.pop((w, v))
            out.append(digit_text(d))
            released.append(d)
        for w in sorted(opens[v], key=lambda x: ranks[x]):
            d = take_digit()
            digit_of[(v, w)] = d
            order = mol.bond_between(v, w).order
            out.append(_bond_token(mol, v, w, order) + digit_text(d))
        in_use.difference_update(released)
        kids = children[v]
        for k, w in enumerate(kids):
            token = _bond_token(mol, v, w, mol.bond_between(v, w).order)
            if k < len(kids) - 1:
                out.append("(" + token)
                emit(w)
                out.append(")")
            else:
                out.append(token)
                emit(w)

    for k, root in enumerate(roots):
        if k:
            out.append(".")
        emit(root)
    return "".join(out)
