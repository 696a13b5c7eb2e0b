"""Circular fingerprints, Tanimoto similarity and graph descriptors.

Environment codes are 64-bit BLAKE2b digests of the little-endian encoding of
each environment tuple, so fingerprints are reproducible across runs and
platforms.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field, fields
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .chem.elements import ATOMIC_WEIGHT
from .chem.molecule import BondOrder, Molecule
from .errors import WidthMismatch

DEFAULT_RADIUS = 2
DEFAULT_WIDTH = 2048

_MASK64 = (1 << 64) - 1


def hash64(values: Sequence[int]) -> int:
    data = struct.pack(f"<{len(values)}Q", *(v & _MASK64 for v in values))
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class Fingerprint:
    """Fixed-width bit vector; bit ``i`` is ``(bits >> i) & 1``."""

    bits: int
    width: int = DEFAULT_WIDTH
    radius: int = DEFAULT_RADIUS
    popcount: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError("bits outside the fingerprint width")
        object.__setattr__(self, "popcount", self.bits.bit_count())

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int = DEFAULT_WIDTH,
                     radius: int = DEFAULT_RADIUS) -> "Fingerprint":
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"bit {i} outside width {width}")
            bits |= 1 << i
        return cls(bits, width, radius)

    def on_bits(self) -> tuple[int, ...]:
        out, b, i = [], self.bits, 0
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return tuple(out)

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.width, dtype=np.uint8)
        arr[list(self.on_bits())] = 1
        return arr

    def to_hex(self) -> str:
        """Hex dump, most significant bit first, ``width / 4`` digits."""
        return format(self.bits, f"0{self.width // 4}x")

    @classmethod
    def from_hex(cls, text: str, radius: int = DEFAULT_RADIUS) -> "Fingerprint":
        return cls(int(text, 16), len(text) * 4, radius)


def environment_codes(mol: Molecule, radius: int = DEFAULT_RADIUS) -> set[int]:
    """Distinct, de-duplicated environment codes up to ``radius`` bonds.

    An environment whose atom set was already produced (at this or an earlier
    iteration) is dropped; within one iteration the lowest code wins.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    n = len(mol.atoms)
    hs = mol.hydrogen_counts
    ring = mol.atom_in_ring
    adj = mol.adjacency
    codes = [
        hash64((a.atomic_number, a.formal_charge, mol.degree(a.index), hs[a.index], int(ring[a.index])))
        for a in mol.atoms
    ]
    atom_sets = [frozenset((i,)) for i in range(n)]
    found = set(codes)
    seen_sets = set(atom_sets)
    for it in range(1, radius + 1):
        new_codes = []
        new_sets = []
        for i in range(n):
            nbrs = sorted((int(o), codes[j]) for j, o in adj[i])
            flat = [it, codes[i]]
            for order, code in nbrs:
                flat.extend((order, code))
            new_codes.append(hash64(flat))
            s = atom_sets[i].union(*(atom_sets[j] for j, _ in adj[i]))
            new_sets.append(s)
        best: dict[frozenset, int] = {}
        for code, s in zip(new_codes, new_sets):
            if s in seen_sets:
                continue
            if s not in best or code < best[s]:
                best[s] = code
        found.update(best.values())
        seen_sets.update(best)
        codes, atom_sets = new_codes, new_sets
    return found


def ecfp(mol: Molecule, radius: int = DEFAULT_RADIUS, width: int = DEFAULT_WIDTH) -> Fingerprint:
    """Extended-connectivity fingerprint folded to ``width`` bits (ECFP4 by default)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if width < 64 or width & (width - 1):
        raise ValueError("width must be a power of two >= 64")
    bits = 0
    for code in environment_codes(mol, radius):
        bits |= 1 << (code % width)
    return Fingerprint(bits, width, radius)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    if a.width != b.width or a.radius != b.radius:
        raise WidthMismatch(
            f"cannot compare width={a.width}/radius={a.radius} with width={b.width}/radius={b.radius}"
        )
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 1.0
    return (a.bits & b.bits).bit_count() / union


def tanimoto_matrix(fps: Sequence[Fingerprint]) -> np.ndarray:
    """All-pairs Tanimoto; entries equal :func:`tanimoto` exactly."""
    if not fps:
        return np.zeros((0, 0))
    width, radius = fps[0].width, fps[0].radius
    for fp in fps:
        if fp.width != width or fp.radius != radius:
            raise WidthMismatch("fingerprints differ in width or radius")
    bits = np.stack([fp.to_array() for fp in fps]).astype(np.float32)
    inter = (bits @ bits.T).astype(np.float64)
    counts = bits.sum(axis=1).astype(np.float64)
    union = counts[:, None] + counts[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(union > 0, inter / np.where(union > 0, union, 1.0), 1.0)
    return sim


@dataclass(frozen=True)
class DescriptorVector:
    molecular_weight: float
    heavy_atom_count: int
    ring_count: int
    aromatic_ring_count: int
    hbd: int
    hba: int
    rotatable_bonds: int
    formal_charge_sum: int
    fraction_aromatic_atoms: float

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(float(getattr(self, name)) for name in self.names())


DESCRIPTOR_NAMES = DescriptorVector.names()


def _aromatic_ring_count(mol: Molecule) -> int:
    """Rings of a minimum cycle basis whose atoms and bonds are all aromatic."""
    if mol.cyclomatic_number == 0:
        return 0
    g = nx.Graph()
    g.add_edges_from(b.key for b in mol.bonds)
    count = 0
    for cycle in nx.minimum_cycle_basis(g):
        members = set(cycle)
        if not all(mol.atoms[i].aromatic for i in members):
            continue
        inner = [b for b in mol.bonds if b.a in members and b.b in members]
        if all(b.order is BondOrder.AROMATIC for b in inner):
            count += 1
    return count


def descriptors(mol: Molecule) -> DescriptorVector:
    hs = mol.hydrogen_counts
    heavy = [a for a in mol.atoms if a.atomic_number > 1]
    weight = sum(ATOMIC_WEIGHT[a.atomic_number] for a in mol.atoms) + sum(hs) * ATOMIC_WEIGHT[1]
    hbd = sum(1 for a in mol.atoms if a.atomic_number in (7, 8) and hs[a.index] > 0)
    hba = sum(1 for a in mol.atoms if a.atomic_number in (7, 8))
    heavy_degree = [
        sum(1 for j, _ in mol.adjacency[i] if mol.atoms[j].atomic_number > 1)
        for i in range(len(mol.atoms))
    ]
    rotatable = sum(
        1
        for b in mol.bonds
        if b.order is BondOrder.SINGLE
        and b.key not in mol.ring_bonds
        and mol.atoms[b.a].atomic_number > 1
        and mol.atoms[b.b].atomic_number > 1
        and heavy_degree[b.a] >= 2
        and heavy_degree[b.b] >= 2
    )
    n_arom = sum(1 for a in heavy if a.aromatic)
    return DescriptorVector(
        molecular_weight=weight,
        heavy_atom_count=len(heavy),
        ring_count=mol.cyclomatic_number,
        aromatic_ring_count=_aromatic_ring_count(mol),
        hbd=hbd,
        hba=hba,
        rotatable_bonds=rotatable,
        formal_charge_sum=sum(a.formal_charge for a in mol.atoms),
        fraction_aromatic_atoms=n_arom / len(heavy) if heavy else 0.0,
    )
