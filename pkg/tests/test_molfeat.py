import numpy as np
import pytest
from hypothesis import given, strategies as st

from patentchem.errors import WidthMismatch
from patentchem.molfeat import (
    DESCRIPTOR_NAMES,
    Fingerprint,
    descriptors,
    ecfp,
    environment_codes,
    tanimoto,
    tanimoto_matrix,
)

from conftest import mol, std_mol

bitsets = st.sets(st.integers(0, 127), max_size=40)


def brute_force_environment_count(m, radius):
    """Count distinct environments by explicit enumeration, without hashing.

    An environment is a nested tuple (centre invariant, sorted neighbour
    environments one level shallower).  Environments whose atom ball was
    already produced are dropped; ties on the same ball within one radius
    must be symmetric (equal descriptions) for this oracle to apply.
    """
    hs = m.hydrogen_counts
    ring = m.atom_in_ring
    inv = [
        (a.atomic_number, a.formal_charge, m.degree(a.index), hs[a.index], int(ring[a.index]))
        for a in m.atoms
    ]
    desc = [("r0", x) for x in inv]
    balls = [frozenset([i]) for i in range(len(m.atoms))]
    found = set(desc)
    seen = set(balls)
    for r in range(1, radius + 1):
        desc = [
            (r, desc[i], tuple(sorted((int(o), desc[j]) for j, o in m.adjacency[i])))
            for i in range(len(m.atoms))
        ]
        balls = [balls[i].union(*(balls[j] for j, _ in m.adjacency[i])) for i in range(len(m.atoms))]
        groups = {}
        for d, b in zip(desc, balls):
            if b not in seen:
                groups.setdefault(b, set()).add(d)
        for ds in groups.values():
            assert len(ds) == 1, "asymmetric tie: oracle does not apply"
            found |= ds
        seen |= set(groups)
    return len(found)


def test_methane_single_environment():
    assert ecfp(mol("C")).popcount == 1
    assert brute_force_environment_count(mol("C"), 2) == 1


@pytest.mark.parametrize("smiles", ["CCO", "CCC", "c1ccccc1", "CC(C)C", "OCCO", "C1CC1", "CC=O", "N#CC"])
def test_environment_count_matches_enumeration(smiles):
    m = std_mol(smiles)
    assert len(environment_codes(m, 2)) == brute_force_environment_count(m, 2)


def test_ethanol_popcount():
    # 3 atom invariants + 3 new balls at radius 1; radius 2 adds nothing
    assert ecfp(mol("CCO")).popcount == 6


def test_relabeling_invariance_simple():
    assert ecfp(mol("CCO")) == ecfp(mol("OCC"))


@given(st.integers(0, 10_000))
def test_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    m = std_mol("CC(=O)Nc1ccc(O)cc1C(F)(F)F")
    p = m.permuted(list(rng.permutation(len(m.atoms))))
    assert ecfp(p) == ecfp(m)


def test_environment_monotone_in_radius(corpus):
    for s in corpus[::11]:
        m = std_mol(s)
        counts = [len(environment_codes(m, r)) for r in range(4)]
        assert counts == sorted(counts)


def test_width_validation():
    with pytest.raises(ValueError):
        ecfp(mol("C"), width=100)
    with pytest.raises(ValueError):
        ecfp(mol("C"), width=32)
    with pytest.raises(ValueError):
        ecfp(mol("C"), radius=-1)


def test_tanimoto_examples():
    a = Fingerprint.from_indices([1, 2, 3], 64)
    b = Fingerprint.from_indices([2, 3, 4], 64)
    assert tanimoto(a, b) == 0.5
    assert tanimoto(a, a) == 1.0
    assert tanimoto(a, Fingerprint.from_indices([10, 11], 64)) == 0.0
    empty = Fingerprint(0, 64)
    assert tanimoto(empty, empty) == 1.0


def test_tanimoto_width_mismatch():
    with pytest.raises(WidthMismatch):
        tanimoto(Fingerprint(1, 64), Fingerprint(1, 128))
    with pytest.raises(WidthMismatch):
        tanimoto(Fingerprint(1, 64, 2), Fingerprint(1, 64, 3))


@given(bitsets, bitsets)
def test_tanimoto_set_formula(x, y):
    a, b = Fingerprint.from_indices(x, 128), Fingerprint.from_indices(y, 128)
    expected = 1.0 if not (x | y) else len(x & y) / len(x | y)
    assert tanimoto(a, b) == expected
    assert tanimoto(a, b) == tanimoto(b, a)
    assert 0.0 <= tanimoto(a, b) <= 1.0


@given(st.lists(bitsets, min_size=1, max_size=8))
def test_matrix_matches_pairwise(sets):
    fps = [Fingerprint.from_indices(s, 128) for s in sets]
    mat = tanimoto_matrix(fps)
    for i, a in enumerate(fps):
        for j, b in enumerate(fps):
            assert mat[i, j] == tanimoto(a, b)


@given(bitsets)
def test_popcount_and_hex_round_trip(x):
    fp = Fingerprint.from_indices(x, 128)
    assert fp.popcount == len(x) == int(fp.to_array().sum())
    assert len(fp.to_hex()) == 32
    assert Fingerprint.from_hex(fp.to_hex()) == fp
    assert set(fp.on_bits()) == x


def test_hex_is_msb_first():
    assert Fingerprint.from_indices([0], 64).to_hex() == "0" * 15 + "1"
    assert Fingerprint.from_indices([63], 64).to_hex() == "8" + "0" * 15


def test_water_descriptors():
    d = descriptors(mol("O"))
    # 15.999 + 2 * 1.008
    assert d.molecular_weight == pytest.approx(18.02, abs=0.01)
    assert (d.hbd, d.hba, d.heavy_atom_count) == (1, 1, 1)


def test_benzene_descriptors():
    d = descriptors(std_mol("C1=CC=CC=C1"))
    assert d.ring_count == 1
    assert d.aromatic_ring_count == 1
    assert d.rotatable_bonds == 0
    assert d.fraction_aromatic_atoms == 1.0


def test_ethanol_rotatable_bonds():
    # C-C: the methyl has heavy degree 1; C-O: the oxygen has heavy degree 1
    assert descriptors(mol("CCO")).rotatable_bonds == 0
    assert descriptors(mol("CCCC")).rotatable_bonds == 1


def test_descriptor_arithmetic_on_aspirin():
    m = std_mol("CC(=O)Oc1ccccc1C(=O)O")
    d = descriptors(m)
    assert d.molecular_weight == pytest.approx(180.16, abs=0.01)
    assert d.heavy_atom_count == 13
    assert d.ring_count == len(m.bonds) - len(m.atoms) + 1
    assert d.hbd == 1 and d.hba == 4
    assert d.formal_charge_sum == 0
    assert d.rotatable_bonds == 3


def test_descriptor_invariants(corpus):
    for s in corpus[::5]:
        d = descriptors(std_mol(s))
        assert all(getattr(d, n) >= 0 for n in DESCRIPTOR_NAMES if n != "formal_charge_sum")
        assert 0.0 <= d.fraction_aromatic_atoms <= 1.0
        assert d.aromatic_ring_count <= d.ring_count
