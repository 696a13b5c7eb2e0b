import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from patentchem.chem import (
    BondOrder,
    canonical_ranks,
    kekulize,
    parse_smiles,
    standardize,
    write_smiles,
)

from conftest import isomorphic, mol, std_mol

SAMPLES = [
    "CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "c1ccc2ccccc2c1", "C1CC2CCC1C2", "[NH4+].[Cl-]", "O=C([O-])c1ccccc1", "c1cc[nH]c1",
    "C1=CC=CC=C1C#N", "[2H]C([2H])([2H])O", "CC(C)(C)c1ccc(O)cc1", "C%11CCCCC%11",
]


def test_single_atom():
    assert write_smiles(parse_smiles("C")) == "C"


def test_order_of_writing_does_not_matter():
    assert write_smiles(parse_smiles("OCC")) == write_smiles(parse_smiles("CCO"))
    assert standardize("OCC") == standardize("CCO")


def test_benzene_ranks_single_class():
    assert len(set(canonical_ranks(parse_smiles("c1ccccc1")))) == 1


def test_ethanol_ranks_distinct():
    assert len(set(canonical_ranks(parse_smiles("CCO")))) == 3


def test_ranks_follow_relabeling():
    a = canonical_ranks(parse_smiles("CCO"))
    b = canonical_ranks(parse_smiles("OCC"))
    # atom k of "OCC" is atom 2-k of "CCO"
    assert [b[2 - k] for k in range(3)] == list(a)


def _huckel_electrons(m, cycle):
    ring = set(cycle)
    electrons = 0
    for i in cycle:
        for j, order in m.adjacency[i]:
            if order is BondOrder.DOUBLE and j in ring:
                electrons += 1
    return electrons


def test_kekule_benzene_standardizes_like_aromatic():
    kek = parse_smiles("C1=CC=CC=C1")
    # independent oracle: one 6-cycle carrying 6 pi electrons satisfies 4n+2
    g = nx.Graph([b.key for b in kek.bonds])
    cycles = nx.cycle_basis(g)
    assert len(cycles) == 1 and len(cycles[0]) == 6
    e = _huckel_electrons(kek, cycles[0])
    assert e == 6 and (e - 2) % 4 == 0
    out = standardize("C1=CC=CC=C1")
    assert out == standardize("c1ccccc1")
    assert all(a.aromatic for a in parse_smiles(out).atoms)


def test_antiaromatic_and_quinone_stay_kekule():
    # 4 pi electrons in a 4-ring and a cross-conjugated quinone are not aromatic
    assert not any(a.aromatic for a in parse_smiles(standardize("C1=CC=C1")).atoms)
    assert not any(a.aromatic for a in parse_smiles(standardize("O=C1C=CC(=O)C=C1")).atoms)


@pytest.mark.parametrize("smiles", SAMPLES)
def test_idempotent(smiles):
    once = standardize(smiles)
    assert standardize(once) == once


@pytest.mark.parametrize("smiles", SAMPLES)
def test_round_trip_isomorphic(smiles):
    m = std_mol(smiles)
    assert isomorphic(parse_smiles(write_smiles(m)), m)


def test_kekulize_gives_alternating_bonds():
    k = kekulize(parse_smiles("c1ccccc1"))
    orders = sorted(int(b.order) for b in k.bonds)
    assert orders == [1, 1, 1, 2, 2, 2]


@given(st.sampled_from(SAMPLES), st.randoms(use_true_random=False))
def test_relabeling_invariance(smiles, rnd):
    m = std_mol(smiles)
    order = list(range(len(m.atoms)))
    rnd.shuffle(order)
    assert write_smiles(m.permuted(order)) == write_smiles(m)


def test_equal_strings_imply_isomorphic(corpus):
    # soundness on the corpus: group by canonical string, members must be isomorphic
    groups = {}
    for s in corpus[:300]:
        m = std_mol(s)
        groups.setdefault(write_smiles(m), []).append(m)
    for members in groups.values():
        for other in members[1:]:
            assert isomorphic(members[0], other)


def test_completeness_on_corpus_permutations(corpus):
    rng = np.random.default_rng(5)
    for s in corpus[::7]:
        m = std_mol(s)
        ref = write_smiles(m)
        for _ in range(3):
            assert write_smiles(m.permuted(list(rng.permutation(len(m.atoms))))) == ref
