"""Independent reference implementations used by several test modules."""

from itertools import combinations

import networkx as nx
from networkx.algorithms import isomorphism

from conftest import std_mol

# hand-built pairs with small enough graphs for exhaustive enumeration
MCS_PAIRS = (
    ("c1ccccc1", "Cc1ccccc1"),
    ("C", "CC"),
    ("CCO", "OCC"),
    ("c1ccncc1", "c1ccccc1"),
    ("CC(=O)O", "CCO"),
    ("C1CCCCC1", "c1ccccc1"),
    ("c1ccc2ccccc2c1", "c1ccc2[nH]ccc2c1"),
    ("CC(C)Cc1ccccc1", "CCc1ccc(O)cc1"),
    ("O=C(O)c1ccccc1O", "CC(=O)Oc1ccccc1"),
    ("C1CCNCC1", "CN1CCCC1"),
)


def label_graph(m):
    g = nx.Graph()
    for a in m.atoms:
        g.add_node(a.index, label=(a.atomic_number, a.aromatic))
    for b in m.bonds:
        g.add_edge(b.a, b.b, order=int(b.order))
    return g


def induced_match(big, small) -> bool:
    gm = isomorphism.GraphMatcher(
        big, small,
        node_match=lambda x, y: x["label"] == y["label"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )
    return gm.subgraph_is_isomorphic()


def brute_force_mcs_size(smiles_a: str, smiles_b: str) -> int:
    """Size of the largest connected atom subset of A whose induced graph occurs induced in B."""
    ga, gb = label_graph(std_mol(smiles_a)), label_graph(std_mol(smiles_b))
    nodes = list(ga)
    for k in range(len(nodes), 0, -1):
        for subset in combinations(nodes, k):
            sub = ga.subgraph(subset)
            if nx.is_connected(sub) and induced_match(gb, sub):
                return k
    return 0
