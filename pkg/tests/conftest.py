import warnings

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from patentchem.chem import parse_smiles, standardize_molecule
from patentchem.data import corpus_smiles

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def mol(smiles):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return parse_smiles(smiles)


def std_mol(smiles):
    return standardize_molecule(mol(smiles))


def labelled_graph(m):
    """networkx view with every graph-identity attribute on nodes and edges."""
    g = nx.Graph()
    hs = m.hydrogen_counts
    for a in m.atoms:
        g.add_node(a.index, z=a.atomic_number, q=a.formal_charge, iso=a.isotope,
                   arom=a.aromatic, h=hs[a.index])
    for b in m.bonds:
        g.add_edge(b.a, b.b, order=int(b.order))
    return g


def isomorphic(m1, m2):
    return nx.is_isomorphic(
        labelled_graph(m1), labelled_graph(m2),
        node_match=lambda x, y: x == y, edge_match=lambda x, y: x == y,
    )


@pytest.fixture(scope="session")
def corpus():
    return corpus_smiles()


def synthetic_bundles(seed, n_patents, n_compounds, prefix="P"):
    """Labeled synthetic patents as workbench bundles."""
    import numpy as np

    from patentchem.coreid import CompoundRecord
    from patentchem.synthetic import make_patent
    from patentchem.workbench import PatentBundle

    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_patents):
        pid = f"{prefix}{i:02d}"
        comps = tuple(CompoundRecord(pid, c.compound_id, c.smiles, c.is_core)
                      for c in make_patent(rng, n_compounds, prefix="C"))
        out.append(PatentBundle(pid, comps))
    return out


_CRITERIA = {}


@pytest.fixture()
def criterion(request):
    """Record one acceptance line: criterion(number, ok, detail)."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
