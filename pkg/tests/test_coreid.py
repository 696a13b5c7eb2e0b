import json
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import std_mol
from oracles import MCS_PAIRS, brute_force_mcs_size, induced_match, label_graph
from patentchem.chem import ParseDiagnostic, write_smiles
from patentchem.coreid import (
    CompoundRecord,
    RankingReport,
    assemble_features,
    assemble_patents,
    contains,
    feature_columns,
    make_report,
    mcs,
    mcs_pair,
    percent_cutoff,
    rank_core,
    topk_metrics,
)
from patentchem.errors import UnlabeledReport
from patentchem.learn import EnsembleModel, train_boosted, train_forest
from patentchem.molfeat import DESCRIPTOR_NAMES, descriptors, ecfp
from patentchem.simnet import CUTOFF_GRID, NETWORK_FEATURE_NAMES, build_graph, network_features
from patentchem.synthetic import make_patent

TOY = [("A", "c1ccccc1O"), ("B", "Cc1ccccc1O"), ("C", "CCN")]


def records(pairs, pid="P1", core=None):
    return [CompoundRecord(pid, cid, s, None if core is None else cid == core) for cid, s in pairs]


# --- features ------------------------------------------------------------------

def test_column_layout():
    cols = feature_columns()
    assert len(cols) == 45
    assert cols[:9] == DESCRIPTOR_NAMES
    assert cols[9:15] == tuple(f"{n}@0.4" for n in NETWORK_FEATURE_NAMES)
    assert cols[-1] == f"{NETWORK_FEATURE_NAMES[-1]}@0.9"
    X = assemble_features(records(TOY))
    assert X.values.shape == (3, 45) and X.columns == cols
    assert X.row_ids == ("A", "B", "C") and X.labels is None


def test_features_match_direct_recomputation():
    X = assemble_features(records(TOY))
    mols = {cid: std_mol(s) for cid, s in TOY}
    fps = {cid: ecfp(m) for cid, m in mols.items()}
    for row, (cid, _) in zip(X.values, TOY):
        expected = list(descriptors(mols[cid]).as_tuple())
        for c in CUTOFF_GRID:
            expected += network_features(build_graph(fps, c))[cid].as_tuple()
        assert row.tolist() == expected


def test_duplicate_compounds_give_identical_rows():
    X = assemble_features(records([("A", "CCO"), ("B", "OCC"), ("C", "c1ccccc1")]))
    assert np.array_equal(X.values[0], X.values[1])


def test_bad_smiles_names_compound():
    with pytest.raises(ParseDiagnostic) as info:
        assemble_features(records([("A", "CCO"), ("bad7", "C1CC")]))
    assert info.value.compound_id == "bad7"


def test_canonical_smiles_filled_in():
    rec = CompoundRecord("P", "x", "OCC")
    assert rec.canonical_smiles == "CCO"


def test_too_few_or_duplicate_compounds():
    with pytest.raises(ValueError):
        assemble_features(records([("A", "C")]))
    with pytest.raises(ValueError):
        assemble_features(records([("A", "C"), ("A", "CC")]))


def test_network_features_stay_within_patent():
    p1 = records(TOY, "P1")
    p2 = records([("X", "CCO"), ("Y", "CCCO")], "P2")
    stacked = assemble_patents([p1, p2])
    assert np.array_equal(stacked.values[:3], assemble_features(p1).values)
    assert stacked.groups == ("P1",) * 3 + ("P2",) * 2


# --- ranking ---------------------------------------------------------------------

class Oracle:
    def __init__(self, scores):
        self.scores = scores

    def predict_proba(self, X):
        return np.array([self.scores.get(cid, 0.1) for cid in X.row_ids])


def test_oracle_model_puts_core_first():
    comps = records([(f"c{i}", "C" * (i + 1)) for i in range(10)], core="c6")
    report = rank_core(comps, Oracle({"c6": 0.9}))
    assert report.rank_of_core == 1 and report.top1
    assert [cid for cid, _ in report.ranked[1:]] == sorted(f"c{i}" for i in range(10) if i != 6)


def test_equal_probabilities_sort_by_id():
    report = make_report("P", ["b", "c", "a"], [0.5, 0.5, 0.5])
    assert [cid for cid, _ in report.ranked] == ["a", "b", "c"]
    assert report.rank_of_core is None and report.flags() is None


def test_report_invariants_enforced():
    with pytest.raises(ValueError):
        RankingReport("P", (("a", 0.1), ("b", 0.2)))
    with pytest.raises(ValueError):
        RankingReport("P", (("b", 0.2), ("a", 0.2)))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=40), st.data())
def test_ranking_is_a_permutation(probs, data):
    ids = [f"id{i:02d}" for i in range(len(probs))]
    core = data.draw(st.sampled_from(ids))
    r = make_report("P", ids, probs, core)
    assert sorted(cid for cid, _ in r.ranked) == ids
    assert all(0 <= p <= 1 for _, p in r.ranked)
    assert r.ranked[r.rank_of_core - 1][0] == core
    f = r.flags()
    assert f["Top 1"] <= f["Top 5"] <= f["Top 10"]
    assert f["Top 5%"] <= f["Top 10%"]
    assert RankingReport.from_dict(json.loads(r.to_json())) == r


def rank_report(rank, n):
    ids = [f"c{i:03d}" for i in range(n)]
    probs = np.linspace(1, 0, n)
    return make_report("P", ids, probs, ids[rank - 1])


def test_rank_three_of_ten():
    assert rank_report(3, 10).flags() == {
        "Top 1": False, "Top 5": True, "Top 10": True, "Top 5%": False, "Top 10%": False}


def test_rank_one_sets_all_flags():
    assert all(rank_report(1, 37).flags().values())


@pytest.mark.parametrize("pct,n,k", [(10, 10, 1), (10, 11, 2), (5, 50, 3), (10, 50, 5), (5, 20, 1), (1, 150, 2)])
def test_percent_cutoff_is_ceiling(pct, n, k):
    assert percent_cutoff(pct, n) == k


def test_topk_percentages():
    reports = [rank_report(1, 10), rank_report(3, 10), rank_report(6, 50), rank_report(12, 20)]
    s = topk_metrics(reports)
    assert s.percentages == {"Top 1": 25.0, "Top 5": 50.0, "Top 10": 75.0, "Top 5%": 25.0, "Top 10%": 25.0}
    assert "Top 1%" in topk_metrics(reports, include_top1_percent=True).percentages
    assert s.n_patents == 4


def test_topk_rounds_to_two_decimals():
    reports = [rank_report(1, 10)] + [rank_report(9, 10)] * 2
    assert topk_metrics(reports).percentages["Top 1"] == 33.33
    reports = [rank_report(1, 10)] * 2 + [rank_report(9, 10)]
    assert topk_metrics(reports).percentages["Top 1"] == 66.67


def test_unlabeled_report_rejected():
    with pytest.raises(UnlabeledReport):
        topk_metrics([rank_report(1, 5), make_report("Q", ["a"], [0.3])])


def test_markdown_has_metric_columns():
    md = rank_report(2, 12).to_markdown()
    assert "| Top 1 | Top 5 | Top 10 | Top 5% | Top 10% |" in md
    assert "| 0 | 1 | 1 | 0 | 1 |" in md


# --- MCS -----------------------------------------------------------------

def scaffold_smiles(*smiles):
    return write_smiles(mcs([std_mol(s) for s in smiles]).scaffold)


def test_mcs_examples():
    assert scaffold_smiles("c1ccccc1", "Cc1ccccc1") == "c1ccccc1"
    assert scaffold_smiles("C", "CC") == "C"
    assert scaffold_smiles("CCO", "CCO") == "CCO"


@pytest.mark.parametrize("a,b", MCS_PAIRS)
def test_mcs_matches_exhaustive_oracle(a, b):
    ma, mb = std_mol(a), std_mol(b)
    t0 = time.monotonic()
    res = mcs_pair(ma, mb)
    assert time.monotonic() - t0 < 5.0
    assert res.exhausted
    assert len(res.mapping) == brute_force_mcs_size(a, b)
    # the mapping itself is an induced, label-preserving embedding
    if res.mapping:
        frag = ma.subgraph(sorted(res.mapping))
        assert contains(mb, frag) and contains(ma, frag)
        assert induced_match(label_graph(mb), label_graph(frag))


@pytest.mark.parametrize("a,b", MCS_PAIRS)
def test_mcs_pair_symmetric(a, b):
    assert len(mcs_pair(std_mol(a), std_mol(b)).mapping) == len(mcs_pair(std_mol(b), std_mol(a)).mapping)


def test_scaffold_contained_in_every_input():
    smiles = ["CC(C)Cc1ccccc1", "CCc1ccc(O)cc1", "Oc1ccccc1CN"]
    res = mcs([std_mol(s) for s in smiles])
    assert res.coverage == 1.0 and res.search_exhausted
    assert all(contains(std_mol(s), res.scaffold) for s in smiles)
    # ring plus the benzylic carbon
    assert write_smiles(res.scaffold) == "[CH2]c1ccccc1"


def test_empty_scaffold_coverage():
    res = mcs([std_mol("C1CCCCC1"), std_mol("c1ccccc1")])
    assert res.n_atoms == 0
    assert 0 < res.coverage <= 1


def test_zero_budget_is_anytime():
    res = mcs([std_mol("c1ccc2ccccc2c1"), std_mol("c1ccc2[nH]ccc2c1")], time_budget=0.0)
    assert isinstance(res.search_exhausted, bool)
    with pytest.raises(ValueError):
        mcs([std_mol("C")])


# --- synthetic end-to-end -------------------------------------------------------

def synthetic_records(rng, pid, n):
    return [CompoundRecord(pid, c.compound_id, c.smiles, c.is_core) for c in make_patent(rng, n, prefix=pid)]


def test_fifty_compound_patent_core_in_top_ten():
    rng = np.random.default_rng(2024)
    train = assemble_patents([synthetic_records(rng, f"T{i}", 16) for i in range(7)])
    model = EnsembleModel(train_forest(train, n_trees=200, seed=1), train_boosted(train, rounds=100, max_depth=3))
    target = synthetic_records(rng, "Q", 50)
    report = rank_core(target, model)
    assert report.n_compounds == 50
    assert report.rank_of_core <= 10
