# Training a core-compound ranker on a 112-compound mini-train and ranking a
# 50-compound patent, then extracting the common scaffold of the top hits.
#
# Takes about fifteen seconds on one core.

import numpy as np

from patentchem.chem import write_smiles
from patentchem.coreid import CompoundRecord, mcs, topk_metrics
from patentchem.synthetic import make_patent
from patentchem.workbench import PatentBundle, PipelineConfig, rank_bundle, train_pipeline


def bundles(seed, n_patents, n_compounds, prefix):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_patents):
        pid = f"{prefix}{i:02d}"
        recs = tuple(CompoundRecord(pid, c.compound_id, c.smiles, c.is_core)
                     for c in make_patent(rng, n_compounds))
        out.append(PatentBundle(pid, recs))
    return out


config = PipelineConfig(seed=0, budget=10)

# %% Seven patents of sixteen compounds each: 112 training rows.
train = bundles(1, 7, 16, "T")
result = train_pipeline(train, config)
print("kept columns:", len(result.model.columns), "of", len(result.metadata["all_columns"]))
print("chosen hyperparameters:", {k: round(v, 3) for k, v in result.metadata["params"].items()})

# %% Rank an unseen 50-compound patent.
query = bundles(2, 1, 50, "Q")[0]
report = rank_bundle(query, result.model, config)
print(report.to_markdown().split("| Rank |")[0])
for rank, (cid, p) in enumerate(report.ranked[:5], 1):
    print(f"{rank}. {cid}  p={p:.3f}")

# %% The maximal common substructure of the top five is a readable witness.
top = {cid for cid, _ in report.ranked[:5]}
scaffold = mcs([c.molecule() for c in query.compounds if c.compound_id in top])
print("scaffold:", write_smiles(scaffold.scaffold), f"coverage {scaffold.coverage:.2f}")

# %% Top-k table over a handful of held-out patents.
held_out = bundles(3, 8, 50, "H")
print(topk_metrics([rank_bundle(b, result.model, config) for b in held_out],
                   include_top1_percent=True).to_markdown("ensemble"))
