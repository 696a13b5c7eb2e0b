# Arbitrating between several image-to-SMILES recognizers.
#
# Without real recognizers attached, depiction records stand in for images:
# each embeds the SMILES it depicts.  Three stand-in recognizers are combined
# and the arbiter keeps the candidate whose re-rendering best matches the input.

import numpy as np

from patentchem.data import corpus_smiles
from patentchem.ocsr import MockRecognizer, TruthRecognizer, arbitrate, decode_record, depiction_record

corpus = corpus_smiles()
rng = np.random.default_rng(0)


def sloppy(image):
    # drops the last character, which is often enough to break the SMILES
    return decode_record(image)[:-1]


recognizers = [MockRecognizer(sloppy), TruthRecognizer(), MockRecognizer("c1ccccc1")]

# %% One image, every candidate.
image = depiction_record("CC(=O)Oc1ccccc1C(=O)O")
result = arbitrate(image, recognizers)
for c in result.candidates:
    print(c.model_id, c.valid, f"{c.similarity:.3f}", c.standardized or c.diagnostic)
print("selected model", result.selected_model, "->", result.final_smiles)

# %% Over 50 corpus molecules, how often does each model win?
wins = np.zeros(len(recognizers), dtype=int)
for s in rng.choice(corpus, 50, replace=False):
    wins[arbitrate(depiction_record(str(s)), recognizers).selected_model - 1] += 1
print("wins per model:", wins.tolist())
