# Molecules, canonical SMILES and circular fingerprints.
#
# Run with:  python3 demos/01_molecules_and_fingerprints.py

import numpy as np

from patentchem.chem import parse_smiles, standardize, standardize_molecule, write_smiles
from patentchem.molfeat import descriptors, ecfp, tanimoto, tanimoto_matrix

# %% Two spellings of the same molecule standardize to one string.
print(standardize("C1=CC=CC=C1O"), standardize("Oc1ccccc1"))

# %% Parse errors carry the byte offset of the problem.
try:
    parse_smiles("CC(C")
except ValueError as exc:
    print("parse error:", exc)

# %% A small analogue series.
series = {
    "aspirin": "CC(=O)Oc1ccccc1C(=O)O",
    "salicylic acid": "OC(=O)c1ccccc1O",
    "methyl salicylate": "COC(=O)c1ccccc1O",
    "ibuprofen": "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
}
mols = {name: standardize_molecule(parse_smiles(s)) for name, s in series.items()}
for name, m in mols.items():
    d = descriptors(m)
    print(f"{name:18s} {write_smiles(m):32s} MW {d.molecular_weight:7.2f}  HBD {d.hbd}  HBA {d.hba}")

# %% ECFP4 bit vectors and their pairwise Tanimoto similarity.
fps = [ecfp(m) for m in mols.values()]
print("popcounts:", [f.popcount for f in fps])
np.set_printoptions(precision=2, suppress=True)
print(tanimoto_matrix(fps))
print("aspirin vs salicylic acid:", round(tanimoto(fps[0], fps[1]), 3))
