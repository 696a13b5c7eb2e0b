"""Regenerate src/patentchem/data/corpus.smi.

The corpus mixes hand-written molecules (drugs, heterocycles, charged and
isotopic species, Kekulé spellings, stereo marks, %nn ring labels) with
scaffold/substituent products.  Every entry must parse and standardize.

    python tools/build_corpus.py
"""

from pathlib import Path

import numpy as np

from patentchem.chem import standardize
from patentchem.synthetic import SCAFFOLDS, SUBSTITUENTS, assemble

HAND_WRITTEN = """
C
CC
CCC
CCCC
CC(C)C
CC(C)(C)C
CCCCCCCC
CCO
OCC
CO
C=C
C#C
CC#N
CC=O
CC(=O)O
CC(=O)N
CC(=O)OC
CCN
CCNCC
CCN(CC)CC
CCS
CSC
CS(C)=O
CS(=O)(=O)C
CP(=O)(O)O
OP(=O)(O)O
ClCCl
BrCCBr
ICC
FC(F)(F)F
OB(O)c1ccccc1
C[Si](C)(C)C
C=CC=C
C=CC#N
NC(=O)N
NC(=N)N
CN(C)C(=N)NC(=N)N
OCC(O)CO
OCC1OC(O)C(O)C(O)C1O
C1CC1
C1CCC1
C1CCCC1
C1CCCCC1
C1CCCCCC1
C1CCCCCCCCCCC1
C%11CCCCC%11
C1CC2CCC1C2
C1CC2CCC1CC2
C1C2CC3CC1CC(C2)C3
C12C3C4C1C5C2C3C45
C1CCC2(CC1)CCCC2
C1CCC2CCCCC2C1
C1COCCN1
C1CNCCN1
C1CCNCC1
C1CCOC1
C1CCSC1
O=C1CCCC1
O=C1CCCCC1
O=C1OCC1
c1ccccc1
C1=CC=CC=C1
Cc1ccccc1
CC1=CC=CC=C1
Oc1ccccc1
Nc1ccccc1
Clc1ccccc1
[18F]c1ccccc1
c1ccc(cc1)-c1ccccc1
c1ccc(cc1)Cc1ccccc1
c1ccc2ccccc2c1
C1=CC=C2C=CC=CC2=C1
c1ccc%12ccccc%12c1
c1ccc2cc3ccccc3cc2c1
c1ccc2c(c1)ccc1ccccc12
c1cc2ccc3cccc4ccc(c1)c2c34
c1ccc2cccc2cc1
c1ccncc1
c1ccc2ncccc2c1
c1ccc2cnccc2c1
c1cc[nH]c1
c1ccoc1
c1ccsc1
c1c[nH]cn1
c1cc[nH]n1
c1cocn1
c1cscn1
c1cncnc1
c1cnccn1
c1ccnnc1
c1nc[nH]n1
c1nnn[nH]1
c1ccc2[nH]ccc2c1
c1ccc2[nH]cnc2c1
c1ccc2sccc2c1
c1ccc2occc2c1
c1ncc2[nH]cnc2n1
c1ccc2c(c1)[nH]c1ccccc12
Cn1ccnc1
Cn1cccc1
O=c1cccc[nH]1
O=C1NC=CC=C1
Nc1ncnc2[nH]cnc12
Nc1nc2[nH]cnc2c(=O)[nH]1
O=c1cc[nH]c(=O)[nH]1
Cc1c[nH]c(=O)[nH]c1=O
Nc1cc[nH]c(=O)n1
Cn1cnc2c1c(=O)n(C)c(=O)n2C
CN1C=NC2=C1C(=O)N(C)C(=O)N2C
CC(=O)Oc1ccccc1C(=O)O
CC(C)Cc1ccc(cc1)C(C)C(=O)O
CC(=O)Nc1ccc(O)cc1
COc1ccc2cc(ccc2c1)C(C)C(=O)O
OC(=O)Cc1ccccc1Nc1c(Cl)cccc1Cl
CN1CCCC1c1cccnc1
CCN(CC)CC(=O)Nc1c(C)cccc1C
CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21
CNCCC(Oc1ccc(cc1)C(F)(F)F)c1ccccc1
CCCc1nn(C)c2c(=O)[nH]c(-c3cc(S(=O)(=O)N4CCN(C)CC4)ccc3OCC)nc12
Cc1ccc(NC(=O)c2ccc(CN3CCN(C)CC3)cc2)cc1Nc1nccc(-c2cccnc2)n1
CC(C)c1c(C(=O)Nc2ccccc2)c(-c2ccccc2)c(-c2ccc(F)cc2)n1CCC(O)CC(O)CC(=O)O
COc1ccc2[nH]c(S(=O)Cc3ncc(C)c(OC)c3C)nc2c1
Cc1ccc(-c2cc(C(F)(F)F)nn2-c2ccc(S(N)(=O)=O)cc2)cc1
CC(=O)CC(c1ccccc1)c1c(O)c2ccccc2oc1=O
CC1(C)SC2C(NC(=O)Cc3ccccc3)C(=O)N2C1C(=O)O
CN1CCC23c4c5ccc(O)c4OC2C(O)C=CC3C1C5
CC12CCC3C(CCC4=CC(=O)CCC34C)C1CCC2O
CC(C)CCCC(C)C1CCC2C3CC=C4CC(O)CCC4(C)C3CCC12C
COc1ccc2nccc(C(O)C3CC4CCN3CC4C=C)c2c1
CCN(CC)CCCC(C)Nc1ccnc2cc(Cl)ccc12
OC(=O)c1cn(C2CC2)c2cc(N3CCNCC3)c(F)cc2c1=O
CCC(=C(c1ccccc1)c1ccc(OCCN(C)C)cc1)c1ccccc1
CCCCc1nc(Cl)c(CO)n1Cc1ccc(-c2ccccc2-c2nnn[nH]2)cc1
CC(C)NCC(O)COc1cccc2ccccc12
CN1CCN(CC1)C(=O)c1ccc(cc1)Nc1ncc(F)c(n1)-c1ccccc1
COC(=O)C1=C(C)NC(C)=C(C1c1ccccc1[N+](=O)[O-])C(=O)OC
[O-][N+](=O)c1ccccc1
C[N+](C)(C)C
[Na+].[O-]C(=O)C
[NH4+].[Cl-]
C[n+]1ccccc1
[O-][n+]1ccccc1
[13CH4]
[2H]OC
[2H]C([2H])([2H])O
[Fe+2]
[Cu+2].[O-]S(=O)(=O)[O-]
[OH-]
[H]
[H][H]
F/C=C/F
F/C=C\\F
C[C@@H](O)CC
N[C@@H](C)C(=O)O
C[C@H](N)C(=O)O
OC(=O)[C@@H]1CCCN1
CC(C)[C@H](N)C(=O)O
"""


def main() -> None:
    rng = np.random.default_rng(20241016)
    entries = [s for s in HAND_WRITTEN.split() if s]
    for s in entries:
        standardize(s)
    seen = {standardize(s) for s in entries}
    generated = []
    while len(entries) + len(generated) < 560:
        template = SCAFFOLDS[int(rng.integers(len(SCAFFOLDS)))]
        subs = tuple(
            "" if rng.random() < 0.25 else SUBSTITUENTS[int(rng.integers(len(SUBSTITUENTS)))]
            for _ in range(3)
        )
        s = assemble(template, subs)
        key = standardize(s)
        if key not in seen:
            seen.add(key)
            generated.append(s)
    out = Path(__file__).resolve().parents[1] / "src" / "patentchem" / "data" / "corpus.smi"
    out.write_text("\n".join(entries + generated) + "\n")
    print(f"wrote {len(entries) + len(generated)} SMILES to {out}")


if __name__ == "__main__":
    main()
