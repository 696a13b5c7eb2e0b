"""Synthetic molecules and patents built from scaffold templates.

A synthetic patent mimics a medicinal-chemistry series: one core compound, a
set of analogues that each change one or two substituents of the core, and
unrelated decoys.  These are the fixtures behind the end-to-end studies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Each template has three substituent sites.  A site is rendered as a branch
# "(X)" or dropped entirely, so every substitution stays valid SMILES.
SCAFFOLDS = (
    "c1cc{0}c(cc1{1})C(=O)NC2CCN(CC2){2}",
    "c1ccc2c(c1{0})nc(C{2})n2C{1}",
    "O=C(Nc1ccc{0}cc1)c1ccc{1}nc1{2}",
    "c1nc(N{0})c2cc{1}c(C{2})cc2n1",
    "C1CN(CCN1{0})c1ccc(cc1{1})S(=O)(=O)N{2}",
    "c1cc{0}cc(c1)-c1nc(no1)CC{1}N{2}",
    "O=C1N(C{0})c2ccc{1}cc2C1=CC{2}",
    "c1csc(c1{0})C(=O)N1CCC(CC1{1})O{2}",
    "c1ccc(cc1{0})Oc1ncnc2c1cc{1}n2C{2}",
    "N#Cc1cc{0}c(cc1)N1CCC(C1{1})C(=O)O{2}",
    "c1cn(C{0})c2ccc(cc12)C(=O)N(C{1})C{2}",
    "O=S(=O)(c1ccc{0}cc1)N1CCOC(C1)C{1}C{2}",
)

# Ring labels inside substituents use %nn so they never collide with the
# single-digit labels still open in a template.
SUBSTITUENTS = (
    "C", "CC", "OC", "F", "Cl", "Br", "C(F)(F)F", "N(C)C", "C(=O)N", "C#N",
    "S(C)(=O)=O", "O", "N", "C(=O)OC", "OCC", "C%12CC%12", "c%10ccccc%10",
    "c%11ccncc%11", "C(C)C", "OC(F)(F)F", "NC(=O)C", "CN%13CCOCC%13",
    "c%14ccc(F)cc%14", "CCO",
)


def assemble(template: str, subs: tuple[str, ...]) -> str:
    return template.format(*[f"({s})" if s else "" for s in subs])


def random_compound(rng: np.random.Generator, template: str | None = None) -> str:
    if template is None:
        template = SCAFFOLDS[rng.integers(len(SCAFFOLDS))]
    subs = tuple(
        "" if rng.random() < 0.2 else SUBSTITUENTS[rng.integers(len(SUBSTITUENTS))]
        for _ in range(3)
    )
    return assemble(template, subs)


@dataclass(frozen=True)
class SyntheticCompound:
    compound_id: str
    smiles: str
    is_core: bool


def make_patent(
    rng: np.random.Generator,
    n_compounds: int = 50,
    active_fraction: float = 0.7,
    prefix: str = "C",
) -> list[SyntheticCompound]:
    """One synthetic patent: a core, its analogues, and decoys.

    Analogues change one or two substituent sites of the core.  Decoys come
    from other scaffolds.  Compound ids are shuffled so position carries no
    signal.
    """
    scaffold_idx = int(rng.integers(len(SCAFFOLDS)))
    template = SCAFFOLDS[scaffold_idx]
    core_subs = tuple(SUBSTITUENTS[int(k)] for k in rng.choice(len(SUBSTITUENTS), 3, replace=False))
    core = assemble(template, core_subs)
    seen = {core}
    smiles = [core]
    n_active = max(1, int(round(active_fraction * (n_compounds - 1))))
    attempts = 0
    while len(smiles) < 1 + n_active and attempts < 10_000:
        attempts += 1
        subs = list(core_subs)
        for site in rng.choice(3, size=int(rng.integers(1, 3)), replace=False):
            subs[site] = SUBSTITUENTS[int(rng.integers(len(SUBSTITUENTS)))]
        s = assemble(template, tuple(subs))
        if s not in seen:
            seen.add(s)
            smiles.append(s)
    others = [t for k, t in enumerate(SCAFFOLDS) if k != scaffold_idx]
    while len(smiles) < n_compounds:
        s = random_compound(rng, others[int(rng.integers(len(others)))])
        if s not in seen:
            seen.add(s)
            smiles.append(s)
    order = rng.permutation(len(smiles))
    width = len(str(len(smiles)))
    return [
        SyntheticCompound(f"{prefix}{rank:0{width}d}", smiles[k], k == 0)
        for rank, k in enumerate(order, start=1)
    ]
