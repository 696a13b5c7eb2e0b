"""Bundled data files."""

from importlib import resources


def corpus_smiles() -> list[str]:
    """The bundled SMILES corpus, one entry per non-blank line."""
    text = resources.files(__name__).joinpath("corpus.smi").read_text(encoding="utf-8")
    return [line.split()[0] for line in text.splitlines() if line.strip()]
