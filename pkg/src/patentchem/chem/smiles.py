"""SMILES reader.

Supports the organic subset, bracket atoms (isotope, charge, hydrogen count,
atom class), branches, ring closures including ``%nn``, aromatic lowercase
atoms and disconnected components.  Stereo marks (``/``, ``\\``, ``@``) are
recorded as annotations on atoms and bonds but do not take part in graph
identity.
"""

from __future__ import annotations

import enum
import warnings

from .elements import (
    AROMATIC_BRACKET,
    AROMATIC_ORGANIC,
    ATOMIC_NUMBER,
    ORGANIC_SYMBOLS,
)
from .molecule import Atom, Bond, BondOrder, Molecule


class DiagnosticKind(str, enum.Enum):
    UNBALANCED_PAREN = "UnbalancedParen"
    UNCLOSED_RING = "UnclosedRing"
    BAD_ELEMENT = "BadElement"
    BAD_CHARGE = "BadCharge"
    BAD_RING_DIGIT = "BadRingDigit"
    EMPTY_INPUT = "EmptyInput"
    UNSUPPORTED_FEATURE = "UnsupportedFeature"


class ParseDiagnostic(ValueError):
    """Malformed or unsupported SMILES.

    ``byte_offset`` points into the UTF-8 encoding of the input.
    """

    def __init__(self, kind: DiagnosticKind, byte_offset: int, message: str):
        self.kind = DiagnosticKind(kind)
        self.byte_offset = byte_offset
        self.message = message
        super().__init__(f"{self.kind.value} at byte {byte_offset}: {message}")


class StereoIgnoredWarning(UserWarning):
    pass


_BOND_SYMBOLS = {
    "-": BondOrder.SINGLE,
    "=": BondOrder.DOUBLE,
    "#": BondOrder.TRIPLE,
    ":": BondOrder.AROMATIC,
    "/": BondOrder.SINGLE,
    "\\": BondOrder.SINGLE,
}


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.offsets = [0]
        for ch in text:
            self.offsets.append(self.offsets[-1] + len(ch.encode("utf-8")))
        self.atoms: list[Atom] = []
        self.atom_pos: list[int] = []
        self.bonds: list[Bond] = []
        # None marks an implicit bond, resolved once ring membership is known
        self.bond_kind: list[str | None] = []
        self.bond_pos: list[int] = []
        self.pairs: set[tuple[int, int]] = set()
        self.stereo = False

    def fail(self, kind, pos, message):
        raise ParseDiagnostic(kind, self.offsets[pos], message)

    def add_bond(self, a, b, symbol, pos):
        key = (a, b) if a < b else (b, a)
        if key in self.pairs:
            self.fail(DiagnosticKind.BAD_RING_DIGIT, pos, "duplicate bond between the same atoms")
        self.pairs.add(key)
        if symbol in ("/", "\\"):
            self.stereo = True
        order = _BOND_SYMBOLS[symbol] if symbol else BondOrder.SINGLE
        self.bonds.append(Bond(a, b, order, stereo=symbol if symbol in ("/", "\\") else None))
        self.bond_kind.append(symbol)
        self.bond_pos.append(pos)

    def parse(self) -> Molecule:
        text = self.text
        n = len(text)
        if n == 0:
            raise ParseDiagnostic(DiagnosticKind.EMPTY_INPUT, 0, "empty SMILES")
        prev: int | None = None
        pending: tuple[str, int] | None = None
        branches: list[tuple[int, int]] = []
        rings: dict[int, tuple[int, str | None, int]] = {}
        last = "start"
        i = 0
        while i < n:
            ch = text[i]
            if ch == "(":
                if prev is None:
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "branch opened without a preceding atom")
                if last == "(":
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "branch opened directly inside a branch")
                if pending is not None:
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "bond symbol before branch")
                branches.append((prev, i))
                last = "("
                i += 1
            elif ch == ")":
                if not branches:
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "unmatched closing parenthesis")
                if last == "(":
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "empty branch")
                if pending is not None:
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, i, "bond symbol before ')'")
                prev = branches.pop()[0]
                last = ")"
                i += 1
            elif ch in _BOND_SYMBOLS or ch == "$":
                if ch == "$":
                    self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, i, "quadruple bonds are not supported")
                if prev is None:
                    self.fail(DiagnosticKind.BAD_ELEMENT, i, "bond symbol without a preceding atom")
                if pending is not None:
                    self.fail(DiagnosticKind.BAD_ELEMENT, i, "two consecutive bond symbols")
                pending = (ch, i)
                last = "bond"
                i += 1
            elif ch.isdigit() or ch == "%":
                if prev is None or last in ("(", ")", "start", "."):
                    self.fail(DiagnosticKind.BAD_RING_DIGIT, i, "ring closure must follow an atom")
                start = i
                if ch == "%":
                    digits = text[i + 1:i + 3]
                    if len(digits) != 2 or not digits.isdigit():
                        self.fail(DiagnosticKind.BAD_RING_DIGIT, i, "'%' must be followed by two digits")
                    num = int(digits)
                    i += 3
                else:
                    num = int(ch)
                    i += 1
                symbol = pending[0] if pending else None
                pending = None
                if num in rings:
                    other, open_symbol, _ = rings.pop(num)
                    if other == prev:
                        self.fail(DiagnosticKind.BAD_RING_DIGIT, start, "ring closure to the same atom")
                    if symbol and open_symbol and symbol != open_symbol and not (
                        symbol in "/\\" and open_symbol in "/\\"
                    ):
                        self.fail(DiagnosticKind.BAD_RING_DIGIT, start, "conflicting ring-closure bond symbols")
                    self.add_bond(other, prev, symbol or open_symbol, start)
                else:
                    rings[num] = (prev, symbol, start)
                last = "ring"
            elif ch == ".":
                if prev is None or last in ("(", "start"):
                    self.fail(DiagnosticKind.BAD_ELEMENT, i, "'.' without a preceding atom")
                if pending is not None:
                    self.fail(DiagnosticKind.BAD_ELEMENT, i, "bond symbol before '.'")
                if branches:
                    self.fail(DiagnosticKind.UNBALANCED_PAREN, branches[-1][1], "'.' inside a branch")
                prev = None
                last = "."
                i += 1
            else:
                start = i
                atom, i = self.read_atom(i)
                idx = len(self.atoms)
                self.atoms.append(Atom(**atom, index=idx))
                self.atom_pos.append(start)
                if prev is not None:
                    if pending is not None:
                        self.add_bond(prev, idx, pending[0], pending[1])
                    else:
                        self.add_bond(prev, idx, None, start)
                pending = None
                prev = idx
                last = "atom"
        if pending is not None:
            self.fail(DiagnosticKind.BAD_ELEMENT, pending[1], "bond symbol not followed by an atom")
        if branches:
            self.fail(DiagnosticKind.UNBALANCED_PAREN, branches[-1][1], "unclosed branch")
        if rings:
            _, _, pos = min(rings.values(), key=lambda r: r[2])
            self.fail(DiagnosticKind.UNCLOSED_RING, pos, "ring bond left open")
        if not self.atoms:
            raise ParseDiagnostic(DiagnosticKind.EMPTY_INPUT, 0, "no atoms")
        return self.finish()

    def read_atom(self, i: int) -> tuple[dict, int]:
        text = self.text
        ch = text[i]
        if ch == "[":
            return self.read_bracket(i)
        if ch == "*":
            self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, i, "wildcard atoms are not supported")
        two = text[i:i + 2]
        if two in ("Cl", "Br"):
            return {"atomic_number": ATOMIC_NUMBER[two]}, i + 2
        if ch in ORGANIC_SYMBOLS:
            return {"atomic_number": ATOMIC_NUMBER[ch]}, i + 1
        if ch in AROMATIC_ORGANIC:
            return {"atomic_number": AROMATIC_ORGANIC[ch], "aromatic": True}, i + 1
        self.fail(DiagnosticKind.BAD_ELEMENT, i, f"unexpected character {ch!r}")

    def read_bracket(self, start: int) -> tuple[dict, int]:
        text = self.text
        end = text.find("]", start + 1)
        if end < 0:
            self.fail(DiagnosticKind.BAD_ELEMENT, start, "unterminated bracket atom")
        i = start + 1
        j = i
        while j < end and text[j].isdigit():
            j += 1
        isotope = int(text[i:j]) if j > i else None
        i = j
        if i >= end:
            self.fail(DiagnosticKind.BAD_ELEMENT, start, "bracket atom without element symbol")
        if text[i] == "*":
            self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, i, "wildcard atoms are not supported")
        aromatic = False
        two = text[i:i + 2]
        if text[i].isupper():
            if len(two) == 2 and two[1].islower() and two in ATOMIC_NUMBER:
                symbol, i = two, i + 2
            elif text[i] in ATOMIC_NUMBER:
                symbol, i = text[i], i + 1
            else:
                self.fail(DiagnosticKind.BAD_ELEMENT, i, f"unknown element in {text[start:end + 1]!r}")
            z = ATOMIC_NUMBER[symbol]
        else:
            if two in AROMATIC_BRACKET:
                z, i = AROMATIC_BRACKET[two], i + 2
            elif text[i] in AROMATIC_BRACKET:
                z, i = AROMATIC_BRACKET[text[i]], i + 1
            else:
                self.fail(DiagnosticKind.BAD_ELEMENT, i, f"unknown element in {text[start:end + 1]!r}")
            aromatic = True
        chirality = None
        if i < end and text[i] == "@":
            j = i
            while j < end and text[j] == "@":
                j += 1
            if j - i > 2 or (j < end and text[j].isalpha() and text[j] != "H"):
                self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, i, "only @ and @@ chirality marks are supported")
            chirality = text[i:j]
            self.stereo = True
            i = j
        h = 0
        if i < end and text[i] == "H":
            i += 1
            j = i
            while j < end and text[j].isdigit():
                j += 1
            h = int(text[i:j]) if j > i else 1
            i = j
        charge = 0
        if i < end and text[i] in "+-":
            sign = 1 if text[i] == "+" else -1
            j = i + 1
            if j < end and text[j].isdigit():
                k = j
                while k < end and text[k].isdigit():
                    k += 1
                charge = sign * int(text[j:k])
                j = k
            else:
                charge = sign
                while j < end and text[j] == text[i]:
                    charge += sign
                    j += 1
            if not -4 <= charge <= 4:
                self.fail(DiagnosticKind.BAD_CHARGE, i, f"formal charge {charge} outside [-4, 4]")
            i = j
        atom_class = None
        if i < end and text[i] == ":":
            j = i + 1
            while j < end and text[j].isdigit():
                j += 1
            if j == i + 1:
                self.fail(DiagnosticKind.BAD_ELEMENT, i, "atom class without digits")
            atom_class = int(text[i + 1:j])
            i = j
        if i != end:
            kind = DiagnosticKind.BAD_CHARGE if text[i] in "+-" else DiagnosticKind.BAD_ELEMENT
            self.fail(kind, i, f"unexpected {text[i]!r} in bracket atom")
        return (
            {
                "atomic_number": z,
                "formal_charge": charge,
                "isotope": isotope,
                "aromatic": aromatic,
                "explicit_h": h,
                "chirality": chirality,
                "atom_class": atom_class,
            },
            end + 1,
        )

    def finish(self) -> Molecule:
        atoms = self.atoms
        draft = Molecule(tuple(atoms), tuple(
            Bond(b.a, b.b, BondOrder.SINGLE) for b in self.bonds
        ))
        ring = draft.ring_bonds
        bonds = []
        for bond, kind, pos in zip(self.bonds, self.bond_kind, self.bond_pos):
            both = atoms[bond.a].aromatic and atoms[bond.b].aromatic
            if kind is None and both and bond.key in ring:
                bond = Bond(bond.a, bond.b, BondOrder.AROMATIC)
            elif kind == ":":
                if not both:
                    self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, pos, "aromatic bond between non-aromatic atoms")
                if bond.key not in ring:
                    self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, pos, "aromatic bond outside a ring")
            bonds.append(bond)
        for atom, pos in zip(atoms, self.atom_pos):
            if atom.aromatic and not draft.atom_in_ring[atom.index]:
                self.fail(DiagnosticKind.UNSUPPORTED_FEATURE, pos, "aromatic atom outside a ring")
        if self.stereo:
            warnings.warn(
                "stereo marks are recorded but ignored for graph identity",
                StereoIgnoredWarning,
                stacklevel=3,
            )
        return Molecule(tuple(atoms), tuple(bonds))


def parse_smiles(text: str) -> Molecule:
    """Read a SMILES string into a :class:`Molecule`.

    Raises :class:`ParseDiagnostic` for malformed or unsupported input.
    Leading and trailing whitespace is ignored; anything after internal
    whitespace is treated as a title and dropped.
    """
    if not isinstance(text, str):
        raise TypeError("SMILES must be a str")
    stripped = text.lstrip()
    lead = len(text) - len(stripped)
    stripped = stripped.split(None, 1)[0] if stripped.strip() else ""
    if not stripped:
        raise ParseDiagnostic(DiagnosticKind.EMPTY_INPUT, 0, "empty SMILES")
    reader = _Reader(stripped)
    try:
        return reader.parse()
    except ParseDiagnostic as exc:
        if lead:
            shift = len(text[:lead].encode("utf-8"))
            raise ParseDiagnostic(exc.kind, exc.byte_offset + shift, exc.message) from None
        raise
