"""Finite group presentations: parsing, validation, symmetrization."""

from __future__ import annotations

import string
from dataclasses import dataclass, field, replace

from .words import cyclic_reduce, free_reduce, invert, rotations, shortlex_key


class PresentationError(ValueError):
    """Raised for malformed presentation text or invalid relators."""


#: Built-in presentation texts, keyed by preset name.
PRESETS = {
    "f2": "generators: a b\nrelators:",
    "z2": "generators: a b\nrelators: abAB",
    "surface2": "generators: a b c d\nrelators: abABcdCD",
}


@dataclass(frozen=True)
class Presentation:
    """A finite presentation over single-letter generators.

    ``letters`` interleaves each generator with its inverse (a, A, b, B, ...);
    this is the alphabet order used for shortlex throughout.
    """

    generators: tuple[str, ...]
    relators: tuple[str, ...]
    symmetrized: bool = False
    letters: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "letters", "".join(g + g.upper() for g in self.generators)
        )

    def shortlex(self):
        return shortlex_key(self.letters)


def parse_presentation(text: str) -> Presentation:
    """Parse presentation-file text.

    Format: a ``generators: a b`` line, then a ``relators: abAB ...`` line
    (possibly empty after the colon); ``#`` starts a comment line.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    fields = {}
    for ln in lines:
        key, sep, rest = ln.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("generators", "relators"):
            raise PresentationError(f"unrecognized line: {ln!r}")
        if key in fields:
            raise PresentationError(f"duplicate {key} line")
        fields[key] = rest.split()
    if "generators" not in fields:
        raise PresentationError("missing generators line")
    gens = fields["generators"]
    if not gens:
        raise PresentationError("no generators declared")
    for g in gens:
        if len(g) != 1 or g not in string.ascii_lowercase:
            raise PresentationError(f"generator must be a single letter a-z: {g!r}")
    if len(set(gens)) != len(gens):
        raise PresentationError("duplicate generator symbols")
    alphabet = set("".join(gens) + "".join(gens).upper())
    relators = []
    for r in fields.get("relators", []):
        bad = set(r) - alphabet
        if bad:
            raise PresentationError(
                f"unknown symbol {sorted(bad)[0]!r} in relator {r!r}"
            )
        reduced = free_reduce(r)
        if not reduced:
            raise PresentationError(f"relator {r!r} freely reduces to empty")
        relators.append(reduced)
    return Presentation(tuple(gens), tuple(relators))


def preset(name: str) -> Presentation:
    try:
        text = PRESETS[name]
    except KeyError:
        raise PresentationError(
            f"unknown preset {name!r}; choose from {sorted(PRESETS)}"
        ) from None
    return parse_presentation(text)


def symmetrize(p: Presentation) -> Presentation:
    """Close the relator set under inversion and cyclic permutation.

    Relators are cyclically reduced first; the result is deduplicated and
    shortlex-sorted for reproducibility.
    """
    out = set()
    for r in p.relators:
        r = cyclic_reduce(free_reduce(r))
        for w in (r, invert(r)):
            out.update(rotations(w))
    out.discard("")
    relators = tuple(sorted(out, key=p.shortlex()))
    return replace(p, relators=relators, symmetrized=True)


def validate_word(p: Presentation, w: str) -> str:
    """Check that ``w`` uses only declared letters; returns ``w``."""
    bad = set(w) - set(p.letters)
    if bad:
        raise PresentationError(f"unknown symbol {sorted(bad)[0]!r} in word {w!r}")
    return w
