"""Free-group word algebra on plain strings.

A word is a ``str`` where a lowercase letter is a generator and the same
letter uppercase is its inverse.  The empty string is the identity.
"""

from __future__ import annotations


def invert(w: str) -> str:
    """Inverse word: reverse the letters and flip each sign."""
    return w[::-1].swapcase()


def free_reduce(w: str) -> str:
    """The unique freely reduced word equal to ``w`` in the free group."""
    out: list[str] = []
    for c in w:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def is_reduced(w: str) -> bool:
    return all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def cyclic_reduce(w: str) -> str:
    """Freely reduce, then strip mutually inverse first/last letters.

    The result is the unique cyclically reduced word conjugate to ``w``.
    """
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1].swapcase():
        i += 1
        j -= 1
    return w[i:j]


def rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))] if w else [""]


def shortlex_key(order: str):
    """Key function for shortlex comparison with the given letter order."""
    pos = {c: i for i, c in enumerate(order)}

    def key(w: str) -> tuple[int, tuple[int, ...]]:
        return (len(w), tuple(pos[c] for c in w))

    return key
