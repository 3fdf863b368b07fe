"""Pluggable word-problem strategies.

Three strategies cover the certifiable presentation classes:

* ``FreeReduction`` — free groups; always certified.
* ``RewritingSystem`` — shortlex Knuth–Bendix completion; certified iff
  completion converged within its rule-count cap.
* ``DehnGreedy`` — greedy Dehn reduction; certified iff the presentation
  satisfies the C'(1/6) small-cancellation condition.

Shortlex uses the presentation's letter order: each generator immediately
followed by its inverse (a < A < b < B < ...).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .presentation import Presentation, symmetrize
from .words import free_reduce, invert, shortlex_key


class StrategyError(ValueError):
    """Raised when a strategy cannot honor a request exactly."""


class Strategy:
    """Base class; concrete strategies set ``kind`` and ``certified``."""

    kind: str
    certified: bool

    def normal_form(self, w: str) -> str:
        raise NotImplementedError

    def canonical_label(self, w: str) -> str:
        """A label equal to ``w`` in the group, identical for equal elements.

        For certified strategies this is a true canonical form usable for
        deduplication; uncertified strategies give best-effort labels.
        """
        return self.normal_form(w)

    def extend_label(self, label: str, letter: str) -> str:
        """canonical_label(label + letter), exploiting that ``label`` is
        already canonical where the strategy allows."""
        return self.canonical_label(label + letter)

    def equal(self, u: str, v: str) -> bool:
        if not self.certified:
            raise StrategyError(
                f"{self.kind} strategy is uncertified; refusing equality query"
            )
        return self.canonical_label(u) == self.canonical_label(v)


class FreeReduction(Strategy):
    kind = "FreeReduction"
    certified = True

    def normal_form(self, w: str) -> str:
        return free_reduce(w)

    def extend_label(self, label: str, letter: str) -> str:
        if label and label[-1] == letter.swapcase():
            return label[:-1]
        return label + letter


class RewritingSystem(Strategy):
    kind = "RewritingSystem"

    def __init__(self, rules, cap: int, certified: bool, letters: str):
        self.rules = tuple(rules)
        self.cap = cap
        self.certified = certified
        self.letters = letters

    def normal_form(self, w: str) -> str:
        rules = self.rules
        while True:
            best = None
            for lhs, rhs in rules:
                j = w.find(lhs)
                if j >= 0 and (best is None or j < best[0]):
                    best = (j, lhs, rhs)
            if best is None:
                return w
            j, lhs, rhs = best
            w = w[:j] + rhs + w[j + len(lhs):]


class DehnGreedy(Strategy):
    """Greedy Dehn reduction plus half-relator orbit canonicalization."""

    kind = "DehnGreedy"

    def __init__(self, p: Presentation):
        if not p.symmetrized:
            p = symmetrize(p)
        self.ratio = small_cancellation_ratio(p)
        self.certified = self.ratio < Fraction(1, 6)
        self._key = p.shortlex()
        self.maxlen = max((len(r) for r in p.relators), default=0)
        # long_map: >half relator prefix -> shortlex-least replacement
        # half_map: exact-half prefix -> all length-preserving replacements
        long_map: dict[str, str] = {}
        half_map: dict[str, tuple] = {}
        halves: dict[str, set] = {}
        for r in p.relators:
            n = len(r)
            for k in range(n // 2 + 1, n + 1):
                u, rep = r[:k], invert(r[k:])
                cur = long_map.get(u)
                if cur is None or self._key(rep) < self._key(cur):
                    long_map[u] = rep
            if n % 2 == 0:
                k = n // 2
                u, rep = r[:k], invert(r[k:])
                if rep != u:
                    halves.setdefault(u, set()).add(rep)
        self.long_map = long_map
        self.half_map = {u: tuple(sorted(v)) for u, v in halves.items()}

    def _reduce(self, w: str) -> str:
        """Leftmost (longest at a tie position) >half replacement to a
        fixed point; input must be freely reduced."""
        long_map, maxlen = self.long_map, self.maxlen
        changed = True
        while changed:
            changed = False
            n = len(w)
            for i in range(n):
                hi = min(n, i + maxlen)
                for j in range(hi, i + maxlen // 2, -1):
                    rep = long_map.get(w[i:j])
                    if rep is not None:
                        w = free_reduce(w[:i] + rep + w[j:])
                        changed = True
                        break
                if changed:
                    break
        return w

    def normal_form(self, w: str) -> str:
        if not self.certified:
            raise StrategyError(
                "DehnGreedy requires a C'(1/6) presentation "
                f"(small-cancellation ratio {self.ratio} >= 1/6)"
            )
        return self._reduce(free_reduce(w))

    def equal(self, u: str, v: str) -> bool:
        if not self.certified:
            raise StrategyError(
                f"{self.kind} strategy is uncertified; refusing equality query"
            )
        return self.normal_form(free_reduce(u + invert(v))) == ""

    def canonical_label(self, w: str) -> str:
        """Shortlex-least word in the orbit of the Dehn-reduced word under
        exact-half relator swaps; canonical on C'(1/6) group elements."""
        if not self.half_map:
            return self.normal_form(w)
        w = self.normal_form(w)
        h = self.maxlen // 2
        half_map = self.half_map
        while True:
            seen = {w}
            queue = deque([w])
            shorter = None
            while queue and shorter is None:
                x = queue.popleft()
                n = len(x)
                for i in range(n - h + 1):
                    for rep in half_map.get(x[i:i + h], ()):
                        y = free_reduce(x[:i] + rep + x[i + h:])
                        if len(y) == n:
                            y = self._reduce(y)
                        if len(y) < n:
                            shorter = y
                            break
                        if y not in seen:
                            seen.add(y)
                            queue.append(y)
                    if shorter is not None:
                        break
            if shorter is None:
                return min(seen, key=self._key)
            w = self._reduce(shorter)


def small_cancellation_ratio(p: Presentation) -> Fraction:
    """max |piece| / |shorter relator| over maximal common prefixes of
    distinct symmetrized relators; 0 with fewer than two relators."""
    if not p.symmetrized:
        raise StrategyError("small_cancellation_ratio needs a symmetrized presentation")
    rels = sorted(p.relators, key=p.shortlex())
    best = Fraction(0)
    for a in range(len(rels)):
        for b in range(a + 1, len(rels)):
            r1, r2 = rels[a], rels[b]
            k = 0
            m = min(len(r1), len(r2))
            while k < m and r1[k] == r2[k]:
                k += 1
            if k:
                best = max(best, Fraction(k, m))
    return best


def complete_rewriting(p: Presentation, cap: int = 256) -> RewritingSystem:
    """Shortlex Knuth–Bendix completion of the relator-derived rules.

    Returns a certified system iff all critical pairs resolved before the
    live rule count exceeded ``cap``; otherwise the partial system is
    returned uncertified.
    """
    if not p.symmetrized:
        raise StrategyError("complete_rewriting needs a symmetrized presentation")
    key = shortlex_key(p.letters)
    rules: dict[int, tuple[str, str]] = {}
    agenda: deque[tuple[int, int]] = deque()
    next_id = 0
    over_cap = False

    def reduce_word(w: str) -> str:
        while True:
            best = None
            for lhs, rhs in rules.values():
                j = w.find(lhs)
                if j >= 0 and (best is None or j < best[0]
                               or (j == best[0] and key(lhs) < key(best[1]))):
                    best = (j, lhs, rhs)
            if best is None:
                return w
            j, lhs, rhs = best
            w = w[:j] + rhs + w[j + len(lhs):]

    def add(u: str, v: str):
        nonlocal next_id, over_cap
        stack = [(u, v)]
        while stack:
            u, v = stack.pop()
            u, v = reduce_word(u), reduce_word(v)
            if u == v:
                continue
            lhs, rhs = (u, v) if key(u) > key(v) else (v, u)
            # retire rules whose sides the new rule rewrites
            for rid in [r for r, (l, rr) in rules.items() if lhs in l or lhs in rr]:
                stack.append(rules.pop(rid))
            nid = next_id
            next_id += 1
            rules[nid] = (lhs, rhs)
            if len(rules) > cap:
                over_cap = True
                return
            for rid in list(rules):
                agenda.append((nid, rid))
                if rid != nid:
                    agenda.append((rid, nid))

    for x in p.letters:
        add(x + x.swapcase(), "")
    for r in sorted(p.relators, key=key):
        add(r, "")
    while agenda and not over_cap:
        i, j = agenda.popleft()
        if i not in rules or j not in rules:
            continue
        l1, r1 = rules[i]
        l2, r2 = rules[j]
        top = min(len(l1), len(l2)) + (1 if l1 != l2 else 0)
        for k in range(1, top):
            if k <= len(l1) and k <= len(l2) and l1.endswith(l2[:k]):
                add(r1 + l2[k:], l1[:-k] + r2)
                if over_cap:
                    break
    certified = not over_cap and not agenda
    ordered = sorted(rules.values(), key=lambda lr: (key(lr[0]), key(lr[1])))
    return RewritingSystem(ordered, cap, certified, p.letters)


def auto_strategy(p: Presentation, cap: int = 256) -> Strategy:
    """Deterministic strategy selection for a symmetrized presentation."""
    if not p.relators:
        return FreeReduction()
    dehn = DehnGreedy(p)
    if dehn.certified:
        return dehn
    return complete_rewriting(p, cap)


def normal_form(p: Presentation, s: Strategy, w: str) -> str:
    return s.normal_form(w)


def words_equal(p: Presentation, s: Strategy, u: str, v: str) -> bool:
    return s.equal(u, v)
