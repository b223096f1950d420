"""Bounded noncommutative Groebner completion in path algebras.

Words are paths in a quiver whose arrows are called *symbols*. A nonempty
word is a tuple of symbol indices ``(s1, ..., sk)`` standing for the product
``s1 * s2 * ... * sk``; the rightmost symbol is traversed first, so the word
is composable when ``src(s_i) == tgt(s_{i+1})``. The trivial path at vertex
``v`` is encoded as ``(-(v + 1),)``.

Words are ordered degree-lexicographically by symbol *rank* (the position
of the symbol in the quiver's symbol list). Completion only processes
overlaps whose combined word has length at most the bound; anything longer
is recorded as skipped, and a system with live skipped overlaps is never
reported as stabilised.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from .field import Field

Word = tuple
Poly = dict


@dataclass(frozen=True)
class Symbol:
    name: str
    source: int
    target: int


@dataclass
class PathQuiver:
    """Vertex count plus an ordered list of symbols (arrows)."""

    n: int
    symbols: list[Symbol]

    def __post_init__(self):
        self.index = {s.name: i for i, s in enumerate(self.symbols)}
        if len(self.index) != len(self.symbols):
            raise ValueError("symbol names must be unique")
        for s in self.symbols:
            if not (0 <= s.source < self.n and 0 <= s.target < self.n):
                raise ValueError(f"symbol {s.name} has an endpoint out of range")

    # word helpers -------------------------------------------------------
    @staticmethod
    def idem(v: int) -> Word:
        return (-(v + 1),)

    @staticmethod
    def length(w: Word) -> int:
        return 0 if w[0] < 0 else len(w)

    def src(self, w: Word) -> int:
        return -w[0] - 1 if w[0] < 0 else self.symbols[w[-1]].source

    def tgt(self, w: Word) -> int:
        return -w[0] - 1 if w[0] < 0 else self.symbols[w[0]].target

    def vertices_on(self, w: Word) -> set[int]:
        if w[0] < 0:
            return {-w[0] - 1}
        out = {self.symbols[w[0]].target}
        out.update(self.symbols[s].source for s in w)
        return out

    def concat(self, u: Word, v: Word) -> Word | None:
        """The product ``u * v`` (``v`` first) or ``None`` if not composable."""
        if self.src(u) != self.tgt(v):
            return None
        if u[0] < 0:
            return v
        if v[0] < 0:
            return u
        return u + v

    def key(self, w: Word):
        if w[0] < 0:
            return (0, (w[0],))
        return (len(w), w)

    def name(self, w: Word) -> str:
        if w[0] < 0:
            return f"e{-w[0]}"
        return ".".join(self.symbols[s].name for s in w)

    def word(self, names) -> Word:
        """Word from a sequence of symbol names, leftmost factor first."""
        names = list(names)
        if not names:
            raise ValueError("use PathQuiver.idem for trivial paths")
        w = tuple(self.index[n] for n in names)
        for a, b in zip(w, w[1:]):
            if self.symbols[a].source != self.symbols[b].target:
                raise ValueError(f"word {'.'.join(names)} is not a path")
        return w


def _clean(poly: Poly) -> Poly:
    return {w: c for w, c in poly.items() if c != 0}


class PolyRing:
    """Arithmetic on polynomials (dicts word -> coefficient) in a path algebra."""

    def __init__(self, quiver: PathQuiver, field: Field):
        self.q = quiver
        self.field = field

    def _add_into(self, acc: Poly, w: Word, c) -> None:
        v = acc.get(w, 0) + c
        if self.field.p is not None:
            v %= self.field.p
        if v == 0:
            acc.pop(w, None)
        else:
            acc[w] = v

    def add(self, f: Poly, g: Poly, c=1) -> Poly:
        out = dict(f)
        for w, a in g.items():
            self._add_into(out, w, a * c)
        return out

    def mul_words(self, u: Word, f: Poly, t: Word) -> Poly:
        out: Poly = {}
        for w, c in f.items():
            x = self.q.concat(u, w)
            if x is None:
                continue
            x = self.q.concat(x, t)
            if x is None:
                continue
            self._add_into(out, x, c)
        return out

    def mul(self, f: Poly, g: Poly) -> Poly:
        out: Poly = {}
        for u, a in f.items():
            for v, b in g.items():
                w = self.q.concat(u, v)
                if w is not None:
                    self._add_into(out, w, a * b)
        return out

    def lead(self, f: Poly) -> Word:
        return max(f, key=self.q.key)

    def monic(self, f: Poly) -> Poly:
        c = self.field.inv(f[self.lead(f)])
        return _clean({w: self.field.scalar(a * c) for w, a in f.items()})

    def uniform_parts(self, f: Poly) -> list[Poly]:
        """Split ``f`` into its ``e_t f e_s`` components."""
        parts: dict[tuple[int, int], Poly] = {}
        for w, c in f.items():
            parts.setdefault((self.q.src(w), self.q.tgt(w)), {})[w] = c
        return [parts[k] for k in sorted(parts)]


@dataclass
class CompletionState:
    quiver: PathQuiver
    field: Field
    bound: int
    basis: dict = dc_field(default_factory=dict)  # lead word -> monic poly
    killed: set = dc_field(default_factory=set)
    skipped: list = dc_field(default_factory=list)  # (lead1, lead2, overlap length)

    @property
    def bound_exceeded(self) -> bool:
        return any(a in self.basis and b in self.basis for a, b, _ in self.skipped)


class Rewriter:
    """Runs bounded completion and reduces polynomials to normal form."""

    def __init__(self, quiver: PathQuiver, field: Field, relations: list[Poly], bound: int):
        self.q = quiver
        self.field = field
        self.ring = PolyRing(quiver, field)
        self.state = CompletionState(quiver, field, bound)
        self._by_len: dict[int, set] = {}
        self._complete(relations)

    # ------------------------------------------------------------------
    def _index_add(self, lead: Word) -> None:
        self._by_len.setdefault(len(lead), set()).add(lead)

    def _index_remove(self, lead: Word) -> None:
        self._by_len[len(lead)].discard(lead)

    def _find_divisor(self, w: Word):
        """A lead word occurring in ``w`` as (position, lead), or None."""
        if w[0] < 0:
            return None
        n = len(w)
        for length, leads in self._by_len.items():
            if not leads or length > n:
                continue
            for i in range(n - length + 1):
                sub = w[i:i + length]
                if sub in leads:
                    return i, sub
        return None

    def _dead(self, w: Word) -> bool:
        return bool(self.state.killed) and not self.state.killed.isdisjoint(self.q.vertices_on(w))

    def reduce(self, f: Poly) -> Poly:
        f = {w: c for w, c in f.items() if c != 0 and not self._dead(w)}
        done: Poly = {}
        ring = self.ring
        while f:
            w = max(f, key=self.q.key)
            c = f.pop(w)
            hit = self._find_divisor(w)
            if hit is None:
                done[w] = c
                continue
            i, lead = hit
            g = self.state.basis[lead]
            u = w[:i] if i else self.q.idem(self.q.tgt(w))
            t = w[i + len(lead):] or self.q.idem(self.q.src(w))
            # subtract c * u * g * t; the lead term cancels with w
            for x, a in ring.mul_words(u, g, t).items():
                if x == w:
                    continue
                if self._dead(x):
                    continue
                ring._add_into(f, x, -c * a)
        return done

    # ------------------------------------------------------------------
    def _kill(self, v: int, pending: deque) -> None:
        self.state.killed.add(v)
        for lead, g in list(self.state.basis.items()):
            del self.state.basis[lead]
            self._index_remove(lead)
            pending.append(g)

    def _complete(self, relations: list[Poly]) -> None:
        ring = self.ring
        bound = self.state.bound
        pending: deque = deque()
        for r in relations:
            pending.extend(ring.uniform_parts(_clean(r)))
        while pending:
            f = self.reduce(pending.popleft())
            if not f:
                continue
            f = ring.monic(f)
            lead = ring.lead(f)
            if lead[0] < 0:
                self._kill(-lead[0] - 1, pending)
                continue
            if len(lead) > bound:
                self.state.skipped.append((lead, lead, len(lead)))
                continue
            for other in list(self.state.basis):
                if self._contains(other, lead):
                    pending.append(self.state.basis.pop(other))
                    self._index_remove(other)
            self.state.basis[lead] = f
            self._index_add(lead)
            for other, g in list(self.state.basis.items()):
                for s in self._overlaps(lead, f, other, g):
                    pending.append(s)
                if other != lead:
                    for s in self._overlaps(other, g, lead, f):
                        pending.append(s)

    @staticmethod
    def _contains(big: Word, small: Word) -> bool:
        n, m = len(big), len(small)
        return any(big[i:i + m] == small for i in range(n - m + 1))

    def _overlaps(self, l1: Word, f1: Poly, l2: Word, f2: Poly):
        """S-polynomials for suffixes of ``l1`` equal to prefixes of ``l2``."""
        m, r = len(l1), len(l2)
        for k in range(1, min(m, r)):
            if l1[m - k:] != l2[:k]:
                continue
            total = m + r - k
            if total > self.state.bound:
                self.state.skipped.append((l1, l2, total))
                continue
            t = l2[k:]
            u = l1[:m - k]
            s = self.ring.add(self.ring.mul_words(self.q.idem(self.q.tgt(l1)), f1, t),
                              self.ring.mul_words(u, f2, self.q.idem(self.q.src(l2))), -1)
            yield s

    # ------------------------------------------------------------------
    def normal_words(self, max_length: int) -> list[list[Word]]:
        """Normal words grouped by length ``0..max_length``."""
        layers: list[list[Word]] = []
        layer = [self.q.idem(v) for v in range(self.q.n) if v not in self.state.killed]
        layers.append(layer)
        for _ in range(max_length):
            nxt = []
            for w in layer:
                for si, s in enumerate(self.q.symbols):
                    if s.source != self.q.tgt(w) or s.target in self.state.killed:
                        continue
                    x = (si,) if w[0] < 0 else (si,) + w
                    if not self._prefix_reducible(x):
                        nxt.append(x)
            nxt.sort(key=self.q.key)
            layers.append(nxt)
            layer = nxt
        return layers

    def _prefix_reducible(self, w: Word) -> bool:
        for length, leads in self._by_len.items():
            if leads and length <= len(w) and w[:length] in leads:
                return True
        return False
