"""Integral group ring of a right-angled Artin group.

Group elements are stored in a canonical normal form, so equality of words
is equality of tuples. A word is first freely reduced modulo commutations,
then rewritten to the lexicographically least word among all words obtained
by swapping adjacent commuting letters.

Letters are ordered by (vertex position, sign) with the positive letter
first, e.g. ``a < a^-1 < b`` when ``a`` is declared before ``b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import SimplicialGraph

# A normal-form word: tuple of (vertex, nonzero exponent) blocks.
RaagWord = tuple[tuple[str, int], ...]

IDENTITY: RaagWord = ()


class AmbientMismatch(ValueError):
    pass


def _expand(graph: SimplicialGraph, word: Iterable[tuple[str, int]]) -> list[tuple[int, int]]:
    index = graph.index
    letters = []
    for v, e in word:
        i = index.get(v)
        if i is None:
            raise ValueError(f"unknown vertex {v!r}")
        step = 1 if e > 0 else -1
        letters.extend([(i, step)] * abs(e))
    return letters


def _free_reduce(letters: list[tuple[int, int]], nbrs) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for x in letters:
        xv = x[0]
        near = nbrs[xv]
        # look back through letters commuting with x for a cancelling partner
        for pos in range(len(out) - 1, -1, -1):
            y = out[pos]
            if y[0] == xv:
                if y[1] == -x[1]:
                    del out[pos]
                else:
                    out.append(x)
                break
            if y[0] not in near:
                out.append(x)
                break
        else:
            out.append(x)
    return out


def _lex_least(letters: list[tuple[int, int]], nbrs) -> list[tuple[int, int]]:
    # greedy: repeatedly take the least letter that can be shuffled to the front
    rest = list(letters)
    out = []
    while rest:
        best_key = best_pos = None
        blockers: set[int] = set()
        for pos, (v, sign) in enumerate(rest):
            if blockers <= nbrs[v]:
                key = (v, sign < 0)
                if best_key is None or key < best_key:
                    best_key, best_pos = key, pos
            blockers.add(v)
        out.append(rest.pop(best_pos))
    return out


def _blocks(graph: SimplicialGraph, letters: list[tuple[int, int]]) -> RaagWord:
    blocks: list[list] = []
    for i, s in letters:
        if blocks and blocks[-1][0] == i:
            blocks[-1][1] += s
        else:
            blocks.append([i, s])
    return tuple((graph.vertices[i], e) for i, e in blocks if e)


def normalize(word: Iterable[tuple[str, int]], graph: SimplicialGraph) -> RaagWord:
    """Canonical normal form of a word given as (vertex, exponent) pairs.

    >>> from raag.graphs import complete_graph, SimplicialGraph
    >>> normalize([("v1", 1), ("v0", 1)], complete_graph(2))
    (('v0', 1), ('v1', 1))
    >>> normalize([("b", 1), ("a", 1)], SimplicialGraph(("a", "b")))
    (('b', 1), ('a', 1))
    """
    nbrs = graph.neighbour_indices
    letters = _free_reduce(_expand(graph, word), nbrs)
    return _blocks(graph, _lex_least(letters, nbrs))


def word_letters(graph: SimplicialGraph, w: RaagWord) -> list[tuple[int, int]]:
    return _expand(graph, w)


def word_inverse(w: RaagWord) -> tuple[tuple[str, int], ...]:
    return tuple((v, -e) for v, e in reversed(w))


def word_length(w: RaagWord) -> int:
    return sum(abs(e) for _, e in w)


def shortlex_key(graph: SimplicialGraph, w: RaagWord) -> tuple:
    letters = _expand(graph, w)
    return (len(letters), [(i, s < 0) for i, s in letters])


def render_word(w: RaagWord) -> str:
    if not w:
        return "1"
    return "·".join(v if e == 1 else f"{v}^{e}" for v, e in w)


class GroupRing:
    """Z[pi] for the right-angled Artin group on ``graph``.

    Normal forms are memoised per ring, so build one ring per graph and share it.
    """

    def __init__(self, graph: SimplicialGraph):
        self.graph = graph
        self._cache: dict[tuple, RaagWord] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRing) and (self is other or self.graph == other.graph)

    def __hash__(self) -> int:
        return hash(self.graph)

    def __repr__(self) -> str:
        return f"GroupRing({self.graph!r})"

    def normalize(self, word: Iterable[tuple[str, int]]) -> RaagWord:
        key = tuple(word)
        nf = self._cache.get(key)
        if nf is None:
            nf = self._cache[key] = normalize(key, self.graph)
        return nf

    def element(self, terms: dict | Iterable = ()) -> GroupRingElement:
        """Element from {word: coeff} or an iterable of (coeff, word) pairs."""
        items = terms.items() if isinstance(terms, dict) else ((w, c) for c, w in terms)
        acc: dict[RaagWord, int] = {}
        for w, c in items:
            nf = self.normalize(w)
            acc[nf] = acc.get(nf, 0) + c
        return GroupRingElement(self, {w: c for w, c in acc.items() if c})

    @property
    def zero(self) -> GroupRingElement:
        return GroupRingElement(self, {})

    @property
    def one(self) -> GroupRingElement:
        return GroupRingElement(self, {IDENTITY: 1})

    def scalar(self, n: int) -> GroupRingElement:
        return GroupRingElement(self, {IDENTITY: n} if n else {})

    def gen(self, v: str, exponent: int = 1) -> GroupRingElement:
        return self.element({((v, exponent),): 1})

    def word(self, *letters: tuple[str, int]) -> GroupRingElement:
        return self.element({tuple(letters): 1})

    def parse(self, text: str) -> GroupRingElement:
        return parse_element(self, text)


class GroupRingElement:
    """Finitely supported integer combination of normal-form words."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GroupRing, terms: dict[RaagWord, int]):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> GroupRingElement:
        if isinstance(other, int):
            return self.ring.scalar(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            raise AmbientMismatch("group ring elements over different graphs")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for w, c in other.terms.items():
            s = acc.get(w, 0) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return GroupRingElement(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[RaagWord, int] = {}
        norm = self.ring.normalize
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = norm(w1 + w2) if w1 and w2 else (w1 or w2)
                acc[w] = acc.get(w, 0) + c1 * c2
        return GroupRingElement(self.ring, {w: c for w, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.ring.scalar(other) * self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def involute(self) -> GroupRingElement:
        norm = self.ring.normalize
        return GroupRingElement(self.ring, {norm(word_inverse(w)): c for w, c in self.terms.items()})

    def epsilon1(self) -> int:
        return self.terms.get(IDENTITY, 0)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[RaagWord, int]]:
        g = self.ring.graph
        return sorted(self.terms.items(), key=lambda t: shortlex_key(g, t[0]))

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"<{render_element(self)}>"


def multiply(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


def involute(x: GroupRingElement) -> GroupRingElement:
    return x.involute()


def epsilon1(x: GroupRingElement) -> int:
    """Coefficient of the identity element."""
    return x.epsilon1()


def augmentation(x: GroupRingElement) -> int:
    return x.augmentation()


# ---------------------------------------------------------------------------
# text form: "1 + 3·a·b^-2 - c"


def render_element(x: GroupRingElement) -> str:
    out = []
    for w, c in x.sorted_terms():
        mag = abs(c)
        if not w:
            body = str(mag)
        elif mag == 1 and not w[0][0].isdigit():
            body = render_word(w)
        else:
            body = f"{mag}·{render_word(w)}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(out) if out else "0"


_INT = re.compile(r"\d+\Z")
_FACTOR = re.compile(r"([A-Za-z0-9_]+)(?:\^(-?\d+))?\Z")


def parse_element(ring: GroupRing, text: str) -> GroupRingElement:
    s = text.strip()
    if not s:
        raise ValueError("empty group ring element")
    # split into signed terms; '^-2' exponents are protected by the '^' lookbehind
    pieces = re.split(r"(?<!\^)([+-])", s)
    terms = []
    if pieces[0].strip() == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    for op, body in zip(pieces[0::2], pieces[1::2]):
        body = body.strip()
        if op not in "+-" or not body:
            raise ValueError(f"cannot parse group ring element {text!r}")
        sign = 1 if op == "+" else -1
        factors = [f.strip() for f in re.split(r"[·*]", body)]
        coeff = 1
        if _INT.match(factors[0]):
            coeff = int(factors.pop(0))
        word = []
        for f in factors:
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"bad factor {f!r} in {text!r}")
            word.append((m.group(1), int(m.group(2) or 1)))
        terms.append((sign * coeff, tuple(word)))
    return ring.element(terms)


# ---------------------------------------------------------------------------
# matrices over the group ring


@dataclass(frozen=True)
class LambdaMatrix:
    """Rectangular matrix of group ring elements over one ambient ring."""

    ring: GroupRing
    rows: tuple[tuple[GroupRingElement, ...], ...]
    ncols: int
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    @classmethod
    def build(cls, ring: GroupRing, rows: Sequence[Sequence], ncols: int | None = None, row_labels=None, col_labels=None) -> LambdaMatrix:
        def conv(x):
            if isinstance(x, int):
                return ring.scalar(x)
            if x.ring != ring:
                raise AmbientMismatch("matrix entry over a different graph")
            return x

        data = tuple(tuple(conv(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return cls(ring, data, ncols,
                   tuple(row_labels) if row_labels is not None else None,
                   tuple(col_labels) if col_labels is not None else None)

    @classmethod
    def zeros(cls, ring: GroupRing, nrows: int, ncols: int) -> LambdaMatrix:
        return cls.build(ring, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring: GroupRing, n: int) -> LambdaMatrix:
        return cls.build(ring, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def blocks(cls, ring: GroupRing, grid: Sequence[Sequence[LambdaMatrix]]) -> LambdaMatrix:
        rows = []
        for band in grid:
            for i in range(band[0].nrows):
                rows.append([x for blk in band for x in blk.rows[i]])
        ncols = sum(b.ncols for b in grid[0]) if grid else 0
        return cls.build(ring, rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> GroupRingElement:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[GroupRingElement]:
        return [r[j] for r in self.rows]

    def _check(self, other: LambdaMatrix):
        if other.ring != self.ring:
            raise AmbientMismatch("matrices over different graphs")

    def __matmul__(self, other: LambdaMatrix) -> LambdaMatrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k, x in enumerate(r):
                    if x.terms:
                        y = other.rows[k][j]
                        if y.terms:
                            acc = acc + x * y
                row.append(acc)
            out.append(row)
        return LambdaMatrix.build(self.ring, out, other.ncols, self.row_labels, other.col_labels)

    def __add__(self, other: LambdaMatrix) -> LambdaMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return LambdaMatrix.build(self.ring, rows, self.ncols, self.row_labels, self.col_labels)

    def __neg__(self) -> LambdaMatrix:
        return self.map(lambda x: -x)

    def __sub__(self, other: LambdaMatrix) -> LambdaMatrix:
        return self + (-other)

    def map(self, f) -> LambdaMatrix:
        return LambdaMatrix.build(self.ring, [[f(x) for x in r] for r in self.rows], self.ncols,
                                  self.row_labels, self.col_labels)

    def transpose(self) -> LambdaMatrix:
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return LambdaMatrix.build(self.ring, rows, self.nrows, self.col_labels, self.row_labels)

    def conjugate_transpose(self) -> LambdaMatrix:
        return self.transpose().map(GroupRingElement.involute)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def render(self) -> str:
        """One row per line, entries separated by `` | ``."""
        return "\n".join(" | ".join(render_element(x) for x in r) for r in self.rows)

    def to_json(self) -> list[list[str]]:
        return [[render_element(x) for x in r] for r in self.rows]


def parse_matrix(ring: GroupRing, text: str) -> LambdaMatrix:
    rows = [ln for ln in (l.strip() for l in text.splitlines()) if ln and not ln.startswith("#")]
    return LambdaMatrix.build(ring, [[parse_element(ring, e) for e in r.split("|")] for r in rows])
