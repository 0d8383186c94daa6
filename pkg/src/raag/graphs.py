"""Simplicial graphs, their cliques and flag complexes.

A graph's vertex declaration order is the canonical total order: simplices
list their vertices in that order, boundary signs and group-ring normal forms
are derived from it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Simplex = tuple[str, ...]

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphError(ValueError):
    """Invalid graph input. ``lineno`` is set when the error comes from a file."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        known = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError("self-loop")
            if not e <= known:
                raise GraphError(f"edge {sorted(e)} references an unknown vertex")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> SimplicialGraph:
        vertices = tuple(vertices)
        checked = []
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            checked.append(frozenset((u, v)))
        return cls(vertices, frozenset(checked))

    # cached_property needs an instance __dict__, which a frozen dataclass still has
    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def neighbour_indices(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.index[u] for u in self.adjacency[v]) for v in self.vertices)

    def adjacent(self, u: str, v: str) -> bool:
        return v in self.adjacency[u]

    def sorted_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self.index.__getitem__))

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted in canonical order."""
        pairs = [self.sorted_vertices(e) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index[p[0]], self.index[p[1]]))

    def induced(self, vs: Iterable[str]) -> SimplicialGraph:
        keep = set(vs)
        verts = tuple(v for v in self.vertices if v in keep)
        return SimplicialGraph(verts, frozenset(e for e in self.edges if e <= keep))

    def relabel(self, mapping: dict[str, str]) -> SimplicialGraph:
        return SimplicialGraph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[v] for v in e) for e in self.edges),
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"SimplicialGraph(vertices={list(self.vertices)}, edges={self.edge_list()})"


# ---------------------------------------------------------------------------
# text format and builtin generators


def format_graph(g: SimplicialGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_graph(text: str) -> SimplicialGraph:
    """Parse the line-oriented graph format, or a single builtin generator spec.

    >>> parse_graph("vertex a\\nvertex b\\nedge a b").edge_list()
    [('a', 'b')]
    >>> len(parse_graph("complete:3").edges)
    3
    """
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(body) == 1 and not body[0].startswith(("vertex ", "edge ")) and ":" in body[0]:
        return builtin_graph(body[0])

    vertices: list[str] = []
    seen: set[str] = set()
    edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            name = parts[1]
            if not _NAME.match(name):
                raise GraphError(f"invalid vertex name {name!r}", lineno)
            if name in seen:
                raise GraphError(f"duplicate vertex {name!r}", lineno)
            seen.add(name)
            vertices.append(name)
        elif parts[0] == "edge" and len(parts) == 3:
            u, v = parts[1], parts[2]
            for x in (u, v):
                if x not in seen:
                    raise GraphError(f"edge references unknown vertex {x!r}", lineno)
            if u == v:
                raise GraphError(f"self-loop at {u!r}", lineno)
            e = frozenset((u, v))
            if e in edges:
                raise GraphError(f"duplicate edge {u} {v}", lineno)
            edges.add(e)
        else:
            raise GraphError(f"cannot parse {line!r}", lineno)
    return SimplicialGraph(tuple(vertices), frozenset(edges))


def _numbered(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def complete_graph(n: int) -> SimplicialGraph:
    vs = _numbered(n)
    return SimplicialGraph.from_edges(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> SimplicialGraph:
    vs = _numbered(n)
    return SimplicialGraph.from_edges(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def cycle_graph(n: int) -> SimplicialGraph:
    if n < 3:
        raise GraphError("cycle:n needs n >= 3")
    vs = _numbered(n)
    return SimplicialGraph.from_edges(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def disjoint_edges(n: int) -> SimplicialGraph:
    vs = _numbered(2 * n)
    return SimplicialGraph.from_edges(vs, [(vs[2 * i], vs[2 * i + 1]) for i in range(n)])


def _combine(g: SimplicialGraph, h: SimplicialGraph, join: bool) -> SimplicialGraph:
    # vertices renumbered v0.. in order: all of g, then all of h
    vs = _numbered(len(g) + len(h))
    left = dict(zip(g.vertices, vs))
    right = dict(zip(h.vertices, vs[len(g):]))
    edges = [(left[u], left[v]) for u, v in g.edge_list()]
    edges += [(right[u], right[v]) for u, v in h.edge_list()]
    if join:
        edges += [(left[u], right[v]) for u in g.vertices for v in h.vertices]
    return SimplicialGraph.from_edges(vs, edges)


def disjoint_union(g: SimplicialGraph, h: SimplicialGraph) -> SimplicialGraph:
    return _combine(g, h, join=False)


def graph_join(g: SimplicialGraph, h: SimplicialGraph) -> SimplicialGraph:
    return _combine(g, h, join=True)


_SIZED = {
    "complete": complete_graph,
    "path": path_graph,
    "cycle": cycle_graph,
    "disjoint-edges": disjoint_edges,
}


def builtin_graph(spec: str) -> SimplicialGraph:
    """Build a graph from a generator spec such as ``join:disjoint-edges:2,disjoint-edges:2``.

    Binary generators nest: ``join:join:path:2,path:2,complete:1``.
    """
    spec = spec.strip()
    g, rest = _parse_spec(spec, 0)
    if rest != len(spec):
        raise GraphError(f"trailing text in graph spec {spec!r} at offset {rest}")
    return g


def _parse_spec(s: str, pos: int) -> tuple[SimplicialGraph, int]:
    m = re.compile(r"([a-z-]+):").match(s, pos)
    if not m:
        raise GraphError(f"bad graph spec {s!r} at offset {pos}")
    name, pos = m.group(1), m.end()
    if name in _SIZED:
        num = re.compile(r"\d+").match(s, pos)
        if not num:
            raise GraphError(f"{name}: expects a vertex count")
        return _SIZED[name](int(num.group())), num.end()
    if name in ("join", "disjoint"):
        sep = "," if name == "join" else "+"
        g, pos = _parse_spec(s, pos)
        if pos >= len(s) or s[pos] != sep:
            raise GraphError(f"{name}: expected {sep!r} at offset {pos} in {s!r}")
        h, pos = _parse_spec(s, pos + 1)
        return (graph_join if name == "join" else disjoint_union)(g, h), pos
    raise GraphError(f"unknown graph generator {name!r}")


# ---------------------------------------------------------------------------
# cliques and flag complexes


def iter_cliques(g: SimplicialGraph) -> Iterator[Simplex]:
    """All cliques (including the empty one), each in canonical vertex order.

    Cliques are grown by appending later vertices adjacent to every member, so
    each clique is produced exactly once.
    """
    order = g.vertices
    stack: list[tuple[Simplex, int]] = [((), 0)]
    while stack:
        clique, start = stack.pop()
        yield clique
        for i in range(len(order) - 1, start - 1, -1):
            v = order[i]
            if all(g.adjacent(v, u) for u in clique):
                stack.append((clique + (v,), i + 1))


def _simplex_key(g: SimplicialGraph):
    return lambda s: tuple(g.index[v] for v in s)


@dataclass(frozen=True)
class FlagComplex:
    """The flag complex of ``graph``; ``simplices[d + 1]`` lists the d-simplices."""

    graph: SimplicialGraph
    simplices: tuple[tuple[Simplex, ...], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 2

    def of_dim(self, d: int) -> tuple[Simplex, ...]:
        if -1 <= d <= self.dim:
            return self.simplices[d + 1]
        return ()

    def counts(self) -> list[int]:
        """Simplex counts for dimensions -1 .. dim."""
        return [len(s) for s in self.simplices]

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return s in self._members

    def __iter__(self) -> Iterator[Simplex]:
        for layer in self.simplices:
            yield from layer

    @cached_property
    def _members(self) -> frozenset[Simplex]:
        return frozenset(self)

    def is_single_simplex(self) -> bool:
        """True when the whole complex is one simplex with its faces (graph is complete)."""
        n = len(self.graph)
        return len(self.of_dim(n - 1)) == 1 if n else True


def flag_complex(g: SimplicialGraph) -> FlagComplex:
    by_size: dict[int, list[Simplex]] = {}
    for c in iter_cliques(g):
        by_size.setdefault(len(c), []).append(c)
    key = _simplex_key(g)
    top = max(by_size)
    layers = tuple(tuple(sorted(by_size.get(i, ()), key=key)) for i in range(top + 1))
    return FlagComplex(g, layers)


def link(k: FlagComplex, s: Sequence[str]) -> FlagComplex:
    """Link of a simplex: the flag complex on the common neighbours of its vertices."""
    s = k.graph.sorted_vertices(s)
    if s not in k:
        raise ValueError(f"{list(s)} is not a simplex of the complex")
    g = k.graph
    common = set(g.vertices).difference(s)
    for v in s:
        common &= g.adjacency[v]
    return flag_complex(g.induced(common))


def clique_counts(g: SimplicialGraph) -> list[int]:
    """``[b_1, ..., b_w]``: number of i-cliques for i = 1 .. clique number.

    The empty clique (b_0 = 1) is left out of the list.
    """
    return flag_complex(g).counts()[1:]


def clique_number(g: SimplicialGraph) -> int:
    return len(clique_counts(g))


@dataclass(frozen=True)
class Dimension:
    clique_number: int

    @property
    def at_most_three(self) -> bool:
        return self.clique_number <= 3


def cohomological_dimension(g: SimplicialGraph) -> Dimension:
    """cd of the right-angled Artin group: the clique number of its graph."""
    return Dimension(clique_number(g))


def components(g: SimplicialGraph) -> list[tuple[str, ...]]:
    """Connected components, each in canonical order, ordered by first vertex."""
    seen: set[str] = set()
    parts = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp, todo = [], [root]
        while todo:
            v = todo.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        parts.append(g.sorted_vertices(comp))
    return parts


def is_connected(g: SimplicialGraph) -> bool:
    return len(components(g)) <= 1


class Ends(str, Enum):
    ZERO = "zero"
    ONE = "one"
    TWO = "two"
    INFINITE = "infinite"


def ends(g: SimplicialGraph) -> Ends:
    if not g.vertices:
        return Ends.ZERO
    if len(g.vertices) == 1:
        return Ends.TWO
    return Ends.ONE if is_connected(g) else Ends.INFINITE


@dataclass(frozen=True)
class FreeProductSkeleton:
    """Counts of Z^2 factors (``n``) and Z factors (``m``) plus the witness subgraph."""

    n: int
    m: int
    witness: SimplicialGraph
    connected: bool


def free_product_skeleton(g: SimplicialGraph) -> FreeProductSkeleton:
    parts = components(g)
    if len(parts) <= 1:
        n = 1 if g.edges else 0
        m = 1 if len(g) == 1 else 0
        return FreeProductSkeleton(n, m, g.induced(()), connected=True)
    keep: list[str] = []
    n = m = 0
    for comp in parts:
        if len(comp) == 1:
            m += 1
            keep.extend(comp)
        else:
            n += 1
            sub = g.induced(comp)
            keep.extend(sub.edge_list()[0])
    return FreeProductSkeleton(n, m, g.induced(keep), connected=False)
