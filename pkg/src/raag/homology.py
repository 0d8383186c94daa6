"""Integral simplicial (co)homology through Smith normal form.

Matrices are plain lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .graphs import FlagComplex, Simplex, SimplicialGraph

Matrix = list[list[int]]


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank plus cyclic torsion with invariant factors d_1 | d_2 | ..."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0 or any(d < 2 for d in t):
            raise ValueError(f"invalid abelian group data {self.free_rank}, {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


ZERO = FGAbelianGroup()
Z = FGAbelianGroup(1)


@dataclass
class SNFResult:
    diagonal: list[int]
    rank: int
    U: Matrix | None = None
    V: Matrix | None = None

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(m: Matrix, nrows: int | None = None, ncols: int | None = None) -> Matrix:
    if nrows is None:
        nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return [[m[i][j] for i in range(nrows)] for j in range(ncols)]


def format_matrix(m: Matrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = False, ncols: int | None = None) -> SNFResult:
    """Diagonalise an integer matrix with unimodular row and column operations.

    Pivots are chosen by least absolute value. With ``transforms`` the result
    carries U, V with ``U @ matrix @ V`` equal to the diagonal matrix.
    ``ncols`` is only needed for matrices with zero rows.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    rank = 0
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived: promote it
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        rank += 1

    diagonal = [a[i][i] for i in range(min(m, n))]
    return SNFResult(diagonal, rank, U, V)


@dataclass
class IntegerChainComplex:
    """Free abelian chain complex: ``bases[d]`` labels C_d, ``boundaries[d]`` is C_d -> C_{d-1}.

    A boundary matrix has ``len(bases[d-1])`` rows and ``len(bases[d])`` columns.
    Missing degrees are zero.
    """

    bases: dict[int, list] = field(default_factory=dict)
    boundaries: dict[int, Matrix] = field(default_factory=dict)

    def size(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def boundary(self, d: int) -> Matrix:
        if d in self.boundaries:
            return self.boundaries[d]
        return [[0] * self.size(d) for _ in range(self.size(d - 1))]

    def degrees(self) -> range:
        if not self.bases:
            return range(0)
        return range(min(self.bases), max(self.bases) + 1)


def _faces(s: Simplex) -> list[tuple[int, Simplex]]:
    return [((-1) ** j, s[:j] + s[j + 1:]) for j in range(len(s))]


def boundary_matrices(k: FlagComplex, use_augmentation: bool = True) -> IntegerChainComplex:
    """Simplicial boundary matrices with the alternating-sum orientation.

    With augmentation, degree -1 carries the empty simplex and every vertex
    maps onto it, which yields the reduced theory.
    """
    lo = -1 if use_augmentation else 0
    bases = {d: list(k.of_dim(d)) for d in range(lo, k.dim + 1)}
    if not use_augmentation and k.dim < 0:
        bases = {}
    boundaries = {}
    for d in range(lo + 1, k.dim + 1):
        row_of = {s: i for i, s in enumerate(bases[d - 1])}
        mat = [[0] * len(bases[d]) for _ in bases[d - 1]]
        for col, s in enumerate(bases[d]):
            for sign, face in _faces(s):
                mat[row_of[face]][col] = sign
        boundaries[d] = mat
    return IntegerChainComplex(bases, boundaries)


def _snf(cc: IntegerChainComplex, d: int, dual: bool = False) -> SNFResult:
    mat = cc.boundary(d)
    if dual:
        mat = transpose(mat, cc.size(d - 1), cc.size(d))
        return smith_normal_form(mat, ncols=cc.size(d - 1))
    return smith_normal_form(mat, ncols=cc.size(d))


def _group(free: int, snf: SNFResult) -> FGAbelianGroup:
    return FGAbelianGroup(free, tuple(abs(x) for x in snf.invariant_factors if abs(x) > 1))


def chain_homology(cc: IntegerChainComplex, i: int) -> FGAbelianGroup:
    """H_i = ker(d_i) / im(d_{i+1})."""
    if i not in cc.bases:
        return ZERO
    out, inc = _snf(cc, i), _snf(cc, i + 1)
    return _group(cc.size(i) - out.rank - inc.rank, inc)


def chain_cohomology(cc: IntegerChainComplex, i: int) -> FGAbelianGroup:
    """H^i = ker(d_{i+1}^T) / im(d_i^T)."""
    if i not in cc.bases:
        return ZERO
    out, inc = _snf(cc, i + 1, dual=True), _snf(cc, i, dual=True)
    return _group(cc.size(i) - out.rank - inc.rank, inc)


def reduced_homology(k: FlagComplex, i: int) -> FGAbelianGroup:
    return chain_homology(boundary_matrices(k), i)


def reduced_cohomology(k: FlagComplex, i: int) -> FGAbelianGroup:
    return chain_cohomology(boundary_matrices(k), i)


def euler_characteristic(k: FlagComplex) -> int:
    if k.dim < 0:
        raise ValueError("Euler characteristic of the empty complex is not defined here")
    return sum((-1) ** d * len(k.of_dim(d)) for d in range(k.dim + 1))


def simplicial_closure(facets: Sequence[Sequence[str]]) -> FlagComplex:
    """Downward closure of ``facets`` in the same container as a flag complex.

    The result need not be flag (e.g. the boundary of a tetrahedron); only the
    homology functions should be applied to it.
    """
    verts: list[str] = []
    for f in facets:
        verts.extend(v for v in f if v not in verts)
    faces: set[Simplex] = {()}
    for f in facets:
        f = tuple(sorted(f, key=verts.index))
        for r in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, r))
    g = SimplicialGraph.from_edges(verts, [s for s in faces if len(s) == 2])
    top = max(len(s) for s in faces)
    key = lambda s: tuple(verts.index(v) for v in s)
    layers = tuple(tuple(sorted((s for s in faces if len(s) == i), key=key)) for i in range(top + 1))
    return FlagComplex(g, layers)
