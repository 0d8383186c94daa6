"""Associated graded of H^k(pi; Z[pi]) for a right-angled Artin group.

Each simplex s of the flag complex (the empty simplex included) contributes
the reduced cohomology of its link in degree ``k - dim s - 2``, tensored with
the permutation module Z[pi/pi_s], where pi_s is free abelian on the vertices
of s. The modules Z[pi/pi_s] stay symbolic; only their stabiliser rank
(``dim s + 1``) is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import FlagComplex, Simplex, SimplicialGraph, clique_counts, flag_complex, link
from .homology import FGAbelianGroup, ZERO, Z, reduced_cohomology


@dataclass(frozen=True)
class GradedSummand:
    simplex: Simplex
    link_cohomology: FGAbelianGroup

    @property
    def stabilizer_rank(self) -> int:
        return len(self.simplex)

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1

    @property
    def coset_module(self) -> str:
        if not self.simplex:
            return "Z[pi]"
        return f"Z[pi/Z^{self.stabilizer_rank}]" if self.stabilizer_rank > 1 else "Z[pi/Z]"

    def to_json(self) -> dict:
        return {
            "simplex": list(self.simplex),
            "link_cohomology": self.link_cohomology.to_json(),
            "stabilizer_rank": self.stabilizer_rank,
        }

    def __str__(self) -> str:
        return f"{self.link_cohomology} (x) {self.coset_module}"


@dataclass(frozen=True)
class SingleSimplex:
    """The flag complex is one (n-1)-simplex: pi = Z^n, H^n = Z and all else vanishes."""

    n: int
    degree: int

    @property
    def group(self) -> FGAbelianGroup:
        return Z if self.degree == self.n else ZERO

    def to_json(self) -> dict:
        return {"n": self.n, "group": self.group.to_json()}


@dataclass(frozen=True)
class GradedCohomologyReport:
    degree: int
    summands: tuple[GradedSummand, ...] = ()
    special_case: SingleSimplex | None = None

    def is_zero(self) -> bool:
        if self.special_case is not None:
            return self.special_case.group.is_zero()
        return not self.summands

    def free_lambda_rank(self) -> int:
        """Free rank over Z[pi] contributed by the empty-simplex summand."""
        if self.special_case is not None:
            return 1 if self.special_case.n == 0 and self.degree == 0 else 0
        return sum(s.link_cohomology.free_rank for s in self.summands if not s.simplex)

    def to_json(self) -> dict:
        out: dict = {"degree": self.degree}
        if self.special_case is not None:
            out["special_case"] = self.special_case.to_json()
        out["summands"] = [s.to_json() for s in self.summands]
        return out


def _summands(k: FlagComplex, degree: int) -> list[GradedSummand]:
    out = []
    for s in k:
        d = len(s) - 1
        shifted = degree - d - 2
        if shifted < -1 or shifted > k.dim:
            continue
        h = reduced_cohomology(link(k, s), shifted)
        if not h.is_zero():
            out.append(GradedSummand(s, h))
    return out


def graded_group_cohomology(g: SimplicialGraph, k: int) -> GradedCohomologyReport:
    fc = flag_complex(g)
    if fc.is_single_simplex():
        return GradedCohomologyReport(k, (), SingleSimplex(len(g), k))
    return GradedCohomologyReport(k, tuple(_summands(fc, k)))


class SingleSimplexError(ValueError):
    pass


@dataclass(frozen=True)
class FiltrationReport:
    """Quotients F_0, F_1/F_0, ..., F_k/F_{k-1}; F_j/F_{j-1} collects simplices of dimension j - 1."""

    degree: int
    quotients: tuple[tuple[GradedSummand, ...], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "quotients": [
                {"index": j, "simplex_dim": j - 1, "summands": [s.to_json() for s in q]}
                for j, q in enumerate(self.quotients)
            ],
        }


def filtration(g: SimplicialGraph, k: int) -> FiltrationReport:
    fc = flag_complex(g)
    if fc.is_single_simplex():
        raise SingleSimplexError("flag complex is a single simplex; the graded formula does not apply")
    buckets: list[list[GradedSummand]] = [[] for _ in range(max(k, 0) + 1)]
    for s in _summands(fc, k):
        buckets[s.dim + 1].append(s)
    return FiltrationReport(k, tuple(tuple(b) for b in buckets))


def integral_group_homology(g: SimplicialGraph, i: int) -> FGAbelianGroup:
    """H_i(pi; Z) is free abelian on the i-cliques."""
    if i < 0:
        return ZERO
    if i == 0:
        return Z
    counts = clique_counts(g)
    return FGAbelianGroup(counts[i - 1]) if i <= len(counts) else ZERO
