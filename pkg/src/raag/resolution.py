"""Free Z[pi]-resolution from the Salvetti complex and invariants of the minimal model.

C_i is free on the i-cliques. For a clique s = (v_0 < ... < v_k),

    d[s] = sum_j (-1)^j (v_j - 1) [s - v_j],

and the augmentation sends the single 0-cell to 1. Only graphs without
4-cliques (cd <= 3) are handled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import GradedCohomologyReport, graded_group_cohomology
from .graphs import SimplicialGraph, clique_counts, flag_complex
from .group_ring import GroupRing, LambdaMatrix
from .homology import IntegerChainComplex


class FourCliqueError(ValueError):
    pass


def _require_cd3(g: SimplicialGraph) -> list[int]:
    counts = clique_counts(g)
    if len(counts) > 3:
        raise FourCliqueError("graph has a 4-clique (cd > 3)")
    return counts + [0] * (3 - len(counts))


@dataclass(frozen=True)
class LambdaChainComplex:
    """``differentials[i - 1]`` is d_i : C_i -> C_{i-1}; ``bases[i]`` labels C_i by cliques."""

    ring: GroupRing
    bases: tuple[tuple[tuple[str, ...], ...], ...]
    differentials: tuple[LambdaMatrix, ...]

    def rank(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i < len(self.bases) else 0

    def differential(self, i: int) -> LambdaMatrix:
        return self.differentials[i - 1]

    def augmentation_row(self) -> list[int]:
        return [1] * self.rank(0)

    def render(self) -> str:
        out = []
        for i, d in enumerate(self.differentials, start=1):
            out.append(f"d{i}: C{i} ({self.rank(i)}) -> C{i - 1} ({self.rank(i - 1)})")
            out.append(d.render())
        return "\n".join(out)

    def to_json(self) -> dict:
        return {
            "bases": [[list(s) for s in b] for b in self.bases],
            "differentials": [d.to_json() for d in self.differentials],
        }


def salvetti_resolution(g: SimplicialGraph, ring: GroupRing | None = None) -> LambdaChainComplex:
    _require_cd3(g)
    ring = ring or GroupRing(g)
    fc = flag_complex(g)
    bases = tuple(fc.simplices)  # C_i <-> (i-1)-simplices, i.e. i-cliques
    diffs = []
    for i in range(1, len(bases)):
        row_of = {s: r for r, s in enumerate(bases[i - 1])}
        rows = [[ring.zero] * len(bases[i]) for _ in bases[i - 1]]
        for c, s in enumerate(bases[i]):
            for j, v in enumerate(s):
                coeff = ring.gen(v) - 1
                rows[row_of[s[:j] + s[j + 1:]]][c] = coeff if j % 2 == 0 else -coeff
        diffs.append(LambdaMatrix.build(ring, rows, len(bases[i]), bases[i - 1], bases[i]))
    return LambdaChainComplex(ring, bases, tuple(diffs))


def verify_resolution(c: LambdaChainComplex) -> bool:
    """Check d_i d_{i+1} = 0 in every degree and that augmentation kills d_1."""
    for lower, upper in zip(c.differentials, c.differentials[1:]):
        if not (lower @ upper).is_zero():
            return False
    if c.differentials:
        eps = c.augmentation_row()
        d1 = c.differentials[0]
        for j in range(d1.ncols):
            if sum(e * x.augmentation() for e, x in zip(eps, d1.column(j))):
                return False
    return True


def tensor_down(c: LambdaChainComplex) -> IntegerChainComplex:
    """Apply the augmentation entrywise: the complex C tensored over Z[pi] with Z."""
    bases = {i: list(b) for i, b in enumerate(c.bases)}
    boundaries = {
        i: [[x.augmentation() for x in row] for row in d.rows]
        for i, d in enumerate(c.differentials, start=1)
    }
    return IntegerChainComplex(bases, boundaries)


def pi2_skeleton_rank(g: SimplicialGraph) -> int:
    """Z[pi]-rank of pi_2 of the 2-skeleton: the number of triangles."""
    return _require_cd3(g)[2]


@dataclass(frozen=True)
class FourTermReport:
    """0 -> H^2(pi; L) -> H^2(K; L) -> pi_2(K)* -> H^3(pi; L) -> 0, with L = Z[pi]."""

    h2_group: GradedCohomologyReport
    h3_group: GradedCohomologyReport
    pi2_dual_rank: int
    h2_skeleton: str

    def terms(self) -> list[str]:
        return [
            "0",
            "0" if self.h2_group.is_zero() else "H^2(pi;L)",
            self.h2_skeleton,
            _free_module(self.pi2_dual_rank),
            "Z" if _is_single_z(self.h3_group) else ("0" if self.h3_group.is_zero() else "H^3(pi;L)"),
            "0",
        ]

    def to_json(self) -> dict:
        return {
            "sequence": self.terms(),
            "H2_pi": self.h2_group.to_json(),
            "H3_pi": self.h3_group.to_json(),
            "pi2_K_dual_rank": self.pi2_dual_rank,
            "H2_K": self.h2_skeleton,
        }


def _free_module(r: int) -> str:
    return "0" if r == 0 else ("L" if r == 1 else f"L^{r}")


def _is_single_z(r: GradedCohomologyReport) -> bool:
    return r.special_case is not None and not r.special_case.group.is_zero()


def four_term_report(g: SimplicialGraph) -> FourTermReport:
    b3 = pi2_skeleton_rank(g)
    h2 = graded_group_cohomology(g, 2)
    h3 = graded_group_cohomology(g, 3)
    if h2.is_zero() and len(g) == 3 and h2.special_case is not None:
        skeleton = "I(pi)"
    elif b3 == 0:
        skeleton = "H^2(pi;L)" if not h2.is_zero() else "0"
    elif h2.is_zero():
        skeleton = f"ker({_free_module(b3)} -> H^3(pi;L))"
    else:
        skeleton = f"extension of ker({_free_module(b3)} -> H^3(pi;L)) by H^2(pi;L)"
    return FourTermReport(h2, h3, b3, skeleton)


@dataclass(frozen=True)
class ModelReport:
    b: tuple[int, int, int]
    four_term: FourTermReport

    @property
    def chi_M0(self) -> int:
        b1, b2, _ = self.b
        return 2 - 2 * b1 + 2 * b2

    @property
    def pi2_tensor_rank(self) -> int:
        return self.b[1] + self.b[2]

    @property
    def pi2_dual_rank(self) -> int:
        return 2 * self.b[2]

    @property
    def stabilization_bound(self) -> int:
        # clique count; an upper bound for the minimal number of Z[pi]-generators of H^3(pi; Z[pi])
        return self.b[2]

    @property
    def pi2_structure(self) -> str:
        free = _free_module(self.b[2])
        return f"{self.four_term.h2_skeleton} + {free}"

    def to_json(self) -> dict:
        return {
            "b": list(self.b),
            "chi_M0": self.chi_M0,
            "pi2_tensor_rank": self.pi2_tensor_rank,
            "pi2_dual_rank": self.pi2_dual_rank,
            "stabilization_bound": self.stabilization_bound,
            "stabilization_bound_note": "3-clique count; upper bound for the minimal generator count of H^3(pi;L)",
            "pi2_structure": self.pi2_structure,
            "four_term": self.four_term.to_json(),
        }


def minimal_model_invariants(g: SimplicialGraph) -> ModelReport:
    b1, b2, b3 = _require_cd3(g)
    return ModelReport((b1, b2, b3), four_term_report(g))
