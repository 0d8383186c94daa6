"""Acceptance suite: one test per criterion, with the stated time limits.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints a PASS/FAIL line per criterion.
"""

from __future__ import annotations

import random
import sys
import time

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from oracles import (
    WordClasses,
    brute_clique_counts,
    brute_cliques,
    graphs_up_to_iso,
    random_graph,
    random_graph_no_k4,
    rational_reduced_betti,
)
from raag.cohomology import graded_group_cohomology
from raag.forms import (
    apply,
    hyperbolic,
    isometry_check,
    metabolic_double,
    orthogonal_sum,
    pairing,
    stabilization_isometry,
    strongly_even_witness,
    transvection_composite,
)
from raag.graphs import SimplicialGraph, flag_complex, parse_graph
from raag.group_ring import GroupRing, LambdaMatrix, normalize
from raag.homology import FGAbelianGroup, Z, ZERO, chain_homology, reduced_cohomology, reduced_homology, simplicial_closure
from raag.resolution import four_term_report, minimal_model_invariants, salvetti_resolution, tensor_down, verify_resolution
from raag.tame import generate_tame, random_build_script, tame_sufficient


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "Z^3: H^2 = 0, H^3 = Z, H^2(K) = I(pi), pi_2 = I(pi) + L (< 1 s)")
def test_criterion_1_z_cubed():
    with Clock() as clock:
        g = parse_graph("complete:3")
        h2 = graded_group_cohomology(g, 2)
        h3 = graded_group_cohomology(g, 3)
        four = four_term_report(g)
        model = minimal_model_invariants(g)
    assert h2.special_case is not None and h2.is_zero() and h2.summands == ()
    assert h3.special_case is not None and h3.special_case.group == Z and h3.special_case.n == 3
    assert not h3.is_zero()
    assert four.h2_skeleton == "I(pi)"
    assert four.terms() == ["0", "0", "I(pi)", "L", "Z", "0"]
    assert model.pi2_structure == "I(pi) + L"
    assert clock.elapsed < 1.0


@pytest.mark.criterion(2, "disjoint edges n = 2..5: H^1 = L^(n-1), nothing else (< 1 s)")
def test_criterion_2_disjoint_edges():
    with Clock() as clock:
        reports = {n: graded_group_cohomology(parse_graph(f"disjoint-edges:{n}"), 1) for n in range(2, 6)}
    for n, r in reports.items():
        assert len(r.summands) == 1
        (s,) = r.summands
        assert s.simplex == () and s.link_cohomology == FGAbelianGroup(n - 1)
        assert r.free_lambda_rank() == n - 1
    assert clock.elapsed < 1.0


def _oracle_h1(g: SimplicialGraph) -> FGAbelianGroup:
    """H~^1 of the flag complex from independently built boundary matrices and sympy's SNF."""
    cliques = brute_cliques(g)
    betti = rational_reduced_betti(cliques)
    verts = [c for c in cliques if len(c) == 1]
    edges = [c for c in cliques if len(c) == 2]
    d1 = sympy.Matrix(len(verts), len(edges), lambda i, j: {edges[j][1:]: 1, edges[j][:1]: -1}.get(verts[i], 0))
    # torsion of H^1 is the torsion of H_0 = coker d1
    snf = sympy_snf(d1, domain=sympy.ZZ)
    torsion = tuple(sorted(abs(snf[i, i]) for i in range(min(snf.shape)) if abs(snf[i, i]) > 1))
    return FGAbelianGroup(betti.get(1, 0), torsion)


@pytest.mark.criterion(3, "join of edge pairs: H^2 = Z[pi] only, cross-checked by SNF (< 1 s)")
def test_criterion_3_join_of_edge_pairs():
    g = parse_graph("join:disjoint-edges:2,disjoint-edges:2")
    with Clock() as clock:
        r = graded_group_cohomology(g, 2)
    assert clock.elapsed < 1.0
    assert len(r.summands) == 1
    (s,) = r.summands
    assert s.simplex == () and s.coset_module == "Z[pi]" and s.link_cohomology == Z
    assert r.free_lambda_rank() == 1
    assert brute_clique_counts(g)[3] == 4
    assert _oracle_h1(g) == Z == reduced_cohomology(flag_complex(g), 1)


@pytest.mark.criterion(4, "100 seeded build scripts (<= 12 steps) all tame (< 10 s)")
def test_criterion_4_generated_graphs_are_tame():
    with Clock() as clock:
        verdicts = [tame_sufficient(generate_tame(random_build_script(seed % 13, seed))).overall for seed in range(100)]
    assert verdicts.count("tame") == 100
    assert clock.elapsed < 10.0


@pytest.mark.criterion(5, "resolution: d^2 = 0, eps d1 = 0, Betti = clique counts (< 30 s)")
def test_criterion_5_resolution_suite():
    rng = random.Random(5)
    family = [g for g in graphs_up_to_iso(5) if len(brute_clique_counts(g)) <= 3]
    family += [random_graph_no_k4(rng, rng.randint(6, 8)) for _ in range(50)]
    failures = []
    with Clock() as clock:
        for g in family:
            c = salvetti_resolution(g)
            ints = tensor_down(c)
            betti = [chain_homology(ints, i).free_rank for i in ints.degrees()]
            if not verify_resolution(c) or betti != [1] + brute_clique_counts(g):
                failures.append(g)
    assert failures == []
    assert clock.elapsed < 30.0


@pytest.mark.criterion(6, "model arithmetic on 20 random graphs; K3 gives (4, 2, 1, 2)")
def test_criterion_6_model_arithmetic():
    rng = random.Random(6)
    for _ in range(20):
        g = random_graph_no_k4(rng, rng.randint(3, 8))
        b1, b2, b3 = (brute_clique_counts(g) + [0, 0, 0])[:3]
        m = minimal_model_invariants(g)
        assert m.pi2_tensor_rank == b2 + b3
        assert m.pi2_dual_rank == 2 * b3
        assert m.stabilization_bound == b3
        assert m.chi_M0 == 2 - 2 * b1 + 2 * b2
    m = minimal_model_invariants(parse_graph("complete:3"))
    assert (m.pi2_tensor_rank, m.pi2_dual_rank, m.stabilization_bound, m.chi_M0) == (4, 2, 1, 2)


def _random_element(ring, rng, terms=3, length=3):
    vs = ring.graph.vertices
    return ring.element(
        [(rng.randint(-3, 3), [(rng.choice(vs), rng.choice((-1, 1, 2))) for _ in range(rng.randint(0, length))])
         for _ in range(rng.randint(0, terms))]
    )


def _random_even_hermitian(ring, rng, n):
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        a = _random_element(ring, rng)
        rows[i][i] = a + a.involute()
        for j in range(i + 1, n):
            rows[i][j] = _random_element(ring, rng)
            rows[j][i] = rows[i][j].involute()
    return LambdaMatrix.build(ring, rows, n)


def _random_unipotent(ring, rng, n):
    """Upper unitriangular P and its inverse (P = I + N with N nilpotent)."""
    rows = [[ring.one if i == j else (_random_element(ring, rng, 2, 2) if j > i else ring.zero) for j in range(n)] for i in range(n)]
    p = LambdaMatrix.build(ring, rows, n)
    nil = p - LambdaMatrix.identity(ring, n)
    inv, term = LambdaMatrix.identity(ring, n), LambdaMatrix.identity(ring, n)
    for _ in range(n):
        term = -(term @ nil)
        inv = inv + term
    assert p @ inv == LambdaMatrix.identity(ring, n)
    return p, inv


@pytest.mark.criterion(7, "forms: witnesses, transvection composites, stabilization isometries (< 30 s)")
def test_criterion_7_forms_suite():
    rng = random.Random(7)
    rings = [GroupRing(g) for g in graphs_up_to_iso(3) if g.vertices]
    with Clock() as clock:
        # (a) metabolic doubles of even forms are strongly even
        for k in range(60):
            ring = rings[k % len(rings)]
            delta = _random_even_hermitian(ring, rng, rng.randint(1, 3))
            m = metabolic_double(delta, even=True).matrix
            assert strongly_even_witness(m).symmetrized() == m

        # (b) transvection composites on disguised hyperbolic pairs
        for k in range(50):
            ring = rings[k % len(rings)]
            extra = rng.randint(0, 2)
            base = orthogonal_sum(hyperbolic(1, ring), _random_even_hermitian(ring, rng, extra)) if extra else hyperbolic(1, ring).matrix
            n = base.nrows
            p, p_inv = _random_unipotent(ring, rng, n)
            s = p.conjugate_transpose() @ base @ p
            col = lambda j: [p_inv.rows[i][j] for i in range(n)]
            w, v = col(0), col(1)
            assert pairing(s, w, v) == ring.one
            theta = transvection_composite(s, w, v)
            big = orthogonal_sum(s, hyperbolic(1, ring))
            e = [ring.zero] * n + [ring.one, ring.zero]
            assert apply(theta, w + [0, 0]) == e
            assert isometry_check(big, big, theta)
            for j in range(2, n):
                x = col(j) + [ring.zero, ring.zero]
                assert apply(theta, x) == x

        # (c) stabilization isometries
        for k in range(50):
            ring = rings[k % len(rings)]
            theta = _random_even_hermitian(ring, rng, rng.randint(1, 3))
            b = stabilization_isometry(theta)
            assert isometry_check(b.psi, hyperbolic(theta.nrows, ring), b.k_matrix)
    assert clock.elapsed < 30.0


@pytest.mark.criterion(8, "homology vs rational oracle on 100 small flag complexes, plus fixed cases")
def test_criterion_8_homology_oracle():
    rng = random.Random(8)
    checked = 0
    while checked < 100:
        g = random_graph(rng, rng.randint(1, 6), rng.random())
        k = flag_complex(g)
        simplices = [s for s in k if s]
        if len(simplices) > 12:
            continue
        betti = rational_reduced_betti(simplices)
        for d in range(-1, k.dim + 2):
            assert reduced_homology(k, d).free_rank == betti.get(d, 0)
            assert reduced_cohomology(k, d).free_rank == betti.get(d, 0)
        checked += 1

    empty = flag_complex(SimplicialGraph(()))
    assert reduced_homology(empty, -1) == Z == reduced_cohomology(empty, -1)
    circle = flag_complex(parse_graph("cycle:5"))
    assert [reduced_homology(circle, d) for d in (-1, 0, 1, 2)] == [ZERO, ZERO, Z, ZERO]
    sphere = simplicial_closure([("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")])
    assert [reduced_homology(sphere, d) for d in (-1, 0, 1, 2)] == [ZERO, ZERO, ZERO, Z]
    octahedron = flag_complex(parse_graph("join:disjoint:complete:1+complete:1,join:disjoint:complete:1+complete:1,disjoint:complete:1+complete:1"))
    assert [reduced_homology(octahedron, d) for d in (-1, 0, 1, 2)] == [ZERO, ZERO, ZERO, Z]
    cone = flag_complex(parse_graph("join:cycle:5,complete:1"))
    assert all(reduced_homology(cone, d).is_zero() for d in range(-1, 3))


@pytest.mark.criterion(9, "word problem: normalize vs move closure, words <= 6, graphs <= 4 vertices")
def test_criterion_9_word_problem():
    disagreements = 0
    graphs = graphs_up_to_iso(4)
    assert len(graphs) == 1 + 1 + 2 + 4 + 11
    for g in graphs:
        classes = WordClasses(g, 6)
        by_form: dict = {}
        by_class: dict = {}
        for w in classes.words:
            nf = normalize(classes.as_pairs(g, w), g)
            rep = classes.representative(w)
            # equal normal forms <=> equal classes, checked in both directions
            if by_form.setdefault(nf, rep) != rep:
                disagreements += 1
            if by_class.setdefault(rep, nf) != nf:
                disagreements += 1
    assert disagreements == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
