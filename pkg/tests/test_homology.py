from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from oracles import random_graph, rational_reduced_betti
from raag.graphs import SimplicialGraph, flag_complex, parse_graph
from raag.homology import (
    FGAbelianGroup,
    Z,
    ZERO,
    boundary_matrices,
    euler_characteristic,
    matmul,
    reduced_cohomology,
    reduced_homology,
    simplicial_closure,
    smith_normal_form,
)

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]


def _rp2():
    return simplicial_closure([tuple(f"p{x}" for x in f) for f in RP2])


def _cone(k, apex="apex"):
    facets = [s + (apex,) for s in k]
    return simplicial_closure(facets)


def test_fg_group_validation():
    assert str(FGAbelianGroup(2, (2, 6))) == "Z^2 + Z/2 + Z/6"
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    r = smith_normal_form([[0, 0], [0, 0]])
    assert r.rank == 0 and r.diagonal == [0, 0]
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == [1, 1, 1]


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_against_sympy_and_transforms(m):
    r = smith_normal_form(m, transforms=True)
    d = r.diagonal
    for a, b in zip(d[: r.rank], d[1 : r.rank]):
        assert b % a == 0
    assert all(x > 0 for x in d[: r.rank]) and not any(d[r.rank :])
    diag = [[d[i] if i == j and i < len(d) else 0 for j in range(len(m[0]))] for i in range(len(m))]
    assert matmul(matmul(r.U, m), r.V) == diag
    assert abs(sympy.Matrix(r.U).det()) == 1 and abs(sympy.Matrix(r.V).det()) == 1
    ref = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    ref_diag = sorted(abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i] != 0)
    assert sorted(d[: r.rank]) == ref_diag


def test_snf_large_entries_stay_exact():
    m = [[10**30 + 1, 10**30], [10**30, 10**30 - 1]]
    assert smith_normal_form(m).diagonal == [1, 1]


def test_boundary_matrix_of_triangle():
    cc = boundary_matrices(flag_complex(parse_graph("complete:3")))
    assert [row[0] for row in cc.boundary(2)] == [1, -1, 1]
    assert cc.boundary(0) == [[1, 1, 1]]


def test_augmented_point_and_empty():
    cc = boundary_matrices(flag_complex(parse_graph("complete:1")))
    assert cc.boundary(0) == [[1]]
    cc = boundary_matrices(flag_complex(SimplicialGraph(())))
    assert cc.bases == {-1: [()]}


@given(st.integers(0, 6), st.integers(0, 2**15 - 1))
def test_boundaries_compose_to_zero(n, mask):
    vs = [f"v{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]]
    g = SimplicialGraph.from_edges(vs, [p for k, p in enumerate(pairs) if mask >> k & 1])
    cc = boundary_matrices(flag_complex(g))
    for d in cc.degrees():
        if d - 1 in cc.bases and d + 1 in cc.bases and cc.size(d + 1) and cc.size(d - 1):
            prod = matmul(cc.boundary(d), cc.boundary(d + 1), cc.size(d))
            assert not any(any(r) for r in prod)


@pytest.mark.parametrize(
    "spec, degree, want",
    [
        ("cycle:4", 1, Z),
        ("cycle:4", 0, ZERO),
        ("complete:3", 0, ZERO),
        ("complete:3", 1, ZERO),
        ("complete:3", 2, ZERO),
        ("disjoint:complete:1+complete:1", 0, Z),
        ("join:disjoint-edges:2,disjoint-edges:2", 1, Z),
    ],
)
def test_reduced_examples(spec, degree, want):
    k = flag_complex(parse_graph(spec))
    assert reduced_homology(k, degree) == want
    assert reduced_cohomology(k, degree) == want


def test_empty_complex_is_sphere_of_dimension_minus_one():
    k = flag_complex(SimplicialGraph(()))
    assert reduced_homology(k, -1) == Z
    assert reduced_cohomology(k, -1) == Z
    assert reduced_homology(k, 0) == ZERO


def test_out_of_range_degrees_are_zero():
    k = flag_complex(parse_graph("cycle:5"))
    assert reduced_homology(k, 7) == ZERO
    assert reduced_cohomology(k, -4) == ZERO


def test_tetrahedron_boundary_is_a_two_sphere():
    k = simplicial_closure([("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")])
    assert [reduced_homology(k, i) for i in range(-1, 3)] == [ZERO, ZERO, ZERO, Z]


def test_projective_plane_torsion():
    k = _rp2()
    assert reduced_homology(k, 1) == FGAbelianGroup(0, (2,))
    assert reduced_homology(k, 2) == ZERO
    # universal coefficients moves the torsion up one degree
    assert reduced_cohomology(k, 1) == ZERO
    assert reduced_cohomology(k, 2) == FGAbelianGroup(0, (2,))


def test_cones_are_acyclic():
    rng = random.Random(3)
    for _ in range(15):
        k = _cone(flag_complex(random_graph(rng, 5)))
        assert all(reduced_homology(k, i).is_zero() for i in range(-1, k.dim + 1))
    assert all(reduced_homology(_cone(_rp2()), i).is_zero() for i in range(-1, 4))


def test_euler_characteristic():
    assert euler_characteristic(flag_complex(parse_graph("complete:3"))) == 1
    assert euler_characteristic(flag_complex(parse_graph("cycle:4"))) == 0
    assert euler_characteristic(flag_complex(parse_graph("disjoint:complete:1+complete:1"))) == 2
    with pytest.raises(ValueError):
        euler_characteristic(flag_complex(SimplicialGraph(())))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rational_oracle_and_euler_relation(seed):
    rng = random.Random(seed)
    k = flag_complex(random_graph(rng, rng.randint(1, 7), rng.random()))
    betti = rational_reduced_betti([s for s in k if s])
    for d in range(-1, k.dim + 1):
        h, c = reduced_homology(k, d), reduced_cohomology(k, d)
        assert h.free_rank == betti[d] == c.free_rank
    assert sum((-1) ** d * betti[d] for d in range(0, k.dim + 1)) == euler_characteristic(k) - 1
