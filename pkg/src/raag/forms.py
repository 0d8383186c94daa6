"""Hermitian forms over Z[pi] on free based modules.

A form is stored as its Gram matrix ``H[i][j] = h(e_i, e_j)``. Forms are
conjugate-linear in the first slot and linear in the second, so for column
vectors x, y of coordinates ``h(x, y) = x* H y`` where ``*`` is the
conjugate transpose. A matrix U whose columns are the images of basis
vectors is an isometry from (H1) to (H2) when ``U* H2 U = H1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .group_ring import GroupRing, GroupRingElement, LambdaMatrix, shortlex_key, word_inverse


class FormError(ValueError):
    pass


class NotHermitian(FormError):
    pass


class OddForm(FormError):
    """The form has a diagonal entry with odd identity coefficient."""


def is_hermitian(h: LambdaMatrix) -> bool:
    return h.nrows == h.ncols and h.conjugate_transpose() == h


@dataclass(frozen=True)
class HermitianForm:
    matrix: LambdaMatrix

    def __post_init__(self):
        if not is_hermitian(self.matrix):
            raise NotHermitian("matrix is not equal to its conjugate transpose")

    @property
    def ring(self) -> GroupRing:
        return self.matrix.ring

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    def __call__(self, x: Sequence[GroupRingElement], y: Sequence[GroupRingElement]) -> GroupRingElement:
        return pairing(self.matrix, x, y)


@dataclass(frozen=True)
class SesquilinearForm:
    matrix: LambdaMatrix

    def symmetrized(self) -> LambdaMatrix:
        """lambda + T lambda."""
        return self.matrix + self.matrix.conjugate_transpose()


def _as_matrix(h) -> LambdaMatrix:
    return h.matrix if isinstance(h, (HermitianForm, SesquilinearForm)) else h


def pairing(h: LambdaMatrix, x: Sequence[GroupRingElement], y: Sequence[GroupRingElement]) -> GroupRingElement:
    ring = h.ring
    acc = ring.zero
    for i, xi in enumerate(x):
        if not xi:
            continue
        xi_bar = xi.involute()
        for j, yj in enumerate(y):
            if yj and h.rows[i][j]:
                acc = acc + xi_bar * h.rows[i][j] * yj
    return acc


def w_invariant(h) -> tuple[int, ...]:
    """Identity coefficient of each diagonal entry, mod 2. All zero iff the form is even."""
    h = _as_matrix(h)
    if not is_hermitian(h):
        raise NotHermitian("w is only defined for hermitian forms")
    return tuple(h.rows[i][i].epsilon1() % 2 for i in range(h.nrows))


def is_even(h) -> bool:
    return not any(w_invariant(h))


def _half_diagonal(c: GroupRingElement) -> GroupRingElement:
    # c is self-conjugate: c(w) = c(w^-1). Keep the shortlex-smaller word of each pair.
    ring = c.ring
    g = ring.graph
    half: dict = {}
    for w, coeff in c.terms.items():
        if not w:
            half[w] = coeff // 2
            continue
        inv = ring.normalize(word_inverse(w))
        if shortlex_key(g, w) < shortlex_key(g, inv):
            half[w] = coeff
    return GroupRingElement(ring, {w: k for w, k in half.items() if k})


def strongly_even_witness(h) -> SesquilinearForm:
    """Find lambda with h = lambda + T lambda.

    lambda keeps the strict upper triangle of h and half of each diagonal
    entry, split along inverse pairs of words.
    """
    h = _as_matrix(h)
    if any(w_invariant(h)):
        raise OddForm("form is not even: some diagonal entry has odd identity coefficient")
    ring = h.ring
    n = h.nrows
    rows = [[h.rows[i][j] if j > i else ring.zero for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] = _half_diagonal(h.rows[i][i])
    lam = SesquilinearForm(LambdaMatrix.build(ring, rows, n))
    if lam.symmetrized() != h:
        raise FormError("witness reconstruction failed")
    return lam


def hyperbolic(r: int, ring: GroupRing) -> HermitianForm:
    """H(L^r) in the basis e_1..e_r, f_1..f_r."""
    zero = LambdaMatrix.zeros(ring, r, r)
    one = LambdaMatrix.identity(ring, r)
    return HermitianForm(LambdaMatrix.blocks(ring, [[zero, one], [one, zero]]))


def metabolic_double(delta, even: bool = False) -> HermitianForm:
    """[[delta, I], [I, 0]]: pairs the first block with the second by the identity."""
    delta = _as_matrix(delta)
    if not is_hermitian(delta):
        raise NotHermitian("delta must be hermitian")
    if even and any(w_invariant(delta)):
        raise OddForm("delta is not even")
    ring, n = delta.ring, delta.nrows
    one = LambdaMatrix.identity(ring, n)
    zero = LambdaMatrix.zeros(ring, n, n)
    return HermitianForm(LambdaMatrix.blocks(ring, [[delta, one], [one, zero]]))


def isometry_check(h1, h2, u: LambdaMatrix) -> bool:
    h1, h2 = _as_matrix(h1), _as_matrix(h2)
    if u.nrows != h2.nrows or u.ncols != h1.nrows:
        return False
    return u.conjugate_transpose() @ h2 @ u == h1


def orthogonal_sum(h1, h2) -> LambdaMatrix:
    h1, h2 = _as_matrix(h1), _as_matrix(h2)
    ring = h1.ring
    return LambdaMatrix.blocks(ring, [
        [h1, LambdaMatrix.zeros(ring, h1.nrows, h2.ncols)],
        [LambdaMatrix.zeros(ring, h2.nrows, h1.ncols), h2],
    ])


def _column(ring: GroupRing, v: Sequence) -> LambdaMatrix:
    return LambdaMatrix.build(ring, [[x] for x in v], 1)


def transvection(h, u: Sequence, a: GroupRingElement, v: Sequence) -> LambdaMatrix:
    """Matrix of x -> x + u<v,x> - v<u,x> - u a <u,x>.

    Needs <u,u> = 0, <u,v> = 0 and a + a-bar = <v,v>; it is then an isometry.
    """
    h = _as_matrix(h)
    ring = h.ring
    u = [ring.scalar(x) if isinstance(x, int) else x for x in u]
    v = [ring.scalar(x) if isinstance(x, int) else x for x in v]
    if pairing(h, u, u) or pairing(h, u, v):
        raise FormError("transvection needs u isotropic and orthogonal to v")
    if a + a.involute() != pairing(h, v, v):
        raise FormError("transvection needs a + conj(a) = <v, v>")
    U, V = _column(ring, u), _column(ring, v)
    Ustar_h = U.conjugate_transpose() @ h
    Vstar_h = V.conjugate_transpose() @ h
    Ua = U.map(lambda x: x * a)
    n = h.nrows
    return LambdaMatrix.identity(ring, n) + U @ Vstar_h - V @ Ustar_h - Ua @ Ustar_h


def transvection_composite(s, w: Sequence, v: Sequence) -> LambdaMatrix:
    """Isometry of s + H(L) sending w to the new hyperbolic vector e.

    Preconditions: s(w, w) = 0, s(v, v) = 0, s(w, v) = 1. The result is
    sigma_{f,0,w} o sigma_{e,0,v}, acting on the basis of s followed by e, f;
    it fixes every vector of s orthogonal to both w and v.
    """
    return transvection_sequence(s, [w], [v])


def transvection_sequence(s, ws: Sequence[Sequence], vs: Sequence[Sequence]) -> LambdaMatrix:
    """theta_k o ... o theta_1 on s + H(L)_1 + ... + H(L)_k with theta(w_i) = e_i.

    Basis order: that of s, then e_1, f_1, ..., e_k, f_k. Requires
    s(w_i, w_j) = s(v_i, v_j) = 0 and s(w_i, v_j) = delta_ij.
    """
    s = _as_matrix(s)
    ring, n, k = s.ring, s.nrows, len(ws)
    ws = [[ring.scalar(x) if isinstance(x, int) else x for x in w] for w in ws]
    vs = [[ring.scalar(x) if isinstance(x, int) else x for x in v] for v in vs]
    for i in range(k):
        for j in range(k):
            if pairing(s, ws[i], ws[j]) or pairing(s, vs[i], vs[j]):
                raise FormError("w's and v's must span totally isotropic submodules")
            if pairing(s, ws[i], vs[j]) != int(i == j):
                raise FormError("need s(w_i, v_j) = delta_ij")
    big = s
    for _ in range(k):
        big = orthogonal_sum(big, hyperbolic(1, ring))
    size = n + 2 * k
    zero = ring.zero
    theta = LambdaMatrix.identity(ring, size)
    for i in range(k):
        e = [ring.one if t == n + 2 * i else zero for t in range(size)]
        f = [ring.one if t == n + 2 * i + 1 else zero for t in range(size)]
        w = list(ws[i]) + [zero] * (2 * k)
        v = list(vs[i]) + [zero] * (2 * k)
        step = transvection(big, f, zero, w) @ transvection(big, e, zero, v)
        theta = step @ theta
    return theta


def apply(m: LambdaMatrix, x: Sequence) -> list[GroupRingElement]:
    ring = m.ring
    col = LambdaMatrix.build(ring, [[ring.scalar(c) if isinstance(c, int) else c] for c in x], 1)
    return [r[0] for r in (m @ col).rows]


@dataclass(frozen=True)
class FormsBundle:
    theta: HermitianForm
    lam: SesquilinearForm
    psi: HermitianForm
    k_matrix: LambdaMatrix


def stabilization_isometry(theta) -> FormsBundle:
    """Isometry k from (F + F*, psi) onto H(L^r) for an even form theta on F = L^r.

    psi pairs a_i with b_j by delta_ij, restricts to theta on F and vanishes on
    F*. With theta = lambda + T lambda, k(b_i) = f_i and
    k(a_i) = e_i + sum_j f_j lambda(a_j, a_i).
    """
    theta_m = _as_matrix(theta)
    lam = strongly_even_witness(theta_m)
    psi = metabolic_double(theta_m, even=True)
    ring, r = theta_m.ring, theta_m.nrows
    one = LambdaMatrix.identity(ring, r)
    zero = LambdaMatrix.zeros(ring, r, r)
    k = LambdaMatrix.blocks(ring, [[one, zero], [lam.matrix, one]])
    return FormsBundle(HermitianForm(theta_m), lam, psi, k)


def kernel_form_values(s, theta, elements: Sequence[tuple[Sequence, Sequence]]) -> LambdaMatrix:
    """Gram matrix of s + psi on supplied elements z = (b, x, 0) of pi_2 + F + F*.

    psi is the metabolic form on F + F* with theta on F. The elements are
    meant to satisfy ad s(b) = -phi(x); that relation is not checked here,
    and no kernel elements are generated.
    """
    s, theta = _as_matrix(s), _as_matrix(theta)
    ring, r = s.ring, theta.nrows
    total = orthogonal_sum(s, metabolic_double(theta))
    zs = [list(b) + list(x) + [ring.zero] * r for b, x in elements]
    for z in zs:
        if len(z) != total.nrows:
            raise FormError(f"element has {len(z) - r} coordinates, expected {s.nrows + r}")
    zs = [[ring.scalar(c) if isinstance(c, int) else c for c in z] for z in zs]
    return LambdaMatrix.build(ring, [[pairing(total, z, w) for w in zs] for z in zs], len(zs))


def kernel_form_vanishes(s, theta, elements: Sequence[tuple[Sequence, Sequence]]) -> bool:
    """True when s + psi is identically zero on the span of the supplied elements."""
    return kernel_form_values(s, theta, elements).is_zero()
