from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from hopf_cyclic.actions import matrix_algebra_diagonal, regular_rep
from hopf_cyclic.catalog import (
    k_hopf,
    kc2,
    ks3,
    point_averaging,
    point_matrices,
    sign_line,
    sign_line_conjugator,
    sign_line_matrices,
    sign_line_projection,
    sweedler_h4,
    idempotent_registry,
)
from hopf_cyclic.ktheory import (
    InnerHomotopies,
    MatrixElem,
    TraceMap,
    _periodic_cocycles,
    cyclic_cocycles,
    direct_sum,
    direct_sum_algebra,
    embed_block,
    in_invariant_functionals,
    invariant_functionals,
    invariant_functionals_conjugation,
    is_idempotent,
    is_invariant,
    one,
    pair_even,
    pair_periodic,
    verify_homotopies,
    verify_invariant_functionals,
    verify_mvn,
    verify_similarity,
    zero,
)
from hopf_cyclic.linalg import same_span
from hopf_cyclic.cyclic import EquivariantComplex

HALF = Fraction(1, 2)


def psi_oracle(M, f, elems):
    """``sum f(a_0..a_n)(g1) tr(u_0 ... u_n r(g0))`` expanded term by term."""
    H, V = M.hopf, M.rep
    out: dict = {}
    for picks in itertools.product(*(list(x.items()) for x in elems)):
        c = 1
        parts = []
        for idx, coef in picks:
            c *= coef
            parts.append(M.split(idx))
        a = tuple(p[0] for p in parts)
        # matrix units chain E_{k0 l0} ... E_{kn ln}
        if any(parts[j][2] != parts[j + 1][1] for j in range(len(parts) - 1)):
            continue
        k0, ln = parts[0][1], parts[-1][2]
        for g in range(H.dim):
            for (g0, g1), d in H.coproduct({g: 1}).terms.items():
                val = f.get(a + (g1,), 0) * V.matrices[g0][ln][k0]
                if val:
                    out[g] = out.get(g, 0) + c * d * val
    return {g: v for g, v in out.items() if v != 0}


def test_invariant_functionals():
    assert len(invariant_functionals(k_hopf())) == 1
    assert len(invariant_functionals(kc2())) == 2
    assert len(invariant_functionals(ks3())) == 3
    for H in (kc2(), ks3(), sweedler_h4()):
        assert same_span(invariant_functionals(H), invariant_functionals_conjugation(H))
        assert verify_invariant_functionals(H).ok


def test_invariance_and_idempotency():
    M = sign_line_matrices()
    assert is_invariant(one(M)).ok
    y_u = MatrixElem(M, M.elem({1: 1}, [[1, 0], [0, -1]]))
    assert is_invariant(y_u).ok
    for x in (zero(M), one(M), sign_line_projection()):
        assert is_idempotent(x).ok
    assert not is_idempotent(y_u).ok
    y_e11 = MatrixElem(M, M.elem({1: 1}, [[1, 0], [0, 0]]))
    bad = is_invariant(y_e11)
    assert not bad.ok and bad.failures()[0].witness == {"h": "g"}


def test_direct_sums():
    e = sign_line_projection()
    s = direct_sum(e, zero(e.M))
    assert is_invariant(s).ok and is_idempotent(s).ok
    assert s.M.d == 4
    u = direct_sum(one(e.M), one(e.M))
    assert u == one(u.M)
    D = matrix_algebra_diagonal(sign_line(), regular_rep(kc2()))
    with pytest.raises(ValueError):
        direct_sum(e, MatrixElem(D, D.algebra.one()))


def test_murray_von_neumann():
    e = sign_line_projection()
    assert verify_mvn(e, e, e, e).ok
    S = direct_sum_algebra(e.M, e.M)
    top = direct_sum(e, zero(e.M), S)
    bottom = direct_sum(zero(e.M), e, S)
    g1 = embed_block(e, S, 2, 0)
    g2 = embed_block(e, S, 0, 2)
    assert verify_mvn(top, bottom, g1, g2).ok


def test_similarity():
    e = sign_line_projection()
    g, g_inv = sign_line_conjugator()
    assert verify_similarity(e, g * e * g_inv, g, g_inv).ok
    M = e.M
    z = MatrixElem(M, M.elem({1: 1}, [[0, 1], [0, 0]]))
    h, h_inv = one(M) + z, one(M) - z
    rep = verify_similarity(e, h * e * h_inv, h, h_inv)
    assert not rep.ok
    assert rep.failures()[0].witness == {"h": "g"}


def test_registry():
    reg = idempotent_registry()
    assert ("sign-line-projection", "sign-line-projection-conjugate", "similar") in reg.relations
    with pytest.raises(ValueError):
        reg.add("not-idempotent", MatrixElem(sign_line_matrices(), {1: 1}))


def test_trace_evaluation_matches_hand_expansion():
    M = sign_line_matrices()
    P = TraceMap(M)
    E = P.E
    for f in E.equivariant_basis(1):
        for x0, x1 in itertools.product(range(M.algebra.dim), repeat=2):
            assert P.evaluate(f, [{x0: 1}, {x1: 1}]) == psi_oracle(M, f, [{x0: 1}, {x1: 1}])


def test_trivial_coaction_degree_zero():
    M = sign_line_matrices()
    P = TraceMap(M, simplified=False)
    for f in P.E.equivariant_basis(0):
        for x in range(M.algebra.dim):
            assert P.evaluate(f, [{x: 1}]) == psi_oracle(M, f, [{x: 1}])


def test_pair_even_degree_zero():
    e = sign_line_projection()
    E = EquivariantComplex(sign_line())
    cocycles = cyclic_cocycles(E, 0)
    assert cocycles
    for f in cocycles:
        val = pair_even(e, f, 0)
        assert val == psi_oracle(e.M, f, [e.vec])
        assert in_invariant_functionals(kc2(), val)
    assert pair_even(zero(e.M), cocycles[0], 0) == {}
    assert pair_even(e, {}, 0) == {}


def test_pair_even_point_averaging():
    e = point_averaging()
    E = EquivariantComplex(e.M.base)
    for n in (0, 2):
        for f in cyclic_cocycles(E, n):
            val = pair_even(e, f, n)
            assert val == psi_oracle(e.M, f, [e.vec] * (n + 1))


def test_pair_even_errors():
    e = sign_line_projection()
    E = EquivariantComplex(sign_line())
    non_cyclic = next(v for v in E.equivariant_basis(2) if E.cyc(2)(v) != v)
    with pytest.raises(ValueError):
        pair_even(e, non_cyclic, 2)
    M = e.M
    not_inv = MatrixElem(M, M.elem({0: 1}, [[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        pair_even(not_inv, cyclic_cocycles(E, 0)[0], 0)
    with pytest.raises(ValueError):
        pair_even(e, {}, 1)


def test_pair_periodic():
    e = sign_line_projection()
    E = EquivariantComplex(sign_line())
    f0 = cyclic_cocycles(E, 0)[0]
    assert pair_periodic(e, [f0, {}]) == pair_even(e, f0, 0)
    unit = one(e.M)
    assert pair_periodic(unit, [f0]) == psi_oracle(e.M, f0, [unit.vec])
    shifted = (e - unit.scale(HALF)).vec
    for fs in _periodic_cocycles(E):
        val = pair_periodic(e, fs)
        expect = dict(psi_oracle(e.M, fs[0], [e.vec]))
        for g, v in psi_oracle(e.M, fs[1], [shifted, e.vec, e.vec]).items():
            expect[g] = expect.get(g, 0) - 2 * v
        assert val == {g: v for g, v in expect.items() if v != 0}
    with pytest.raises(ValueError):
        pair_periodic(e, [E.equivariant_basis(0)[0], E.equivariant_basis(2)[0]])


def test_homotopy_operators():
    M = point_matrices()
    K1 = InnerHomotopies(M, M.algebra.one())
    for n in range(2):
        for v in K1.E.equivariant_basis(n):
            assert K1.alpha(n)(v) == v
            assert K1.delta(n)(v) == {}
    b = M.elem({0: 1}, [[2, 1], [1, 2]])
    K = InnerHomotopies(M, b)
    A = M.algebra
    for f in K.E.equivariant_basis(0):
        got = K.delta(0)(f)
        for x in range(A.dim):
            comm = A.mul(b, {x: 1})
            for k, c in A.mul({x: 1}, b).items():
                comm[k] = comm.get(k, 0) - c
            for g in range(M.hopf.dim):
                expect = sum(c * f.get((k, g), 0) for k, c in comm.items())
                assert got.get((x, g), 0) == expect
    with pytest.raises(ValueError):
        InnerHomotopies(M, M.elem({0: 1}, [[1, 0], [0, 2]]))
    with pytest.raises(IndexError):
        K.theta(1, 2)


def test_homotopies_sign_line_low_degree():
    g, _ = sign_line_conjugator()
    rep = verify_homotopies(g.M, dict(g.vec), 1)
    assert rep.ok, [c.id for c in rep.failures()]
    assert len(rep.checks) > 10
