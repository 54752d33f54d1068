from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_cyclic.actions import crossed_product
from hopf_cyclic.catalog import (
    h_algebra,
    k_hopf,
    kc2,
    point_algebra,
    sign_line,
    sign_line_algebra,
    trivial_h_algebra,
)
from hopf_cyclic.cyclic import (
    CrossedComparison,
    EquivariantComplex,
    ThetaTwisted,
    check_cocyclic_identities,
    check_mixed_complex,
    cohomology_dims,
    cyclic_dims,
    hochschild_dims,
    matrix_ring,
    plain_module,
    trace_map,
    verify_automorphism,
    verify_cocyclic,
    verify_cylindrical,
    verify_phi_psi,
    verify_theta_twisted,
    verify_trace_map,
)
from hopf_cyclic.ktheory import invariant_functionals
from hopf_cyclic.operators import power

THETA_SIGN = {0: {0: 1}, 1: {1: -1}}


def _random_cochain(M, n, coeffs):
    coords = list(M.coords(n))
    return {x: c for x, c in zip(coords, coeffs) if c}


def test_cochain_action():
    E = EquivariantComplex(sign_line())
    f = {(1, 0): 1, (1, 1): 3}
    assert E.cochain_action(f, 0, {0: 1}) == f
    assert E.cochain_action(f, 0, {1: 1}) == {(1, 0): -1, (1, 1): -3}
    T = EquivariantComplex(trivial_h_algebra(kc2(), sign_line_algebra(), "t"))
    f = {(0, 1, 1): 2, (1, 0, 0): -1}
    assert T.cochain_action(f, 1, {1: 1}) == f


def test_equivariance():
    E = EquivariantComplex(sign_line())
    assert E.is_equivariant({}, 1).ok
    for n in range(3):
        for v in E.equivariant_basis(n):
            assert E.is_equivariant(v, n).ok
    bad = E.is_equivariant({(1, 0): 1}, 0)
    assert not bad.ok and bad.failures()[0].witness["h"] == "g"


def test_equivariant_dimension_matches_nullspace_oracle():
    # sign line at n = 0: f(y)(h) must vanish since g.y = -y while the conjugation action is trivial
    E = EquivariantComplex(sign_line())
    basis = E.equivariant_basis(0)
    assert len(basis) == len(invariant_functionals(kc2()))
    assert all(x[0] == 0 for v in basis for x in v)


def test_index_errors():
    M = plain_module(sign_line_algebra())
    with pytest.raises(IndexError):
        M.face(2, 3)
    with pytest.raises(IndexError):
        M.face(0, 0)
    with pytest.raises(IndexError):
        M.degen(1, 2)
    with pytest.raises(IndexError):
        M.cyc(-1)


@pytest.mark.parametrize("key,n_max", [(("kc2", "sign-line"), 3), (("h4", "adjoint"), 2), (("kc3", "adjoint"), 2), (("kc2", "sign-line-r"), 2)])
def test_cocyclic_identities(key, n_max):
    rep = verify_cocyclic(h_algebra(*key), n_max)
    assert rep.ok, rep.failures()[:3]


def test_mutated_twist_fails_with_witness():
    rep = verify_cocyclic(h_algebra("h4", "adjoint"), 2, mutated_twist=True)
    assert not rep.ok
    assert any("T^" in c.id for c in rep.failures())
    assert all(c.witness is not None for c in rep.failures())


def test_cyclic_operator_on_trivial_action_fixes_cochains():
    E = EquivariantComplex(trivial_h_algebra(kc2(), point_algebra(), "point"))
    for v in E.equivariant_basis(0):
        assert E.cyc(0)(v) == v


@given(st.lists(st.integers(-3, 3), min_size=16, max_size=16))
@settings(max_examples=40, deadline=None)
def test_degeneracy_after_face_is_identity(coeffs):
    M = plain_module(sign_line_algebra())
    f = _random_cochain(M, 3, coeffs)
    assert (M.degen(3, 0) @ M.face(4, 0))(f) == f


def test_hochschild_b_degree_zero():
    B = crossed_product(sign_line())
    M = plain_module(B)
    for a in range(B.dim):
        f = {(a, 0): 1}
        bf = M.b(1)(f)
        for x0 in range(B.dim):
            for x1 in range(B.dim):
                expect = B.mul({x0: 1}, {x1: 1}).get(a, 0) - B.mul({x1: 1}, {x0: 1}).get(a, 0)
                assert bf.get((x0, x1, 0), 0) == expect


def test_mixed_complex_relations():
    E = EquivariantComplex(sign_line())
    assert check_mixed_complex(E, 3).ok


def test_standard_operators():
    B = crossed_product(sign_line())
    M = plain_module(B)
    vecs = [{x: 1} for x in M.coords(1)]
    assert all(power(M.cyc(1), 2)(v) == v for v in vecs)
    assert check_cocyclic_identities(M, 2).ok
    assert check_mixed_complex(M, 2).ok


def test_cohomology_point_algebra():
    M = EquivariantComplex(trivial_h_algebra(k_hopf(), point_algebra(), "k"))
    assert cyclic_dims(M, 1) == {0: 1, 1: 0}
    E = EquivariantComplex(h_algebra("kc2", "point"))
    rep = cohomology_dims(E, 2)
    assert rep.ok
    assert rep.data["HC"][0] == len(invariant_functionals(kc2()))


def test_morita_dimensions():
    HA = h_algebra("kc2", "point")
    E = EquivariantComplex(HA)
    EM = EquivariantComplex(matrix_ring(HA, 2))
    assert hochschild_dims(E, 1) == hochschild_dims(EM, 1)
    assert cyclic_dims(E, 1) == cyclic_dims(EM, 1)


def test_phi_trivial_hopf_is_reindexing():
    C = CrossedComparison(trivial_h_algebra(k_hopf(), sign_line_algebra(), "t"))
    for n in range(3):
        for v in C.E.equivariant_basis(n):
            assert C.phi(n)(v) == v


def test_phi_degree_zero_by_hand():
    HA = sign_line()
    C = CrossedComparison(HA)
    H = HA.hopf
    for v in C.E.equivariant_basis(0):
        got = C.phi(0)(v)
        # phi f (a # g) = f(S^-1(g).a)(g) for grouplike g
        expect: dict = {}
        for a in range(2):
            for g in range(2):
                acted = HA.act(H.antipode({g: 1}, -1), {a: 1})
                val = sum(c * v.get((b, g), 0) for b, c in acted.items())
                if val:
                    expect[(a * 2 + g, 0)] = val
        assert got == expect


@pytest.mark.parametrize("key", [("kc2", "sign-line"), ("h4", "adjoint")])
def test_phi_psi(key):
    rep = verify_phi_psi(h_algebra(*key), 2)
    assert rep.ok, rep.failures()[:3]


def test_cylindrical():
    assert verify_cylindrical(h_algebra("kc2", "point"), 0, 0).ok
    assert verify_cylindrical(h_algebra("h4", "adjoint"), 1, 1).ok
    bad = verify_cylindrical(sign_line(), 1, 1, mutate_vertical=True)
    assert not bad.ok
    assert any("id" in c.id for c in bad.failures())


def test_theta_twisted():
    A = sign_line_algebra()
    ident = ThetaTwisted(A, {0: {0: 1}, 1: {1: 1}}, 0)
    plain = plain_module(A)
    for n in range(3):
        for x in plain.coords(n):
            assert ident.cyc(n)({x: 1}) == plain.cyc(n)({x: 1})
    M = ThetaTwisted(A, THETA_SIGN, 1)
    # (t f)(a0, a1) = f(theta a1, a0)
    f = {(1, 0, 0): 1}
    tf = M.cyc(1)(f)
    assert tf == {(0, 1, 0): -1}
    for v in M.basis(1):
        assert power(M.cyc(1), 2)(v) == v
    assert verify_theta_twisted(A, THETA_SIGN, 1, 2).ok


def test_theta_must_be_automorphism():
    A = sign_line_algebra()
    assert not verify_automorphism(A, {0: {0: 1}, 1: {0: 1}}).ok
    with pytest.raises(ValueError):
        ThetaTwisted(A, {0: {0: 1}, 1: {1: 2}}, 1)


def test_matrix_trace_map():
    HA = sign_line()
    assert verify_trace_map(HA, 2, 2).ok
    E = EquivariantComplex(HA)
    one = EquivariantComplex(matrix_ring(HA, 1))
    for n in range(2):
        op = trace_map(E, one, 1, n)
        for v in E.equivariant_basis(n):
            assert op(v) == v
    EM = EquivariantComplex(matrix_ring(HA, 2))
    tr0 = trace_map(E, EM, 2, 0)
    for v in E.equivariant_basis(0):
        w = tr0(v)
        for (a, g), c in v.items():
            assert w[(a * 4 + 0, g)] == c  # a (x) E11
