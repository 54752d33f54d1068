from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_cyclic.actions import (
    ActionMap,
    CoactionMap,
    action_from_form,
    beta_iso,
    coaction_from_r,
    crossed_product,
    endo_conj_algebra,
    matrix_algebra_diagonal,
    matrix_algebra_nondiagonal,
    perturbed_coactions,
    regular_rep,
    t_iso,
    trivial_action,
    trivial_coaction,
    trivial_rep,
    twisted_product,
    verify_beta,
    verify_comodule_algebra,
    verify_coquasitriangular,
    verify_module_algebra,
    verify_quasitriangular,
    verify_t,
    verify_yd,
    yd_condition_compat,
    yd_condition_explicit,
    yd_tensor_h,
)
from hopf_cyclic.catalog import (
    H_ALGEBRAS,
    adjoint,
    h_algebra,
    kc2,
    kc2_bad_form,
    kc2_r_matrix,
    kc2_sign_form,
    kc2_unit_r_matrix,
    point_algebra,
    sign_line,
    sign_line_algebra,
    sweedler_h4,
    trivial_h_algebra,
)

G, X = 1, 2


def test_sign_line_is_module_algebra():
    HA = sign_line()
    assert verify_module_algebra(HA.hopf, HA.algebra, HA.action).ok


def test_broken_unit_law():
    H, A = kc2(), sign_line_algebra()
    act = ActionMap(2, 2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: -1}, (1, 1): {1: 1}})
    rep = verify_module_algebra(H, A, act)
    assert not rep.ok
    assert any("unit" in c.id for c in rep.failures())


def test_trivial_action_passes():
    for H in (kc2(), sweedler_h4()):
        A = sign_line_algebra()
        assert verify_module_algebra(H, A, trivial_action(H, A)).ok


@pytest.mark.parametrize("key", sorted(k for k in H_ALGEBRAS))
def test_catalog_h_algebras(key):
    HA = H_ALGEBRAS[key]()
    assert verify_module_algebra(HA.hopf, HA.algebra, HA.action).ok
    if HA.coaction is not None:
        assert verify_comodule_algebra(HA.hopf, HA.algebra, HA.coaction).ok
        assert verify_yd(HA).ok


def test_h4_self_yd_and_broken_coaction():
    HA = adjoint(sweedler_h4())
    assert verify_yd(HA).ok
    broken = HA.with_coaction(trivial_coaction(HA.hopf, HA.algebra))
    hit = yd_condition_compat(broken.hopf, broken.algebra, broken.action, broken.coaction)
    assert hit is not None
    assert (hit[0], hit[1]) == (X, G)
    assert not verify_yd(broken).ok


def test_missing_coaction_is_an_error():
    HA = trivial_h_algebra(sweedler_h4(), sign_line_algebra(), "no-coaction")
    assert HA.coaction is None
    with pytest.raises(ValueError):
        verify_yd(HA)


@pytest.mark.parametrize("key", [("kc2", "sign-line"), ("h4", "adjoint"), ("kc3", "adjoint"), ("kc2", "sign-line-r")])
def test_yd_forms_agree_on_perturbations(key):
    HA = h_algebra(*key)
    H, A = HA.hopf, HA.algebra
    verdicts = []
    for co in perturbed_coactions(HA, 50, seed=7):
        a = yd_condition_compat(H, A, HA.action, co) is None
        b = yd_condition_explicit(H, A, HA.action, co) is None
        assert a == b
        verdicts.append(a)
    assert len(verdicts) == 50


def test_yd_tensor_h():
    H = sweedler_h4()
    T = yd_tensor_h(trivial_h_algebra(H, point_algebra(), "k"))
    assert verify_yd(T).ok
    T2 = yd_tensor_h(sign_line())
    assert T2.algebra.dim == 4 and verify_yd(T2).ok
    one = T2.algebra.one()
    assert T2.act({G: 1}, one) == one


def test_crossed_product():
    HA = sign_line()
    C = crossed_product(HA)
    assert C.verify().ok
    # basis index a * dim(H) + g: y#g is 3, y#1 is 2
    assert C.mul({3: 1}, {2: 1}) == {1: -1}
    triv = crossed_product(trivial_h_algebra(kc2(), sign_line_algebra(), "t"))
    assert triv.mul({3: 1}, {2: 1}) == {1: 1}


def test_twisted_products():
    H4 = adjoint(sweedler_h4())
    T = twisted_product(H4, H4)
    assert T.algebra.dim == 16
    assert T.algebra.verify().ok
    assert verify_module_algebra(T.hopf, T.algebra, T.action).ok
    one = T.algebra.one()
    for i in range(16):
        assert T.algebra.mul(one, {i: 1}) == {i: 1} == T.algebra.mul({i: 1}, one)


def test_twisted_product_trivial_coaction_is_tensor_product():
    A, B = sign_line(), sign_line()
    T = twisted_product(A, B)
    for i in range(4):
        for j in range(4):
            a, b = divmod(i, 2)
            c, d = divmod(j, 2)
            prod = A.algebra.mul({a: 1}, {c: 1})
            prod2 = B.algebra.mul({b: 1}, {d: 1})
            expect = {x * 2 + y: e * f for x, e in prod.items() for y, f in prod2.items()}
            assert T.algebra.mul({i: 1}, {j: 1}) == expect


def test_twisted_product_requires_yd():
    HA = adjoint(sweedler_h4())
    broken = HA.with_coaction(trivial_coaction(HA.hopf, HA.algebra))
    with pytest.raises(ValueError):
        twisted_product(broken, HA)


def test_endo_conjugation():
    V = regular_rep(kc2())
    E = endo_conj_algebra(V)
    assert E.act({G: 1}, {0: 1}) == {3: 1}
    identity = E.algebra.one()
    assert E.act({G: 1}, identity) == identity
    T = endo_conj_algebra(trivial_rep(kc2()))
    assert T.act({G: 1}, {0: 1}) == {0: 1}


def test_matrix_algebras():
    HA = sign_line()
    V = regular_rep(kc2())
    for M in (matrix_algebra_nondiagonal(HA, V), matrix_algebra_diagonal(HA, V)):
        assert M.algebra.dim == 8
        assert M.algebra.verify().ok
        assert verify_module_algebra(M.hopf, M.algebra, M.action).ok
        for i in range(8):
            assert M.act({0: 1}, {i: 1}) == {i: 1}


def test_beta_isomorphisms():
    assert verify_beta(sign_line(), regular_rep(kc2())).ok
    H4 = adjoint(sweedler_h4())
    assert verify_beta(H4, trivial_rep(sweedler_h4())).ok
    fwd = beta_iso(sign_line(), regular_rep(kc2()), 1)
    for i in range(8):
        assert fwd({i: 1}) == {i: 1}


def test_quasitriangular_structures():
    H = kc2()
    assert verify_quasitriangular(H, kc2_unit_r_matrix()).ok
    R = kc2_r_matrix()
    assert verify_quasitriangular(H, R).ok
    assert R.r.mul(R.r, [H, H]).terms == {(0, 0): 1}
    co = coaction_from_r(sign_line(), R)
    assert co({1: 1}) == {(1, 1): 1}
    assert coaction_from_r(sign_line(), kc2_unit_r_matrix())({1: 1}) == {(1, 0): 1}
    assert verify_t(sign_line(), regular_rep(kc2()), R).ok


def test_t_requires_quasitriangular():
    from hopf_cyclic.actions import RMatrix
    from hopf_cyclic.hopf import TensorElem

    H = kc2()
    bad = TensorElem((2, 2), {(1, 0): 1})
    with pytest.raises(ValueError):
        t_iso(sign_line(), regular_rep(H), RMatrix(H, bad, bad))


def test_coquasitriangular_forms():
    H = kc2()
    assert verify_coquasitriangular(H, kc2_sign_form()).ok
    bad = verify_coquasitriangular(H, kc2_bad_form())
    assert not bad.ok
    assert any("convolution" in c.id for c in bad.failures())
    A = sign_line_algebra()
    co = CoactionMap(2, 2, {0: {(0, 0): 1}, 1: {(1, 1): 1}})
    act = action_from_form(H, A, co, kc2_sign_form())
    assert act({1: 1}, {1: 1}) == {1: -1}


def _rand_elem(draw_list, dim):
    return {i: c for i, c in enumerate(draw_list[:dim]) if c}


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4),
       st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
@settings(max_examples=100, deadline=None)
def test_module_law_on_random_elements(g, h, a, b):
    HA = adjoint(sweedler_h4())
    H, A = HA.hopf, HA.algebra
    g, h, a, b = (_rand_elem(v, 4) for v in (g, h, a, b))
    assert HA.act(H.mul(g, h), a) == HA.act(g, HA.act(h, a))
    lhs = HA.act(h, A.mul(a, b))
    rhs: dict = {}
    for (h0, h1), c in H.coproduct(h).terms.items():
        for k, v in A.mul(HA.act({h0: 1}, a), HA.act({h1: 1}, b)).items():
            rhs[k] = rhs.get(k, 0) + c * v
    assert lhs == {k: v for k, v in rhs.items() if v}
