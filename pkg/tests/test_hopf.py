from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopf_cyclic.catalog import k_hopf, kc2, kc3, ks3, sweedler_h4
from hopf_cyclic.hopf import FinAlgebra, FinHopf, TensorElem, tensor_contract
from hopf_cyclic.report import VerificationError

CATALOG = [k_hopf, kc2, kc3, ks3, sweedler_h4]
G, X, GX = 1, 2, 3  # H4 basis 1, g, x, gx


@pytest.mark.parametrize("build", CATALOG, ids=lambda b: b.__name__)
def test_catalog_axioms(build):
    H = build()
    assert H.verify_hopf_axioms().ok


def test_products():
    assert kc2().mul({1: 1}, {1: 1}) == {0: 1}
    H = sweedler_h4()
    assert H.mul({X: 1}, {G: 1}) == {GX: -1}
    assert H.mul({0: 1}, {X: 1}) == {X: 1}


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        kc2().mul({5: 1}, {0: 1})


def test_coproducts():
    assert kc2().coproduct_iter({1: 1}, 2).terms == {(1, 1, 1): 1}
    assert sweedler_h4().coproduct({X: 1}).terms == {(X, 0): 1, (G, X): 1}
    with pytest.raises(ValueError):
        kc2().coproduct_iter({1: 1}, 0)


def test_antipode():
    assert kc2().antipode({1: 1}) == {1: 1}
    H = sweedler_h4()
    assert H.antipode({X: 1}) == {GX: -1}
    assert H.antipode(H.antipode({X: 1})) == {X: -1}
    assert H.antipode({0: 1}) == {0: 1}
    for i in range(4):
        assert H.antipode(H.antipode({i: 1}), -1) == {i: 1}


def _counit_leg(H, leg, t):
    return tensor_contract(t, leg, lambda i: {0: H.counit_table[i]}, 0)


@pytest.mark.parametrize("build", CATALOG, ids=lambda b: b.__name__)
def test_counit_contraction(build):
    H = build()
    for i in range(H.dim):
        for leg in (0, 1):
            assert _counit_leg(H, leg, H.coproduct({i: 1})).terms == {(i,): 1}


@pytest.mark.parametrize("build", [kc3, sweedler_h4], ids=lambda b: b.__name__)
def test_iterated_coproduct_is_association_independent(build):
    H = build()
    for i in range(H.dim):
        for n in range(2, 5):
            ref = H.coproduct_iter({i: 1}, n)
            # expand every leg of the (n-1)-fold coproduct in turn
            for leg in range(n):
                prev = H.coproduct_iter({i: 1}, n - 1)
                acc: dict = {}
                for key, c in prev.terms.items():
                    for (a, b), d in H.coprod_table[key[leg]]:
                        new = key[:leg] + (a, b) + key[leg + 1:]
                        acc[new] = acc.get(new, 0) + c * d
                assert TensorElem((H.dim,) * (n + 1), {k: v for k, v in acc.items() if v}) == ref


def test_cocommutativity():
    assert kc2().coproduct({1: 1}).flip() == kc2().coproduct({1: 1})
    assert ks3().is_cocommutative()
    H = sweedler_h4()
    assert not H.is_cocommutative()
    assert H.coproduct({X: 1}).flip() != H.coproduct({X: 1})


def test_tensor_contract_antipode():
    H = kc2()
    t = tensor_contract(tensor_contract(H.coproduct({1: 1}), 0, lambda i: H.antipode({i: 1})), 1, lambda i: H.antipode({i: 1}))
    assert t.terms == {(1, 1): 1}
    H4 = sweedler_h4()
    t = tensor_contract(H4.coproduct({X: 1}), 0, lambda i: H4.antipode({i: 1}))
    assert t.multiply_legs(H4) == {}
    with pytest.raises(IndexError):
        tensor_contract(t, 2, lambda i: {i: 1})


def test_tensor_invariants():
    with pytest.raises(ValueError):
        TensorElem((2, 2), {(0, 2): 1})
    with pytest.raises(ValueError):
        TensorElem((2, 2), {(0, 0): 0})


def test_identity_antipode_fails_with_witness():
    H = sweedler_h4()
    ident = {i: {i: 1} for i in range(4)}
    bad = FinHopf.unchecked(H.labels, {(i, j): dict(H.table[i][j]) for i in range(4) for j in range(4)}, H.unit,
                            {i: dict(H.coprod_table[i]) for i in range(4)}, H.counit_table, ident, ident)
    rep = bad.verify_hopf_axioms()
    assert not rep.ok
    assert any("antipode" in c.id and c.witness == ("x",) for c in rep.failures())
    with pytest.raises(VerificationError):
        FinHopf(H.labels, {(i, j): dict(H.table[i][j]) for i in range(4) for j in range(4)}, H.unit,
                {i: dict(H.coprod_table[i]) for i in range(4)}, H.counit_table, ident, ident)


def test_nonassociative_algebra_rejected():
    with pytest.raises(VerificationError):
        FinAlgebra(["1", "y"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1, 0: 1}}, {1: 1})


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_coproduct_is_multiplicative(xs, ys):
    H = sweedler_h4()
    x = {i: c for i, c in enumerate(xs) if c}
    y = {i: c for i, c in enumerate(ys) if c}
    lhs = H.coproduct(H.mul(x, y))
    rhs = H.coproduct(x).mul(H.coproduct(y), [H, H])
    assert lhs == rhs
    assert H.counit(H.mul(x, y)) == H.counit(x) * H.counit(y)
