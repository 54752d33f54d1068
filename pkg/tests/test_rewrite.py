from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_cyclic.rewrite import (
    ActionError,
    GeneratorAction,
    NCPoly,
    Presentation,
    RewriteError,
    check_confluence,
    podles_action,
    podles_sphere,
    q,
    rep2_uq,
    toy_presentation,
    uq_su2,
)

U, HOPF = uq_su2()
A = podles_sphere()
ACTION = podles_action(HOPF, A)

words = lambda p, n: st.lists(st.integers(0, len(p.generators) - 1), max_size=n).map(tuple)


def nf(p, *names):
    return p.normal_form({p.mono(*names): 1})


def test_uq_rules():
    E, F, K, Ki = (U.gen(x) for x in ("E", "F", "K", "Ki"))
    assert nf(U, "K", "Ki") == U.one() == nf(U, "Ki", "K")
    assert nf(U, "K", "E") == q(1) * E * K
    assert nf(U, "Ki", "F") == q(1) * F * Ki
    cartan = (K * K - Ki * Ki) * (1 / (q(1) - q(-1)))
    assert nf(U, "E", "F") - nf(U, "F", "E") == cartan


def test_podles_rules():
    a, b = A.gen("a"), A.gen("b")
    assert nf(A, "a", "a*") == 1 - q(-4) * b * b
    assert nf(A, "a*", "a") == 1 - b * b
    assert nf(A, "a", "b") == q(-2) * b * a
    assert nf(A, "a", "b", "a*") == q(-2) * b - q(-6) * b * b * b
    assert str(nf(A, "a", "b", "a*")) == "(-s^-12)*b^3 + (s^-4)*b"


def test_rules_must_decrease():
    with pytest.raises(ValueError):
        Presentation("bad", ["x", "y"], {(0,): {(0, 0): 1}})
    with pytest.raises(ValueError):
        Presentation("bad", ["x"], {(): {(0,): 1}})


def test_step_budget():
    p = Presentation("uq-small", U.generators, U.rules, U.weights, budget=3)
    with pytest.raises(RewriteError) as err:
        p.normal_form({p.mono("F", "F", "E", "E", "K", "E"): 1})
    assert err.value.trace


@pytest.mark.parametrize("p", [U, A], ids=["uq", "podles"])
def test_confluence(p):
    rep = check_confluence(p, 6)
    assert rep.ok
    assert rep.data["ambiguities"] > 0


def test_toy_is_not_confluent():
    rep = check_confluence(toy_presentation(), 3)
    assert not rep.ok
    assert "x y x" in str(rep.failures()[0].witness) or "xyx" in str(rep.failures()[0].id)
    with pytest.raises(ValueError):
        check_confluence(U, 1)


@pytest.mark.parametrize("p", [U, A], ids=["uq", "podles"])
def test_normal_form_is_multiplicative(p):
    rng = random.Random(11)
    n = len(p.generators)
    for _ in range(200):
        x = tuple(rng.randrange(n) for _ in range(rng.randint(0, 4)))
        y = tuple(rng.randrange(n) for _ in range(rng.randint(0, 4)))
        assert p.normal_form({x: 1}) * p.normal_form({y: 1}) == p.normal_form({x + y: 1})


@given(words(U, 4))
@settings(max_examples=60, deadline=None)
def test_normal_form_idempotent(w):
    f = U.normal_form({w: 1})
    assert U.normal_form(f) == f
    assert all(U.is_normal(m) for m in f.terms)


def test_symbolic_hopf_axioms():
    assert HOPF.verify().ok


def test_action_well_defined():
    rep = ACTION.verify()
    assert rep.ok
    assert any(c.id.startswith("annihilates") for c in rep.checks)


@given(words(U, 2), words(U, 1), words(A, 3), words(A, 3))
@settings(max_examples=100, deadline=None)
def test_module_algebra_law(h, g, x, y):
    # h.(xy) = (h0.x)(h1.y) and (hg).x = h.(g.x)
    lhs = ACTION.apply(h, A.normal_form({x + y: 1}))
    rhs = A.zero()
    for (l0, l1), c in HOPF.coproduct(h).items():
        rhs = rhs + c * (ACTION.apply(l0, x) * ACTION.apply(l1, y))
    assert lhs == rhs
    hg = U.normal_form({h + g: 1})
    left = A.zero()
    for m, c in hg.terms.items():
        left = left + c * ACTION.apply(m, x)
    right = A.zero()
    for m, c in ACTION.apply(g, x).terms.items():
        right = right + c * ACTION.apply(h, m)
    assert left == right


def test_unit_is_scaled_by_counit():
    for h in ("K", "E", "F", "Ki"):
        assert ACTION.apply(U.mono(h), ()) == HOPF.counit(U.mono(h)) * A.one()


def test_missing_action_entry():
    table = {("K", "a"): A.gen("a")}
    act = GeneratorAction(HOPF, A, table)
    with pytest.raises(ActionError):
        act.apply(U.mono("E"), A.mono("a"))


def test_representation_relations():
    r = rep2_uq(U)
    assert r.verify().ok
    E, F = r.of_mono(U.mono("E")), r.of_mono(U.mono("F"))
    assert E == [[0, 0], [1, 0]] and F == [[0, 1], [0, 0]]
    K = r.of_mono(U.mono("K"))
    assert K[0][0] == q(Fraction(-1, 2))


def test_json_round_trip():
    for p in (U, A, toy_presentation()):
        back = Presentation.from_json(p.to_json())
        assert back.generators == p.generators
        assert back.rules == p.rules
    bad = U.to_json()
    bad["rules"][0]["lhs"] = [9]
    with pytest.raises(ValueError):
        Presentation.from_json(bad)


def test_poly_arithmetic():
    x = NCPoly(A, {A.mono("b"): 2})
    assert (x - x).is_zero()
    assert str(A.zero()) == "0"
    assert (x * 0).is_zero()
