from __future__ import annotations

from hopf_cyclic.monopole import (
    EXPECTED_VANISHING,
    act_on_eq,
    bracket_in_rep,
    eq_matrix,
    from_summands,
    monopole_suite,
    poly_matmul,
    poly_matrix_equal,
    setup,
    summands,
)


def test_decomposition_reproduces_matrix():
    s = setup()
    parts = from_summands(s, [(c, x, s.rep.of(u)) for c, x, u in summands(s)])
    assert poly_matrix_equal(parts, eq_matrix(s))


def test_idempotent():
    e = eq_matrix()
    assert poly_matrix_equal(poly_matmul(e, e), e)


def test_invariance_and_audit_trail():
    s = setup()
    e = eq_matrix(s)
    val, audit = act_on_eq("K", s)
    assert poly_matrix_equal(val, e)
    for h in ("E", "F"):
        val, audit = act_on_eq(h, s)
        assert all(v.is_zero() for row in val for v in row)
        flagged = {(t["coproduct_leg"], t["summand"]) for t in audit if t["vanishes"]}
        assert EXPECTED_VANISHING[h] <= flagged
        assert len(audit) == 3 * 5


def test_suite():
    rep = monopole_suite()
    assert rep.ok
    assert sorted(c.id for c in rep.checks) == ["idempotent", "invariance.E", "invariance.F", "invariance.K"]


def test_bracket():
    br = bracket_in_rep()
    assert br["cartan"] == [[-1, 0], [0, 1]]
    assert br["FE-EF"] == [[1, 0], [0, -1]]
