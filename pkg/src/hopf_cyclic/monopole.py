"""The quantum monopole idempotent over the equator Podleś sphere.

``e_q`` lives in ``S2_q (x) End(V)`` for the two-dimensional representation
``V`` of ``U_q(su_2)``.  The Hopf algebra acts on the tensor product by
``h.(a (x) u) = h1.a (x) h0 u S(h2)`` where ``h0 (x) h1 (x) h2`` is the
double coproduct.  The suite checks idempotency and invariance under the
generators term by term, keeping every intermediate normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .report import Report
from .rewrite import (
    GeneratorAction,
    NCPoly,
    Presentation,
    PresentedRep,
    SymbolicHopf,
    mat_str,
    podles_action,
    podles_sphere,
    q,
    rep2_uq,
    uq_su2,
)

HALF = Fraction(1, 2)

# summands of e_q as (coefficient, algebra word, enveloping-algebra word)
EQ_SUMMANDS: list[tuple[object, tuple[str, ...], tuple[str, ...]]] = [
    (HALF, (), ()),
    (HALF * q(-2), ("b",), ("F", "E")),
    (-HALF, ("b",), ("E", "F")),
    (HALF * q(1), ("a",), ("F",)),
    (HALF * q(-1), ("a*",), ("E",)),
]

# summands of h.e_q that vanish individually, keyed by double-coproduct leg and summand index
EXPECTED_VANISHING: dict[str, set[tuple[str, int]]] = {
    "F": {("F⊗K⊗K", 1), ("F⊗K⊗K", 3), ("Ki⊗F⊗K", 0), ("Ki⊗F⊗K", 4), ("Ki⊗Ki⊗F", 2), ("Ki⊗Ki⊗F", 3)},
    "E": {("E⊗K⊗K", 2), ("E⊗K⊗K", 4), ("Ki⊗E⊗K", 0), ("Ki⊗E⊗K", 3), ("Ki⊗Ki⊗E", 1), ("Ki⊗Ki⊗E", 4)},
    "K": set(),
}


@dataclass
class MonopoleSetup:
    U: Presentation
    hopf: SymbolicHopf
    A: Presentation
    action: GeneratorAction
    rep: PresentedRep


@lru_cache(maxsize=None)
def setup() -> MonopoleSetup:
    U, hopf = uq_su2()
    A = podles_sphere()
    return MonopoleSetup(U, hopf, A, podles_action(hopf, A), rep2_uq(U))


PolyMatrix = list  # 2x2 list of NCPoly


def eq_matrix(s: MonopoleSetup | None = None) -> PolyMatrix:
    s = s or setup()
    A = s.A
    b, a, st = A.gen("b"), A.gen("a"), A.gen("a*")
    return [
        [HALF * (1 + q(-2) * b), HALF * q(1) * a],
        [HALF * q(-1) * st, HALF * (1 - b)],
    ]


def from_summands(s: MonopoleSetup, terms) -> PolyMatrix:
    """``sum c * x (x) M`` as a matrix with algebra entries."""
    d = s.rep.dim
    out = [[s.A.zero() for _ in range(d)] for _ in range(d)]
    for c, x, M in terms:
        for i in range(d):
            for j in range(d):
                if M[i][j]:
                    out[i][j] = out[i][j] + (c * M[i][j]) * x
    return out


def poly_matmul(x: PolyMatrix, y: PolyMatrix) -> PolyMatrix:
    n = len(x)
    return [[sum((x[i][k] * y[k][j] for k in range(n)), x[0][0].p.zero()) for j in range(n)] for i in range(n)]


def poly_matrix_equal(x: PolyMatrix, y: PolyMatrix) -> bool:
    return all(x[i][j] == y[i][j] for i in range(len(x)) for j in range(len(x)))


def poly_matrix_str(x: PolyMatrix) -> list[list[str]]:
    return [[str(v) for v in row] for row in x]


def summands(s: MonopoleSetup | None = None):
    s = s or setup()
    return [(c, s.A.poly([(x, 1)]), s.U.poly([(u, 1)])) for c, x, u in EQ_SUMMANDS]


def act_on_eq(h: str, s: MonopoleSetup | None = None) -> tuple[PolyMatrix, list[dict]]:
    """``h.e_q`` together with the audit trail of all double-coproduct summands."""
    s = s or setup()
    U, hopf = s.U, s.hopf
    terms, audit = [], []
    for legs, c_leg in sorted(hopf.coproduct(U.mono(h), 2).items(), key=lambda kv: [U.key(l) for l in kv[0]]):
        h0, h1, h2 = (NCPoly(U, {leg: 1}) for leg in legs)
        leg_name = "⊗".join(U.word(l) for l in legs)
        for j, (c, x, u) in enumerate(summands(s)):
            acted = s.action.apply(legs[1], x)
            word = h0 * u * hopf.antipode(h2)
            M = s.rep.of(word)
            coef = c_leg * c
            vanishes = acted.is_zero() or all(not v for row in M for v in row)
            terms.append((coef, acted, M))
            audit.append(
                {
                    "coproduct_leg": leg_name,
                    "summand": j,
                    "coefficient": coef,
                    "acted": str(acted),
                    "matrix_word": str(word),
                    "matrix": mat_str(M),
                    "vanishes": vanishes,
                }
            )
    return from_summands(s, terms), audit


def monopole_suite() -> Report:
    s = setup()
    rep = Report("monopole")
    e = eq_matrix(s)
    decomposed = from_summands(s, [(c, x, s.rep.of(u)) for c, x, u in summands(s)])
    rep.data["e_q"] = poly_matrix_str(e)
    rep.data["decomposition_matches"] = poly_matrix_equal(decomposed, e)
    sq = poly_matmul(e, e)
    rep.data["e_q_squared"] = poly_matrix_str(sq)
    rep.record("idempotent", None if poly_matrix_equal(sq, e) else "e_q^2", poly_matrix_str(sq), poly_matrix_str(e))
    zero = [[s.A.zero()] * 2 for _ in range(2)]
    for h in ("K", "E", "F"):
        val, audit = act_on_eq(h, s)
        expected = e if s.hopf.counit(s.U.mono(h)) == 1 else zero
        rep.data[f"{h}.terms"] = audit
        rep.data[f"{h}.result"] = poly_matrix_str(val)
        flagged = {(t["coproduct_leg"], t["summand"]) for t in audit if t["vanishes"]}
        rep.data[f"{h}.expected_vanishing_hold"] = EXPECTED_VANISHING[h] <= flagged
        rep.record(f"invariance.{h}", None if poly_matrix_equal(val, expected) else h, poly_matrix_str(val), poly_matrix_str(expected))
    return rep


def bracket_in_rep(s: MonopoleSetup | None = None) -> dict[str, list[list[object]]]:
    """``FE - EF`` and ``(K^2 - K^-2)/(q - q^-1)`` evaluated in the two-dimensional representation."""
    s = s or setup()
    U, r = s.U, s.rep
    c = 1 / (q(1) - q(-1))
    bracket = r.of({U.mono("F", "E"): 1, U.mono("E", "F"): -1})
    cartan = r.of({U.mono("K", "K"): c, U.mono("Ki", "Ki"): -c})
    return {"FE-EF": bracket, "cartan": cartan}
