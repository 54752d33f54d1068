"""Built-in, validated structures used by the verification suites and the CLI."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from .hopf import FinHopf, TensorElem, group_algebra, hopf_from_generated, trivial_hopf


@lru_cache(maxsize=None)
def k_hopf() -> FinHopf:
    return trivial_hopf()


@lru_cache(maxsize=None)
def kc2() -> FinHopf:
    return group_algebra(["1", "g"], lambda a, b: (a + b) % 2)


@lru_cache(maxsize=None)
def kc3() -> FinHopf:
    return group_algebra(["1", "g", "g2"], lambda a, b: (a + b) % 3)


_S3 = sorted(itertools.permutations(range(3)))


def _perm_label(p: tuple[int, ...]) -> str:
    if p == (0, 1, 2):
        return "e"
    return "p" + "".join(str(i + 1) for i in p)


@lru_cache(maxsize=None)
def ks3() -> FinHopf:
    index = {p: i for i, p in enumerate(_S3)}

    def mul(a: int, b: int) -> int:
        pa, pb = _S3[a], _S3[b]
        return index[tuple(pa[pb[i]] for i in range(3))]

    return group_algebra([_perm_label(p) for p in _S3], mul)


@lru_cache(maxsize=None)
def sweedler_h4() -> FinHopf:
    """Sweedler's four-dimensional Hopf algebra on the basis ``1, g, x, gx``."""
    # basis element g^a x^b has index a + 2b
    labels = ["1", "g", "x", "gx"]
    mult = {}
    for i, j in itertools.product(range(4), repeat=2):
        a, b = i % 2, i // 2
        c, d = j % 2, j // 2
        if b + d > 1:
            continue
        sign = -1 if (b and c) else 1
        mult[(i, j)] = {(a + c) % 2 + 2 * (b + d): sign}
    gen_coprod = {
        1: TensorElem((4, 4), {(1, 1): 1}),
        2: TensorElem((4, 4), {(2, 0): 1, (1, 2): 1}),
    }
    words = {0: (), 1: (1,), 2: (2,), 3: (1, 2)}
    antipode = {0: {0: 1}, 1: {1: 1}, 2: {3: -1}, 3: {2: 1}}
    antipode_inv = {0: {0: 1}, 1: {1: 1}, 2: {3: 1}, 3: {2: -1}}
    return hopf_from_generated(labels, mult, {0: 1}, gen_coprod, words, [1, 1, 0, 0], antipode, antipode_inv)


HOPF_ALGEBRAS: dict[str, Callable[[], FinHopf]] = {
    "k": k_hopf,
    "kc2": kc2,
    "kc3": kc3,
    "ks3": ks3,
    "h4": sweedler_h4,
}


# algebras and H-algebras ---------------------------------------------------------------------

from .actions import (  # noqa: E402
    ActionMap,
    HAlgebra,
    Representation,
    RMatrix,
    UniversalRForm,
    coaction_from_r,
    regular_rep,
    self_yd,
    trivial_action,
    trivial_coaction,
    trivial_rep,
)
from .hopf import FinAlgebra  # noqa: E402


def sign_line_algebra() -> FinAlgebra:
    """``k[y]/(y^2 - 1)`` on the basis ``1, y``."""
    return FinAlgebra(["1", "y"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}, {0: 1})


def point_algebra() -> FinAlgebra:
    return FinAlgebra(["1"], {(0, 0): {0: 1}}, {0: 1})


def sign_line() -> HAlgebra:
    """kC2 acting on ``k[y]/(y^2-1)`` by ``g.y = -y``, with trivial coaction."""
    H, A = kc2(), sign_line_algebra()
    act = ActionMap(2, 2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: 1}, (1, 1): {1: -1}})
    return HAlgebra(A, H, act, trivial_coaction(H, A), name="sign-line")


def trivial_h_algebra(H: FinHopf, A: FinAlgebra, name: str) -> HAlgebra:
    return HAlgebra(A, H, trivial_action(H, A), trivial_coaction(H, A) if H.is_cocommutative() else None, name=name)


def adjoint(H: FinHopf) -> HAlgebra:
    """H acting on itself by the adjoint action (with its self-YD coaction)."""
    yd = self_yd(H)
    return HAlgebra(yd.algebra, H, yd.action, yd.coaction, name="adjoint")


def kc2_r_matrix() -> RMatrix:
    half = Fraction(1, 2)
    r = TensorElem((2, 2), {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half})
    return RMatrix(kc2(), r, r)


def kc2_unit_r_matrix() -> RMatrix:
    r = TensorElem((2, 2), {(0, 0): 1})
    return RMatrix(kc2(), r, r)


def kc2_sign_form() -> UniversalRForm:
    m = [[1, 1], [1, -1]]
    return UniversalRForm(kc2(), m, m)


def kc2_bad_form() -> UniversalRForm:
    m = [[1, 1], [1, 2]]
    return UniversalRForm(kc2(), m, m)


def sign_line_r_coaction() -> HAlgebra:
    """The sign line with the coaction induced by the nontrivial R-matrix (``y -> y (x) g``)."""
    base = sign_line()
    return base.with_coaction(coaction_from_r(base, kc2_r_matrix()), name="sign-line-r")


H_ALGEBRAS: dict[tuple[str, str], Callable[[], HAlgebra]] = {
    ("kc2", "sign-line"): sign_line,
    ("kc2", "sign-line-r"): sign_line_r_coaction,
    ("kc2", "adjoint"): lambda: adjoint(kc2()),
    ("kc3", "adjoint"): lambda: adjoint(kc3()),
    ("ks3", "adjoint"): lambda: adjoint(ks3()),
    ("h4", "adjoint"): lambda: adjoint(sweedler_h4()),
    ("k", "point"): lambda: trivial_h_algebra(k_hopf(), point_algebra(), "point"),
    ("kc2", "point"): lambda: trivial_h_algebra(kc2(), point_algebra(), "point"),
    ("kc2", "trivial-sign-line"): lambda: trivial_h_algebra(kc2(), sign_line_algebra(), "trivial-sign-line"),
    ("kc3", "trivial-sign-line"): lambda: trivial_h_algebra(kc3(), sign_line_algebra(), "trivial-sign-line"),
    ("ks3", "trivial-sign-line"): lambda: trivial_h_algebra(ks3(), sign_line_algebra(), "trivial-sign-line"),
    ("h4", "trivial-sign-line"): lambda: trivial_h_algebra(sweedler_h4(), sign_line_algebra(), "trivial-sign-line"),
}


def h_algebra(hopf: str, algebra: str) -> HAlgebra:
    try:
        return H_ALGEBRAS[(hopf, algebra)]()
    except KeyError:
        raise KeyError(f"no catalog H-algebra {algebra!r} over {hopf!r}") from None


def h4_two_dim_rep() -> Representation:
    """``g -> diag(1, -1)``, ``x -> E21``."""
    g = [[1, 0], [0, -1]]
    x = [[0, 0], [1, 0]]
    gx = [[0, 0], [-1, 0]]
    return Representation(sweedler_h4(), [[[1, 0], [0, 1]], g, x, gx], name="h4-two-dim")


def h4_trivial_plus_sign() -> Representation:
    """Trivial line plus the line where ``g = -1`` and ``x = 0``."""
    H = sweedler_h4()
    sign = Representation(H, [[[1]], [[-1]], [[0]], [[0]]], name="sign")
    return trivial_rep(H).direct_sum(sign)


REPRESENTATIONS: dict[str, Callable[[], Representation]] = {
    "kc2-regular": lambda: regular_rep(kc2()),
    "kc2-trivial": lambda: trivial_rep(kc2()),
    "kc2-trivial2": lambda: trivial_rep(kc2(), 2),
    "h4-two-dim": h4_two_dim_rep,
    "h4-trivial": lambda: trivial_rep(sweedler_h4()),
    "h4-trivial-plus-sign": h4_trivial_plus_sign,
    "h4-regular": lambda: regular_rep(sweedler_h4()),
}


# invariant idempotents ------------------------------------------------------------------------

from fractions import Fraction as _Fr  # noqa: E402

from .actions import matrix_algebra_nondiagonal  # noqa: E402
from .ktheory import IdempotentRegistry, MatrixElem, is_idempotent, is_invariant  # noqa: E402
from .linalg import add_into  # noqa: E402


@lru_cache(maxsize=None)
def sign_line_matrices():
    """Sign line tensored with the endomorphisms of the regular kC2 module (non-diagonal action)."""
    return matrix_algebra_nondiagonal(sign_line(), regular_rep(kc2()))


@lru_cache(maxsize=None)
def point_matrices():
    return matrix_algebra_nondiagonal(h_algebra("kc2", "point"), regular_rep(kc2()))


def sign_line_projection() -> MatrixElem:
    """``(1 (x) I + y (x) diag(1, -1)) / 2``."""
    M = sign_line_matrices()
    half = _Fr(1, 2)
    return MatrixElem(M, add_into(M.elem({0: half}, [[1, 0], [0, 1]]), M.elem({1: half}, [[1, 0], [0, -1]])))


def sign_line_unit() -> MatrixElem:
    M = sign_line_matrices()
    return MatrixElem(M, M.algebra.one())


def sign_line_conjugator() -> tuple[MatrixElem, MatrixElem]:
    """Invariant invertible ``1 + y (x) [[0,1],[-1,0]]`` and its inverse."""
    M = sign_line_matrices()
    z = M.elem({1: 1}, [[0, 1], [-1, 0]])
    g = add_into(dict(z), M.algebra.one())
    g_inv = {k: v * _Fr(1, 2) for k, v in add_into(M.algebra.one(), z, -1).items()}
    return MatrixElem(M, g), MatrixElem(M, g_inv)


def point_averaging() -> MatrixElem:
    """``[[1,1],[1,1]] / 2`` in the trivial algebra tensored with End of the regular kC2 module."""
    M = point_matrices()
    half = _Fr(1, 2)
    return MatrixElem(M, M.elem({0: half}, [[1, 1], [1, 1]]))


IDEMPOTENTS: dict[str, Callable[[], MatrixElem]] = {
    "sign-line-projection": sign_line_projection,
    "sign-line-unit": sign_line_unit,
    "point-averaging": point_averaging,
}


def idempotent(name: str) -> MatrixElem:
    try:
        return IDEMPOTENTS[name]()
    except KeyError:
        raise KeyError(f"no catalog idempotent {name!r}") from None


def idempotent_registry() -> IdempotentRegistry:
    reg = IdempotentRegistry()
    for name, build in IDEMPOTENTS.items():
        reg.add(name, build())
    g, g_inv = sign_line_conjugator()
    e = reg.items["sign-line-projection"]
    reg.add("sign-line-projection-conjugate", g * e * g_inv)
    rep = reg.relate_similar("sign-line-projection", "sign-line-projection-conjugate", g, g_inv)
    if not rep.ok:
        raise VerificationError(rep)
    return reg


# the catalog ------------------------------------------------------------------------------------

from .actions import (  # noqa: E402
    verify_coquasitriangular,
    verify_module_algebra,
    verify_quasitriangular,
    verify_yd,
)
from .report import Report, VerificationError  # noqa: E402


@dataclass
class CatalogEntry:
    name: str
    kind: str
    build: Callable[[], Any]
    description: str
    verifier: Callable[[Any], Report]
    _payload: Any = None

    @property
    def payload(self) -> Any:
        if self._payload is None:
            self._payload = self.build()
        return self._payload

    def verify(self) -> Report:
        return self.verifier(self.payload)


def _verify_h_algebra(HA: HAlgebra) -> Report:
    if HA.coaction is not None and HA.hopf.dim > 0:
        return verify_yd(HA)
    return verify_module_algebra(HA.hopf, HA.algebra, HA.action)


def _verify_idempotent(e: MatrixElem) -> Report:
    rep = Report("invariant idempotent")
    rep.extend(is_invariant(e))
    rep.extend(is_idempotent(e))
    return rep


def _rewrite_entries() -> list[CatalogEntry]:
    from . import monopole, rewrite

    def uq_verify(pair) -> Report:
        p, hopf = pair
        rep = Report("uq-su2")
        rep.extend(rewrite.check_confluence(p, 6), "confluence.")
        rep.extend(hopf.verify(), "hopf.")
        return rep

    def rep2_verify(r) -> Report:
        rep = r.verify()
        b = monopole.bracket_in_rep()
        rep.record("cartan = diag(-1, 1)", None if b["cartan"] == [[-1, 0], [0, 1]] else "cartan", b["cartan"], [[-1, 0], [0, 1]])
        return rep

    return [
        CatalogEntry("uq-su2", "presentation", rewrite.uq_su2, "quantum enveloping algebra of su(2) with PBW rewriting", uq_verify),
        CatalogEntry("podles", "presentation", rewrite.podles_sphere, "equator quantum sphere on b < a < a*", lambda p: rewrite.check_confluence(p, 6)),
        CatalogEntry("podles-action", "generator-action", rewrite.podles_action, "module-algebra action of the enveloping algebra on the sphere", lambda a: a.verify()),
        CatalogEntry("rep2-uq", "presented-representation", rewrite.rep2_uq, "two-dimensional representation of the enveloping algebra", rep2_verify),
        CatalogEntry("monopole", "monopole-idempotent", monopole.eq_matrix, "quantum monopole projection over the equator sphere", lambda _: monopole.monopole_suite()),
    ]


def _build_catalog() -> list[CatalogEntry]:
    out: list[CatalogEntry] = []
    notes = {
        "k": "ground field as a Hopf algebra",
        "kc2": "group algebra of the cyclic group of order 2",
        "kc3": "group algebra of the cyclic group of order 3",
        "ks3": "group algebra of the symmetric group on three letters",
        "h4": "Sweedler's four-dimensional Hopf algebra",
    }
    for name, build in HOPF_ALGEBRAS.items():
        out.append(CatalogEntry(name, "hopf", build, notes[name], lambda H: H.verify_hopf_axioms()))
    for (hname, aname), build in H_ALGEBRAS.items():
        out.append(CatalogEntry(f"{hname}/{aname}", "h-algebra", build, f"{aname} over {hname}", _verify_h_algebra))
    out.append(CatalogEntry("kc2-r", "r-matrix", kc2_r_matrix, "nontrivial R-matrix of kC2", lambda R: verify_quasitriangular(R.hopf, R)))
    out.append(CatalogEntry("kc2-r-unit", "r-matrix", kc2_unit_r_matrix, "trivial R-matrix of kC2", lambda R: verify_quasitriangular(R.hopf, R)))
    out.append(CatalogEntry("kc2-sign-form", "r-form", kc2_sign_form, "universal R-form of kC2", lambda R: verify_coquasitriangular(R.hopf, R)))
    for name, build in REPRESENTATIONS.items():
        out.append(CatalogEntry(name, "representation", build, "finite-dimensional module", lambda V: V.verify()))
    idem_notes = {
        "sign-line-projection": "(1 + y diag(1,-1))/2 in the sign line tensor End(kC2)",
        "sign-line-unit": "unit of the sign line tensor End(kC2)",
        "point-averaging": "averaging projection [[1,1],[1,1]]/2 in End(kC2)",
    }
    for name, build in IDEMPOTENTS.items():
        out.append(CatalogEntry(name, "idempotent", build, idem_notes[name], _verify_idempotent))
    out.extend(_rewrite_entries())
    return out


_CATALOG: list[CatalogEntry] | None = None


def catalog(verify: bool = True) -> list[CatalogEntry]:
    """All built-in entries; with ``verify`` each payload must pass its verifier."""
    global _CATALOG
    if _CATALOG is None:
        entries = _build_catalog()
        if verify:
            for e in entries:
                rep = e.verify()
                if not rep.ok:
                    raise VerificationError(rep)
            _CATALOG = entries
        return entries
    return _CATALOG


def entry(name: str) -> CatalogEntry:
    for e in catalog(verify=False):
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry {name!r}")
