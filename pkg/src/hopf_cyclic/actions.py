"""Module-algebra and comodule-algebra structures over a finite Hopf algebra.

Covers Yetter-Drinfeld verification in both equivalent forms, crossed and
twisted products, the two H-algebra structures on ``A (x) End(V)`` and the
isomorphisms between them, and (co)quasitriangular structures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .hopf import FinAlgebra, FinHopf, TensorElem
from .linalg import Vec, add_into, clean, identity, mat_mul, nullspace, scale
from .report import Report, VerificationError
from .scalars import Scalar


def _terms(v: Mapping) -> tuple:
    return tuple(sorted((k, clean(c)) for k, c in v.items() if c != 0))


class ActionMap:
    """Structure constants of a linear map ``H (x) A -> A``."""

    def __init__(self, hdim: int, adim: int, table: Mapping[tuple[int, int], Mapping[int, Scalar]]):
        self.hdim, self.adim = hdim, adim
        self.table = [[() for _ in range(adim)] for _ in range(hdim)]
        for (h, a), v in table.items():
            self.table[h][a] = _terms(v)

    @classmethod
    def from_function(cls, H: FinAlgebra, A: FinAlgebra, f: Callable[[int, int], Mapping[int, Scalar]]) -> ActionMap:
        return cls(H.dim, A.dim, {(h, a): f(h, a) for h in range(H.dim) for a in range(A.dim)})

    def basis(self, h: int, a: int) -> tuple:
        return self.table[h][a]

    def __call__(self, h: Mapping, x: Mapping) -> Vec:
        out: Vec = {}
        for i, c in h.items():
            row = self.table[i]
            for a, d in x.items():
                cd = c * d
                for b, e in row[a]:
                    add_into(out, {b: e}, cd)
        return out

    def entries(self) -> list:
        return [(h, a, b, c) for h in range(self.hdim) for a in range(self.adim) for b, c in self.table[h][a]]


class CoactionMap:
    """Structure constants of ``rho: A -> A (x) H`` keyed by ``(a', h)``."""

    def __init__(self, adim: int, hdim: int, table: Mapping[int, Mapping[tuple[int, int], Scalar]]):
        self.adim, self.hdim = adim, hdim
        self.table = [tuple(sorted((k, clean(c)) for k, c in table.get(a, {}).items() if c != 0)) for a in range(adim)]

    def basis(self, a: int) -> tuple:
        return self.table[a]

    def __call__(self, x: Mapping) -> dict:
        out: dict = {}
        for a, c in x.items():
            for key, d in self.table[a]:
                add_into(out, {key: d}, c)
        return out

    def entries(self) -> list:
        return [(a, b, h, c) for a in range(self.adim) for (b, h), c in self.table[a]]


@dataclass
class HAlgebra:
    """An algebra with an H-action and, optionally, a right H^op-coaction."""

    algebra: FinAlgebra
    hopf: FinHopf
    action: ActionMap
    coaction: CoactionMap | None = None
    name: str = ""

    def act(self, h: Mapping, x: Mapping) -> Vec:
        return self.action(h, x)

    def coact(self, x: Mapping) -> dict:
        if self.coaction is None:
            raise ValueError(f"{self.name or 'algebra'} has no coaction")
        return self.coaction(x)

    def with_coaction(self, coaction: CoactionMap, name: str | None = None) -> HAlgebra:
        return HAlgebra(self.algebra, self.hopf, self.action, coaction, name or self.name)

    def is_invariant(self, x: Mapping) -> bool:
        H = self.hopf
        return all(self.act({h: 1}, x) == scale(x, H.counit_table[h]) for h in range(H.dim))


# module and comodule algebra laws ------------------------------------------------------------


def verify_module_algebra(H: FinHopf, A: FinAlgebra, act: ActionMap) -> Report:
    rep = Report("module algebra")
    lab_h, lab_a = H.labels, A.labels
    nh, na = H.dim, A.dim

    def run(id_, gen):
        for wit, lhs, rhs in gen:
            if lhs != rhs:
                rep.failed(id_, witness=wit, lhs=A.show(lhs), rhs=A.show(rhs))
                return
        rep.passed(id_)

    run("module unit", (((lab_a[a],), act(H.one(), {a: 1}), {a: 1}) for a in range(na)))
    run(
        "module associativity",
        (
            ((lab_h[g], lab_h[h], lab_a[a]), act(H.mul({g: 1}, {h: 1}), {a: 1}), act({g: 1}, act({h: 1}, {a: 1})))
            for g in range(nh)
            for h in range(nh)
            for a in range(na)
        ),
    )

    def product_law():
        for h in range(nh):
            d = H.delta(h)
            for a in range(na):
                for b in range(na):
                    lhs = act({h: 1}, A.mul({a: 1}, {b: 1}))
                    rhs: Vec = {}
                    for (h0, h1), c in d:
                        add_into(rhs, A.mul(act({h0: 1}, {a: 1}), act({h1: 1}, {b: 1})), c)
                    yield (lab_h[h], lab_a[a], lab_a[b]), lhs, rhs

    run("module-algebra product", product_law())
    run("module-algebra unit", (((lab_h[h],), act({h: 1}, A.one()), scale(A.one(), H.counit_table[h])) for h in range(nh)))
    return rep


def verify_comodule_algebra(H: FinHopf, A: FinAlgebra, co: CoactionMap) -> Report:
    rep = Report("comodule algebra")
    lab_a = A.labels
    na = A.dim

    def run(id_, gen):
        for wit, lhs, rhs in gen:
            if lhs != rhs:
                rep.failed(id_, witness=wit, lhs=lhs, rhs=rhs)
                return
        rep.passed(id_)

    def counit():
        for a in range(na):
            out: Vec = {}
            for (b, h), c in co.basis(a):
                add_into(out, {b: c * H.counit_table[h]})
            yield (lab_a[a],), out, {a: 1}

    def coassoc():
        for a in range(na):
            lhs: dict = {}
            rhs: dict = {}
            for (b, h), c in co.basis(a):
                for (b2, h2), d in co.basis(b):
                    add_into(lhs, {(b2, h2, h): c * d})
                for (h0, h1), d in H.delta(h):
                    add_into(rhs, {(b, h0, h1): c * d})
            yield (lab_a[a],), lhs, rhs

    def reversed_mult():
        for a in range(na):
            for b in range(na):
                lhs = co(A.mul({a: 1}, {b: 1}))
                rhs: dict = {}
                for (a0, a1), c in co.basis(a):
                    for (b0, b1), d in co.basis(b):
                        left = A.mul({a0: 1}, {b0: 1})
                        right = H.mul({b1: 1}, {a1: 1})
                        for x, e in left.items():
                            for y, f in right.items():
                                add_into(rhs, {(x, y): c * d * e * f})
                yield (lab_a[a], lab_a[b]), lhs, rhs

    def unit():
        one_one: dict = {}
        for x, c in A.unit.items():
            for y, d in H.unit.items():
                add_into(one_one, {(x, y): c * d})
        yield ("1",), co(A.one()), one_one

    run("coaction counit", counit())
    run("coaction coassociativity", coassoc())
    run("coaction reversed multiplicativity", reversed_mult())
    run("coaction unit", unit())
    return rep


def yd_condition_compat(H: FinHopf, A: FinAlgebra, act: ActionMap, co: CoactionMap):
    """First ``(h, a, lhs, rhs)`` violating the compatibility condition, or None.

    Condition: ``(h1.a)<0> (x) (h1.a)<1> h0 = h0.a<0> (x) h1 a<1>``.
    """
    for h in range(H.dim):
        d = H.delta(h)
        for a in range(A.dim):
            lhs: dict = {}
            rhs: dict = {}
            for (h0, h1), c in d:
                for (x0, x1), e in co(act({h1: 1}, {a: 1})).items():
                    for y, f in H.mul({x1: 1}, {h0: 1}).items():
                        add_into(lhs, {(x0, y): c * e * f})
                for (a0, a1), e in co.basis(a):
                    left = act({h0: 1}, {a0: 1})
                    right = H.mul({h1: 1}, {a1: 1})
                    for x, f in left.items():
                        for y, g in right.items():
                            add_into(rhs, {(x, y): c * e * f * g})
            if lhs != rhs:
                return h, a, lhs, rhs
    return None


def yd_condition_explicit(H: FinHopf, A: FinAlgebra, act: ActionMap, co: CoactionMap):
    """First violation of ``rho(h.a) = h1.a<0> (x) h2 a<1> S^-1(h0)``, or None."""
    for h in range(H.dim):
        d2 = H.delta(h, 2)
        for a in range(A.dim):
            lhs = co(act({h: 1}, {a: 1}))
            rhs: dict = {}
            for (h0, h1, h2), c in d2:
                sinv = H.antipode({h0: 1}, -1)
                for (a0, a1), e in co.basis(a):
                    left = act({h1: 1}, {a0: 1})
                    right = H.mul(H.mul({h2: 1}, {a1: 1}), sinv)
                    for x, f in left.items():
                        for y, g in right.items():
                            add_into(rhs, {(x, y): c * e * f * g})
            if lhs != rhs:
                return h, a, lhs, rhs
    return None


def verify_yd(HA: HAlgebra) -> Report:
    if HA.coaction is None:
        raise ValueError("verify_yd needs a coaction")
    H, A = HA.hopf, HA.algebra
    rep = Report("yetter-drinfeld")
    rep.extend(verify_module_algebra(H, A, HA.action))
    rep.extend(verify_comodule_algebra(H, A, HA.coaction))
    w_compat = yd_condition_compat(H, A, HA.action, HA.coaction)
    w_explicit = yd_condition_explicit(H, A, HA.action, HA.coaction)
    for id_, w in (("yd compatibility", w_compat), ("yd coaction form", w_explicit)):
        if w is None:
            rep.passed(id_)
        else:
            h, a, lhs, rhs = w
            rep.failed(id_, witness=(H.labels[h], A.labels[a]), lhs=lhs, rhs=rhs)
    if (w_compat is None) == (w_explicit is None):
        rep.passed("yd forms agree")
    else:
        rep.failed("yd forms agree", lhs=w_compat is None, rhs=w_explicit is None)
    return rep


def is_yd(HA: HAlgebra) -> bool:
    return HA.coaction is not None and verify_yd(HA).ok


def yd_coaction_space(H: FinHopf, A: FinAlgebra, act: ActionMap) -> list[CoactionMap]:
    """Basis of all linear maps ``A -> A (x) H`` satisfying the compatibility condition.

    The condition is linear in the coaction, so this is an exact nullspace.
    Unknown ``(a, a', h)`` is the coefficient of ``a' (x) h`` in ``rho(a)``.
    """
    variables = [(a, b, h) for a in range(A.dim) for b in range(A.dim) for h in range(H.dim)]
    eqs: dict = {}
    for h in range(H.dim):
        for (h0, h1), c in H.delta(h):
            for a in range(A.dim):
                # lhs: sum over rho(h1.a)
                for x, e in act({h1: 1}, {a: 1}).items():
                    for b in range(A.dim):
                        for k in range(H.dim):
                            for y, f in H.mul({k: 1}, {h0: 1}).items():
                                row = eqs.setdefault((h, a, b, y), {})
                                add_into(row, {(x, b, k): c * e * f})
                # rhs: h0.a' (x) h1 a''
                for b in range(A.dim):
                    for k in range(H.dim):
                        for x, e in act({h0: 1}, {b: 1}).items():
                            for y, f in H.mul({h1: 1}, {k: 1}).items():
                                row = eqs.setdefault((h, a, x, y), {})
                                add_into(row, {(a, b, k): -c * e * f})
    basis = nullspace(eqs.values(), variables)
    out = []
    for vec in basis:
        table: dict = {}
        for (a, b, h), c in vec.items():
            table.setdefault(a, {})[(b, h)] = c
        out.append(CoactionMap(A.dim, H.dim, table))
    return out


def perturbed_coactions(HA: HAlgebra, count: int, seed: int) -> list[CoactionMap]:
    """Seeded coactions: even slots stay inside the compatible space, odd slots add noise."""
    rng = random.Random(seed)
    H, A = HA.hopf, HA.algebra
    space = yd_coaction_space(H, A, HA.action)
    out = []
    for k in range(count):
        table: dict = {}
        if k % 2 == 0 and space:
            for co in rng.sample(space, min(len(space), rng.randint(1, 3))):
                c = rng.randint(-3, 3) or 1
                for a in range(A.dim):
                    for key, d in co.basis(a):
                        add_into(table.setdefault(a, {}), {key: c * d})
        else:
            base = HA.coaction
            for a in range(A.dim):
                table[a] = dict(base.basis(a)) if base else {}
            a = rng.randrange(A.dim)
            key = (rng.randrange(A.dim), rng.randrange(H.dim))
            add_into(table[a], {key: rng.choice([-2, -1, 1, 2])})
        out.append(CoactionMap(A.dim, H.dim, table))
    return out


# elementary structures ------------------------------------------------------------------------


def trivial_action(H: FinHopf, A: FinAlgebra) -> ActionMap:
    return ActionMap.from_function(H, A, lambda h, a: {a: H.counit_table[h]})


def trivial_coaction(H: FinHopf, A: FinAlgebra) -> CoactionMap:
    return CoactionMap(A.dim, H.dim, {a: {(a, j): c for j, c in H.unit.items()} for a in range(A.dim)})


def hopf_as_algebra(H: FinHopf) -> FinAlgebra:
    return FinAlgebra(H.labels, {(i, j): dict(H.table[i][j]) for i in range(H.dim) for j in range(H.dim)}, H.unit, validate=False)


def adjoint_action(H: FinHopf) -> ActionMap:
    """``g.h = g0 h S(g1)``."""

    def f(g, h):
        out: Vec = {}
        for (g0, g1), c in H.delta(g):
            add_into(out, H.mul(H.mul({g0: 1}, {h: 1}), H.antipode({g1: 1})), c)
        return out

    return ActionMap.from_function(H, H, f)


def self_yd(H: FinHopf) -> HAlgebra:
    """H over itself: adjoint action and ``rho(h) = h1 (x) S^-1(h0)``."""
    table: dict = {}
    for h in range(H.dim):
        row: dict = {}
        for (h0, h1), c in H.delta(h):
            for k, d in H.antipode({h0: 1}, -1).items():
                add_into(row, {(h1, k): c * d})
        table[h] = row
    return HAlgebra(hopf_as_algebra(H), H, adjoint_action(H), CoactionMap(H.dim, H.dim, table), name="self-yd")


def tensor_algebra(A: FinAlgebra, B: FinAlgebra, labels: Sequence[str] | None = None) -> FinAlgebra:
    nb = B.dim
    mult = {}
    for (a, b), (c, d) in itertools.product(itertools.product(range(A.dim), range(nb)), repeat=2):
        out: Vec = {}
        for x, e in A.mul({a: 1}, {c: 1}).items():
            for y, f in B.mul({b: 1}, {d: 1}).items():
                add_into(out, {x * nb + y: e * f})
        mult[(a * nb + b, c * nb + d)] = out
    unit: Vec = {}
    for x, e in A.unit.items():
        for y, f in B.unit.items():
            add_into(unit, {x * nb + y: e * f})
    labels = labels or [f"{la}(x){lb}" for la in A.labels for lb in B.labels]
    return FinAlgebra(labels, mult, unit, validate=False)


def yd_tensor_h(HA: HAlgebra) -> HAlgebra:
    """``A (x) H`` with ``g.(a(x)h) = g1.a (x) g0 h S(g2)`` and ``rho(a(x)h) = a(x)h1 (x) S^-1(h0)``."""
    H, A = HA.hopf, HA.algebra
    nh = H.dim
    alg = tensor_algebra(A, hopf_as_algebra(H))

    def f(g, idx):
        a, h = divmod(idx, nh)
        out: Vec = {}
        for (g0, g1, g2), c in H.delta(g, 2):
            left = HA.act({g1: 1}, {a: 1})
            right = H.mul(H.mul({g0: 1}, {h: 1}), H.antipode({g2: 1}))
            for x, d in left.items():
                for y, e in right.items():
                    add_into(out, {x * nh + y: c * d * e})
        return out

    table: dict = {}
    for idx in range(alg.dim):
        a, h = divmod(idx, nh)
        row: dict = {}
        for (h0, h1), c in H.delta(h):
            for k, d in H.antipode({h0: 1}, -1).items():
                add_into(row, {(a * nh + h1, k): c * d})
        table[idx] = row
    return HAlgebra(alg, H, ActionMap.from_function(H, alg, f), CoactionMap(alg.dim, nh, table), name=f"{HA.name}(x)H")


def crossed_product(HA: HAlgebra) -> FinAlgebra:
    """``A # H`` with ``(a(x)g)(b(x)h) = a (g0.b) (x) g1 h``; basis index ``a*dim(H) + g``."""
    H, A = HA.hopf, HA.algebra
    nh = H.dim
    mult = {}
    for i, j in itertools.product(range(A.dim * nh), repeat=2):
        a, g = divmod(i, nh)
        b, h = divmod(j, nh)
        out: Vec = {}
        for (g0, g1), c in H.delta(g):
            left = A.mul({a: 1}, HA.act({g0: 1}, {b: 1}))
            right = H.mul({g1: 1}, {h: 1})
            for x, d in left.items():
                for y, e in right.items():
                    add_into(out, {x * nh + y: c * d * e})
        mult[(i, j)] = out
    unit: Vec = {}
    for x, d in A.unit.items():
        for y, e in H.unit.items():
            add_into(unit, {x * nh + y: d * e})
    labels = [f"{la}#{lh}" for la in A.labels for lh in H.labels]
    return FinAlgebra(labels, mult, unit, validate=False)


def twisted_product(A: HAlgebra, B: HAlgebra, check: bool = True) -> HAlgebra:
    """``(a(x)b)(c(x)d) = a c<0> (x) (c<1>.b) d`` with the diagonal action."""
    if check and not is_yd(A):
        raise ValueError("twisted product needs a Yetter-Drinfeld algebra on the left")
    H = A.hopf
    na, nb = A.algebra.dim, B.algebra.dim
    mult = {}
    for i, j in itertools.product(range(na * nb), repeat=2):
        a, b = divmod(i, nb)
        c, d = divmod(j, nb)
        out: Vec = {}
        for (c0, c1), e in A.coaction.basis(c):
            left = A.algebra.mul({a: 1}, {c0: 1})
            right = B.algebra.mul(B.act({c1: 1}, {b: 1}), {d: 1})
            for x, f in left.items():
                for y, g in right.items():
                    add_into(out, {x * nb + y: e * f * g})
        mult[(i, j)] = out
    unit: Vec = {}
    for x, e in A.algebra.unit.items():
        for y, f in B.algebra.unit.items():
            add_into(unit, {x * nb + y: e * f})
    labels = [f"{la}(x){lb}" for la in A.algebra.labels for lb in B.algebra.labels]
    alg = FinAlgebra(labels, mult, unit, validate=False)

    def act(h, idx):
        a, b = divmod(idx, nb)
        out: Vec = {}
        for (h0, h1), c in H.delta(h):
            for x, d in A.act({h0: 1}, {a: 1}).items():
                for y, e in B.act({h1: 1}, {b: 1}).items():
                    add_into(out, {x * nb + y: c * d * e})
        return out

    return HAlgebra(alg, H, ActionMap.from_function(H, alg, act), name=f"{A.name}(x){B.name}")


# representations and End(V) --------------------------------------------------------------------


class Representation:
    """A finite-dimensional left module, given by one matrix per basis element of H."""

    def __init__(self, hopf: FinHopf, matrices: Sequence[Sequence[Sequence[Scalar]]], name: str = "", validate: bool = True):
        self.hopf = hopf
        self.matrices = [[[clean(x) for x in row] for row in m] for m in matrices]
        self.name = name
        if len(self.matrices) != hopf.dim:
            raise ValueError("need one matrix per basis element")
        self.dim = len(self.matrices[0])
        if validate:
            rep = self.verify()
            if not rep.ok:
                raise VerificationError(rep)

    def of(self, h: Mapping) -> list[list]:
        d = self.dim
        out = [[0] * d for _ in range(d)]
        for i, c in h.items():
            m = self.matrices[i]
            for r in range(d):
                for s in range(d):
                    if m[r][s] != 0:
                        out[r][s] = clean(out[r][s] + c * m[r][s])
        return out

    def verify(self) -> Report:
        rep = Report("representation")
        H = self.hopf
        if self.of(H.one()) != identity(self.dim):
            rep.failed("unital", lhs=self.of(H.one()), rhs=identity(self.dim))
        else:
            rep.passed("unital")
        for i, j in itertools.product(range(H.dim), repeat=2):
            lhs = self.of(H.mul({i: 1}, {j: 1}))
            rhs = mat_mul(self.matrices[i], self.matrices[j])
            if lhs != rhs:
                rep.failed("multiplicative", witness=(H.labels[i], H.labels[j]), lhs=lhs, rhs=rhs)
                break
        else:
            rep.passed("multiplicative")
        return rep

    def direct_sum(self, other: Representation) -> Representation:
        d1, d2 = self.dim, other.dim
        mats = []
        for m1, m2 in zip(self.matrices, other.matrices):
            m = [[0] * (d1 + d2) for _ in range(d1 + d2)]
            for r in range(d1):
                m[r][:d1] = m1[r]
            for r in range(d2):
                m[d1 + r][d1:] = m2[r]
            mats.append(m)
        return Representation(self.hopf, mats, name=f"{self.name}+{other.name}", validate=False)


def trivial_rep(H: FinHopf, dim: int = 1) -> Representation:
    return Representation(H, [[[H.counit_table[h] if r == s else 0 for s in range(dim)] for r in range(dim)] for h in range(H.dim)], name=f"trivial{dim}")


def regular_rep(H: FinHopf) -> Representation:
    n = H.dim
    mats = []
    for h in range(n):
        m = [[0] * n for _ in range(n)]
        for j in range(n):
            for k, c in H.mul({h: 1}, {j: 1}).items():
                m[k][j] = c
        mats.append(m)
    return Representation(H, mats, name="regular")


def matrix_units_algebra(d: int) -> FinAlgebra:
    labels = [f"E{k + 1}{l + 1}" for k in range(d) for l in range(d)]
    mult = {}
    for k, l, m, n in itertools.product(range(d), repeat=4):
        if l == m:
            mult[(k * d + l, m * d + n)] = {k * d + n: 1}
    return FinAlgebra(labels, mult, {k * d + k: 1 for k in range(d)}, validate=False)


def _mat_to_vec(m: list[list], d: int) -> Vec:
    return {r * d + s: m[r][s] for r in range(d) for s in range(d) if m[r][s] != 0}


def endo_conj_algebra(V: Representation) -> HAlgebra:
    """``End(V)`` with ``h.f = r(h0) f r(S h1)``."""
    H, d = V.hopf, V.dim
    alg = matrix_units_algebra(d)

    def act(h, idx):
        k, l = divmod(idx, d)
        out: Vec = {}
        for (h0, h1), c in H.delta(h):
            left = V.matrices[h0]
            right = V.of(H.antipode({h1: 1}))
            for m in range(d):
                if left[m][k] == 0:
                    continue
                for n in range(d):
                    if right[l][n] != 0:
                        add_into(out, {m * d + n: c * left[m][k] * right[l][n]})
        return out

    return HAlgebra(alg, H, ActionMap.from_function(H, alg, act), name=f"End({V.name})")


class MatrixAlgebra(HAlgebra):
    """``A (x) End(V)`` with one of the two H-algebra structures.

    Basis index of ``a_i (x) E_kl`` is ``(i*d + k)*d + l``.  ``tag`` is
    ``"diagonal"`` (twisted product, needs a Yetter-Drinfeld ``A``) or
    ``"nondiagonal"`` (plain tensor product, non-diagonal action).
    """

    def __init__(self, base: HAlgebra, rep: Representation, tag: str, algebra: FinAlgebra, action: ActionMap):
        super().__init__(algebra, base.hopf, action, None, name=f"{base.name}(x)End({rep.name})[{tag}]")
        self.base, self.rep, self.tag = base, rep, tag
        self.d = rep.dim

    def index(self, i: int, k: int, l: int) -> int:
        return (i * self.d + k) * self.d + l

    def split(self, idx: int) -> tuple[int, int, int]:
        i, kl = divmod(idx, self.d * self.d)
        return (i,) + divmod(kl, self.d)

    def from_matrix(self, entries: Sequence[Sequence[Mapping]]) -> Vec:
        """Element from a ``d x d`` array of A-vectors."""
        out: Vec = {}
        for k, row in enumerate(entries):
            for l, a in enumerate(row):
                for i, c in a.items():
                    add_into(out, {self.index(i, k, l): c})
        return out

    def to_matrix(self, x: Mapping) -> list[list[Vec]]:
        out = [[{} for _ in range(self.d)] for _ in range(self.d)]
        for idx, c in x.items():
            i, k, l = self.split(idx)
            out[k][l][i] = c
        return out

    def elem(self, a: Mapping, u: Sequence[Sequence[Scalar]]) -> Vec:
        """The simple tensor ``a (x) u``."""
        out: Vec = {}
        for i, c in a.items():
            for k in range(self.d):
                for l in range(self.d):
                    if u[k][l] != 0:
                        add_into(out, {self.index(i, k, l): c * u[k][l]})
        return out


def matrix_algebra_diagonal(A: HAlgebra, V: Representation) -> MatrixAlgebra:
    """Twisted product with ``End(V)`` and the diagonal action."""
    if not is_yd(A):
        raise ValueError("the diagonal structure needs a Yetter-Drinfeld algebra")
    tp = twisted_product(A, endo_conj_algebra(V), check=False)
    return MatrixAlgebra(A, V, "diagonal", tp.algebra, tp.action)


def matrix_algebra_nondiagonal(A: HAlgebra, V: Representation) -> MatrixAlgebra:
    """Plain tensor product with ``h.(a(x)u) = h1.a (x) r(h0) u r(S h2)``."""
    H, d = A.hopf, V.dim
    alg = tensor_algebra(A.algebra, matrix_units_algebra(d))

    def act(h, idx):
        i, kl = divmod(idx, d * d)
        k, l = divmod(kl, d)
        out: Vec = {}
        for (h0, h1, h2), c in H.delta(h, 2):
            left = V.matrices[h0]
            right = V.of(H.antipode({h2: 1}))
            for x, e in A.act({h1: 1}, {i: 1}).items():
                for m in range(d):
                    if left[m][k] == 0:
                        continue
                    for n in range(d):
                        if right[l][n] != 0:
                            add_into(out, {(x * d + m) * d + n: c * e * left[m][k] * right[l][n]})
        return out

    return MatrixAlgebra(A, V, "nondiagonal", alg, ActionMap.from_function(H, alg, act))


LinearMap = Callable[[Mapping], Vec]


def _extend(f_basis: Callable[[int], Vec]) -> LinearMap:
    def f(x: Mapping) -> Vec:
        out: Vec = {}
        for i, c in x.items():
            add_into(out, f_basis(i), c)
        return out

    return f


def _left_mult_map(M: MatrixAlgebra, which: Callable[[int], Iterable[tuple[int, list[list], Scalar]]]) -> LinearMap:
    """Map ``a_i(x)E_kl -> sum c * a' (x) m E_kl`` for triples ``(a', m, c)``."""
    d = M.d

    def f_basis(idx: int) -> Vec:
        i, k, l = M.split(idx)
        out: Vec = {}
        for a, m, c in which(i):
            for r in range(d):
                if m[r][k] != 0:
                    add_into(out, {M.index(a, r, l): c * m[r][k]})
        return out

    return _extend(f_basis)


def beta_iso(A: HAlgebra, V: Representation, direction: int = 1) -> LinearMap:
    """``beta(a(x)u) = a<0> (x) a<1> u``; ``direction=-1`` gives ``a<0> (x) S(a<1>) u``."""
    if not is_yd(A):
        raise ValueError("beta needs a Yetter-Drinfeld algebra")
    H = A.hopf
    M = matrix_algebra_nondiagonal(A, V)

    def which(i):
        for (a0, a1), c in A.coaction.basis(i):
            h = {a1: 1} if direction == 1 else H.antipode({a1: 1})
            yield a0, V.of(h), c

    return _left_mult_map(M, which)


def verify_iso(src: MatrixAlgebra, dst: MatrixAlgebra, fwd: LinearMap, bwd: LinearMap, name: str) -> Report:
    """Mutually inverse, multiplicative and H-linear, checked on all basis elements."""
    rep = Report(name)
    n = src.algebra.dim
    H = src.hopf

    def run(id_, gen):
        for wit, lhs, rhs in gen:
            if lhs != rhs:
                rep.failed(id_, witness=wit, lhs=lhs, rhs=rhs)
                return
        rep.passed(id_)

    lab = src.algebra.labels
    run("inverse (forward o backward)", (((lab[i],), fwd(bwd({i: 1})), {i: 1}) for i in range(n)))
    run("inverse (backward o forward)", (((lab[i],), bwd(fwd({i: 1})), {i: 1}) for i in range(n)))
    run(
        "algebra map",
        (((lab[i], lab[j]), fwd(src.algebra.mul({i: 1}, {j: 1})), dst.algebra.mul(fwd({i: 1}), fwd({j: 1}))) for i in range(n) for j in range(n)),
    )
    run("unit", ((("1",), fwd(src.algebra.one()), dst.algebra.one()),))
    run(
        "intertwines actions",
        (((H.labels[h], lab[i]), fwd(src.act({h: 1}, {i: 1})), dst.act({h: 1}, fwd({i: 1}))) for h in range(H.dim) for i in range(n)),
    )
    return rep


def verify_beta(A: HAlgebra, V: Representation) -> Report:
    src = matrix_algebra_nondiagonal(A, V)
    dst = matrix_algebra_diagonal(A, V)
    return verify_iso(src, dst, beta_iso(A, V, 1), beta_iso(A, V, -1), "beta isomorphism")


# quasitriangular structures ----------------------------------------------------------------------


@dataclass
class RMatrix:
    hopf: FinHopf
    r: TensorElem
    r_inv: TensorElem

    def legs(self) -> Iterable[tuple[int, int, Scalar]]:
        for (a, b), c in self.r.terms.items():
            yield a, b, c


def verify_quasitriangular(H: FinHopf, R: RMatrix) -> Report:
    rep = Report("quasitriangular")
    alg2 = [H, H]
    n = H.dim
    one2 = TensorElem.build((n, n), [((a, b), c * d) for a, c in H.unit.items() for b, d in H.unit.items()])

    def rec(id_, lhs, rhs, wit=None):
        if lhs == rhs:
            rep.passed(id_)
        else:
            rep.failed(id_, witness=wit, lhs=dict(lhs.terms) if isinstance(lhs, TensorElem) else lhs, rhs=dict(rhs.terms) if isinstance(rhs, TensorElem) else rhs)

    rec("R invertible (left)", R.r.mul(R.r_inv, alg2), one2)
    rec("R invertible (right)", R.r_inv.mul(R.r, alg2), one2)

    # (D x id) R = R13 R23
    lhs: dict = {}
    rhs: dict = {}
    for a, b, c in R.legs():
        for (a0, a1), d in H.delta(a):
            add_into(lhs, {(a0, a1, b): c * d})
        for a2, b2, d in R.legs():
            for y, e in H.mul({b: 1}, {b2: 1}).items():
                add_into(rhs, {(a, a2, y): c * d * e})
    rec("(D x id)R = R13 R23", lhs, rhs)
    # (id x D) R = R13 R12
    lhs, rhs = {}, {}
    for a, b, c in R.legs():
        for (b0, b1), d in H.delta(b):
            add_into(lhs, {(a, b0, b1): c * d})
        for a2, b2, d in R.legs():
            for x, e in H.mul({a: 1}, {a2: 1}).items():
                add_into(rhs, {(x, b, b2): c * d * e})
    rec("(id x D)R = R13 R12", lhs, rhs)

    for h in range(n):
        d = H.coproduct({h: 1})
        left = d.flip().mul(R.r, alg2)
        right = R.r.mul(d, alg2)
        if left != right:
            rep.failed("Dcop(h) R = R D(h)", witness=(H.labels[h],), lhs=dict(left.terms), rhs=dict(right.terms))
            break
    else:
        rep.passed("Dcop(h) R = R D(h)")

    left_eps: Vec = {}
    right_eps: Vec = {}
    for a, b, c in R.legs():
        add_into(left_eps, {b: c * H.counit_table[a]})
        add_into(right_eps, {a: c * H.counit_table[b]})
    rec("(eps x id)R = 1", left_eps, H.one())
    rec("(id x eps)R = 1", right_eps, H.one())

    s = lambda k: dict(H.s_table[k])
    rec("(S x id)R = R^-1", R.r.contract(0, s), R.r_inv)
    rec("(id x S)R^-1 = R", R.r_inv.contract(1, s), R.r)
    rec("(S x S)R = R", R.r.contract(0, s).contract(1, s), R.r)
    return rep


def is_quasitriangular(H: FinHopf, R: RMatrix) -> bool:
    return verify_quasitriangular(H, R).ok


def coaction_from_r(HA: HAlgebra, R: RMatrix) -> CoactionMap:
    """``rho(a) = R2.a (x) R1``."""
    table: dict = {}
    for a in range(HA.algebra.dim):
        row: dict = {}
        for r1, r2, c in R.legs():
            for x, d in HA.act({r2: 1}, {a: 1}).items():
                add_into(row, {(x, r1): c * d})
        table[a] = row
    return CoactionMap(HA.algebra.dim, HA.hopf.dim, table)


def t_iso(A: HAlgebra, V: Representation, R: RMatrix, direction: int = 1) -> LinearMap:
    """``t(a(x)u) = R2.a (x) R1 u``; ``direction=-1`` uses ``S(R1)``."""
    H = A.hopf
    if not is_quasitriangular(H, R):
        raise ValueError("t needs a quasitriangular R-matrix")
    M = matrix_algebra_nondiagonal(A, V)

    def which(i):
        for r1, r2, c in R.legs():
            h = {r1: 1} if direction == 1 else H.antipode({r1: 1})
            m = V.of(h)
            for a, d in A.act({r2: 1}, {i: 1}).items():
                yield a, m, c * d

    return _left_mult_map(M, which)


def verify_t(A: HAlgebra, V: Representation, R: RMatrix) -> Report:
    yd = A.with_coaction(coaction_from_r(A, R))
    src = matrix_algebra_nondiagonal(A, V)
    dst = matrix_algebra_diagonal(yd, V)
    return verify_iso(src, dst, t_iso(A, V, R, 1), t_iso(A, V, R, -1), "t isomorphism")


# coquasitriangular structures --------------------------------------------------------------------


@dataclass
class UniversalRForm:
    hopf: FinHopf
    form: list[list]
    form_inv: list[list]

    def __call__(self, h: Mapping, g: Mapping, inverse: bool = False) -> Scalar:
        m = self.form_inv if inverse else self.form
        acc = 0
        for i, c in h.items():
            for j, d in g.items():
                acc = acc + c * d * m[i][j]
        return clean(acc)


def verify_coquasitriangular(H: FinHopf, R: UniversalRForm) -> Report:
    rep = Report("coquasitriangular")
    n = H.dim
    lab = H.labels
    eps = H.counit_table

    def run(id_, gen):
        for wit, lhs, rhs in gen:
            if lhs != rhs:
                rep.failed(id_, witness=wit, lhs=lhs, rhs=rhs)
                return
        rep.passed(id_)

    def conv(first_inv):
        for h, g in itertools.product(range(n), repeat=2):
            acc = 0
            for (h0, h1), c in H.delta(h):
                for (g0, g1), d in H.delta(g):
                    acc = acc + c * d * R({h0: 1}, {g0: 1}, first_inv) * R({h1: 1}, {g1: 1}, not first_inv)
            yield (lab[h], lab[g]), clean(acc), clean(eps[h] * eps[g])

    run("convolution inverse (left)", conv(True))
    run("convolution inverse (right)", conv(False))

    def mult_left():
        for h, g, r in itertools.product(range(n), repeat=3):
            lhs = R(H.mul({h: 1}, {g: 1}), {r: 1})
            rhs = clean(sum((c * R({h: 1}, {r0: 1}) * R({g: 1}, {r1: 1}) for (r0, r1), c in H.delta(r)), 0))
            yield (lab[h], lab[g], lab[r]), lhs, rhs

    def mult_right():
        for h, g, r in itertools.product(range(n), repeat=3):
            lhs = R({h: 1}, H.mul({g: 1}, {r: 1}))
            rhs = clean(sum((c * R({h0: 1}, {g: 1}) * R({h1: 1}, {r: 1}) for (h0, h1), c in H.delta(h)), 0))
            yield (lab[h], lab[g], lab[r]), lhs, rhs

    def braided_comm():
        for g, h in itertools.product(range(n), repeat=2):
            lhs: Vec = {}
            rhs: Vec = {}
            for (g0, g1), c in H.delta(g):
                for (h0, h1), d in H.delta(h):
                    add_into(lhs, H.mul({g0: 1}, {h0: 1}), c * d * R({g1: 1}, {h1: 1}))
                    add_into(rhs, H.mul({g1: 1}, {h1: 1}), c * d * R({g0: 1}, {h0: 1}))
            yield (lab[g], lab[h]), lhs, rhs

    run("R(hg, r) = R(h, r0) R(g, r1)", mult_left())
    run("R(h, gr) = R(h0, g) R(h1, r)", mult_right())
    run("g0 h0 R(g1, h1) = R(g0, h0) g1 h1", braided_comm())
    run("R(h, 1) = R(1, h) = eps(h)", (((lab[h],), (R({h: 1}, H.one()), R(H.one(), {h: 1})), (eps[h], eps[h])) for h in range(n)))
    run("R(S h, g) = R^-1(h, g)", (((lab[h], lab[g]), R(H.antipode({h: 1}), {g: 1}), R({h: 1}, {g: 1}, True)) for h in range(n) for g in range(n)))
    run("R^-1(h, S g) = R(h, g)", (((lab[h], lab[g]), R({h: 1}, H.antipode({g: 1}), True), R({h: 1}, {g: 1})) for h in range(n) for g in range(n)))
    run("R(S h, S g) = R(h, g)", (((lab[h], lab[g]), R(H.antipode({h: 1}), H.antipode({g: 1})), R({h: 1}, {g: 1})) for h in range(n) for g in range(n)))
    return rep


def action_from_form(H: FinHopf, A: FinAlgebra, co: CoactionMap, R: UniversalRForm) -> ActionMap:
    """``h.a = a<0> R(h, a<1>)``."""

    def f(h, a):
        out: Vec = {}
        for (a0, a1), c in co.basis(a):
            add_into(out, {a0: c * R({h: 1}, {a1: 1})})
        return out

    return ActionMap.from_function(H, A, f)
