"""Invariant idempotents, the generalized trace map and the pairings with equivariant cyclic cocycles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .actions import (
    HAlgebra,
    MatrixAlgebra,
    Representation,
    beta_iso,
    matrix_algebra_diagonal,
    matrix_algebra_nondiagonal,
)
from .cyclic import ColumnOp, EquivariantComplex, _expand
from .hopf import FinHopf
from .linalg import Echelon, Vec, add_into, clean, nullspace, same_span, scale, sub
from .operators import Identity, LinOp, MatrixOp, Sum, compare_on
from .report import Report
from .scalars import Scalar

# invariant functionals ---------------------------------------------------------------------


def _functional_equations(H: FinHopf, image) -> list[Vec]:
    """Rows of ``f(image(h, g)) - eps(h) f(g) = 0`` over ``f`` in the dual basis."""
    eqs = []
    for h in range(H.dim):
        eps = H.counit_table[h]
        for g in range(H.dim):
            row = dict(image(h, g))
            add_into(row, {g: 1}, -eps)
            if row:
                eqs.append(row)
    return eqs


def _conj_s2(H: FinHopf, h: int, g: int) -> Vec:
    """``S^2(h0) g S(h1)``."""
    out: Vec = {}
    for (h0, h1), c in H.delta(h):
        s2 = H.antipode(H.antipode({h0: 1}))
        add_into(out, H.mul(H.mul(s2, {g: 1}), H.antipode({h1: 1})), c)
    return out


def _conj_s(H: FinHopf, h: int, g: int) -> Vec:
    """``S(h1) g h0``."""
    out: Vec = {}
    for (h0, h1), c in H.delta(h):
        add_into(out, H.mul(H.mul(H.antipode({h1: 1}), {g: 1}), {h0: 1}), c)
    return out


def invariant_functionals(H: FinHopf) -> list[Vec]:
    """Basis of ``R(H)``: ``f(S^2(h0) g S(h1)) = eps(h) f(g)`` for all ``h, g``."""
    return nullspace(_functional_equations(H, lambda h, g: _conj_s2(H, h, g)), range(H.dim))


def invariant_functionals_conjugation(H: FinHopf) -> list[Vec]:
    """The same space from ``f(S(h1) g h0) = eps(h) f(g)``."""
    return nullspace(_functional_equations(H, lambda h, g: _conj_s(H, h, g)), range(H.dim))


def verify_invariant_functionals(H: FinHopf) -> Report:
    rep = Report("invariant functionals")
    a, b = invariant_functionals(H), invariant_functionals_conjugation(H)
    rep.data["dim"] = len(a)
    rep.record("two defining conditions agree", None if same_span(a, b) else {"dims": (len(a), len(b))})
    return rep


def in_invariant_functionals(H: FinHopf, value: Mapping[int, Scalar]) -> bool:
    e = Echelon()
    for v in invariant_functionals(H):
        e.add(v)
    return e.contains(value)


# elements of A (x) End(V) -------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixElem:
    """An element of ``A (x) End(V)`` with the structure fixed by ``M.tag``."""

    M: MatrixAlgebra
    vec: Mapping[int, Scalar]

    def __mul__(self, other: MatrixElem) -> MatrixElem:
        _same_algebra(self, other)
        return MatrixElem(self.M, self.M.algebra.mul(self.vec, other.vec))

    def __add__(self, other: MatrixElem) -> MatrixElem:
        _same_algebra(self, other)
        return MatrixElem(self.M, add_into(dict(self.vec), other.vec))

    def __sub__(self, other: MatrixElem) -> MatrixElem:
        _same_algebra(self, other)
        return MatrixElem(self.M, sub(self.vec, other.vec))

    def scale(self, c: Scalar) -> MatrixElem:
        return MatrixElem(self.M, scale(self.vec, c))

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixElem) and self.M is other.M and dict(self.vec) == dict(other.vec)

    def __hash__(self):
        return hash(tuple(sorted(self.vec.items())))

    @property
    def tag(self) -> str:
        return self.M.tag

    def show(self) -> list[list[dict]]:
        A = self.M.base.algebra
        return [[{A.labels[i]: c for i, c in sorted(entry.items())} for entry in row] for row in self.M.to_matrix(self.vec)]


def _same_algebra(x: MatrixElem, y: MatrixElem) -> None:
    if x.M is not y.M:
        raise ValueError("elements live in different matrix algebras")


def one(M: MatrixAlgebra) -> MatrixElem:
    return MatrixElem(M, M.algebra.one())


def zero(M: MatrixAlgebra) -> MatrixElem:
    return MatrixElem(M, {})


def from_blocks(M: MatrixAlgebra, entries: Sequence[Sequence[Mapping]]) -> MatrixElem:
    return MatrixElem(M, M.from_matrix(entries))


def is_invariant(x: MatrixElem | tuple[HAlgebra, Mapping]) -> Report:
    """``h.x = eps(h) x`` for every basis element ``h``."""
    HA, vec = (x.M, x.vec) if isinstance(x, MatrixElem) else x
    H = HA.hopf
    rep = Report("invariance")
    for h in range(H.dim):
        lhs = HA.act({h: 1}, vec)
        rhs = scale(vec, H.counit_table[h])
        if lhs != rhs:
            rep.failed("h.x = eps(h) x", witness={"h": H.labels[h]}, lhs=lhs, rhs=rhs)
            return rep
    rep.passed("h.x = eps(h) x")
    return rep


def is_idempotent(x: MatrixElem) -> Report:
    rep = Report("idempotent")
    sq = (x * x).vec
    rep.record("x x = x", None if sq == dict(x.vec) else "x", sq, dict(x.vec))
    return rep


def direct_sum_algebra(M: MatrixAlgebra, N: MatrixAlgebra) -> MatrixAlgebra:
    if M.tag != N.tag:
        raise ValueError("cannot add idempotents with different structures")
    if M.base is not N.base:
        raise ValueError("direct sum needs the same base algebra")
    V = M.rep.direct_sum(N.rep)
    build = matrix_algebra_diagonal if M.tag == "diagonal" else matrix_algebra_nondiagonal
    return _memo_matrix(build, M.base, V)


_MATRIX_MEMO: dict = {}


def _memo_matrix(build, base: HAlgebra, V: Representation) -> MatrixAlgebra:
    key = (build.__name__, id(base), tuple(tuple(tuple(r) for r in m) for m in V.matrices))
    hit = _MATRIX_MEMO.get(key)
    if hit is None:
        hit = _MATRIX_MEMO[key] = (base, build(base, V))
    return hit[1]


def direct_sum(e: MatrixElem, f: MatrixElem, target: MatrixAlgebra | None = None) -> MatrixElem:
    """Block-diagonal sum in ``A (x) End(V (+) V')``."""
    S = target or direct_sum_algebra(e.M, f.M)
    d1 = e.M.d
    out: Vec = {}
    for idx, c in e.vec.items():
        i, k, l = e.M.split(idx)
        out[S.index(i, k, l)] = c
    for idx, c in f.vec.items():
        i, k, l = f.M.split(idx)
        out[S.index(i, k + d1, l + d1)] = c
    return MatrixElem(S, out)


def embed_block(x: MatrixElem, S: MatrixAlgebra, row: int, col: int) -> MatrixElem:
    """Place ``x`` at offset ``(row, col)`` inside a larger square ``S``."""
    out: Vec = {}
    for idx, c in x.vec.items():
        i, k, l = x.M.split(idx)
        out[S.index(i, k + row, l + col)] = c
    return MatrixElem(S, out)


def verify_mvn(e: MatrixElem, e2: MatrixElem, g1: MatrixElem, g2: MatrixElem) -> Report:
    """Invariant ``g1, g2`` with ``g2 g1 = e`` and ``g1 g2 = e2``."""
    rep = Report("murray-von neumann")
    for name, x in (("gamma1", g1), ("gamma2", g2)):
        inv = is_invariant(x)
        c = inv.checks[0]
        rep.record(f"{name} invariant", c.witness, c.lhs, c.rhs)
    lhs = (g2 * g1).vec
    rep.record("gamma2 gamma1 = e", None if lhs == dict(e.vec) else "e", lhs, dict(e.vec))
    lhs = (g1 * g2).vec
    rep.record("gamma1 gamma2 = e'", None if lhs == dict(e2.vec) else "e'", lhs, dict(e2.vec))
    return rep


def verify_similarity(e: MatrixElem, e2: MatrixElem, g: MatrixElem, g_inv: MatrixElem) -> Report:
    """Invariant invertible ``g`` with ``g e g^-1 = e'``."""
    rep = Report("similarity")
    for name, x in (("gamma", g), ("gamma inverse", g_inv)):
        c = is_invariant(x).checks[0]
        rep.record(f"{name} invariant", c.witness, c.lhs, c.rhs)
    unit = one(e.M).vec
    for name, prod in (("gamma gamma^-1 = 1", g * g_inv), ("gamma^-1 gamma = 1", g_inv * g)):
        rep.record(name, None if prod.vec == unit else "1", prod.vec, unit)
    lhs = (g * e * g_inv).vec
    rep.record("gamma e gamma^-1 = e'", None if lhs == dict(e2.vec) else "e", lhs, dict(e2.vec))
    return rep


class IdempotentRegistry:
    """Named invariant idempotents with certificate-checked equivalences."""

    def __init__(self) -> None:
        self.items: dict[str, MatrixElem] = {}
        self.relations: list[tuple[str, str, str]] = []

    def add(self, name: str, e: MatrixElem) -> None:
        for r in (is_invariant(e), is_idempotent(e)):
            if not r.ok:
                raise ValueError(f"{name}: {r.failures()[0].id} fails")
        self.items[name] = e

    def relate_similar(self, a: str, b: str, g: MatrixElem, g_inv: MatrixElem) -> Report:
        rep = verify_similarity(self.items[a], self.items[b], g, g_inv)
        if rep.ok:
            self.relations.append((a, b, "similar"))
        return rep

    def relate_mvn(self, a: str, b: str, g1: MatrixElem, g2: MatrixElem) -> Report:
        rep = verify_mvn(self.items[a], self.items[b], g1, g2)
        if rep.ok:
            self.relations.append((a, b, "murray-von neumann"))
        return rep


# the generalized trace map ------------------------------------------------------------------


class TraceMap:
    """``Psi`` from equivariant cochains on A to equivariant cochains on ``A (x) End(V)``.

    For the diagonal structure the full formula with the coaction legs is used;
    for the non-diagonal one ``Psi f(a (x) u)(g) = f(a)(g1) tr(u_0 ... u_n r(g0))``.
    """

    def __init__(self, M: MatrixAlgebra, simplified: bool | None = None):
        self.M = M
        self.base = M.base
        self.H = M.hopf
        self.V = M.rep
        self.simplified = (M.tag == "nondiagonal") if simplified is None else simplified
        if not self.simplified and self.base.coaction is None:
            raise ValueError("the full trace formula needs a coaction")
        self.E = EquivariantComplex(self.base)
        self.EM = EquivariantComplex(M)
        self._ops: dict = {}
        self._sr = {}  # r(S(h)) per basis h
        for h in range(self.H.dim):
            self._sr[h] = self.V.of(self.H.antipode({h: 1}))

    def row(self, n: int, x: tuple) -> dict:
        """``(Psi f)(x)`` as a linear form in the coordinates of ``f``."""
        M, H, V = self.M, self.H, self.V
        parts = [M.split(idx) for idx in x[:-1]]
        g = x[-1]
        out: dict = {}
        if self.simplified:
            for j in range(1, n + 1):
                if parts[j - 1][2] != parts[j][1]:
                    return {}
            a = tuple(p[0] for p in parts)
            for (g0, g1), c in H.delta(g):
                t = V.matrices[g0][parts[n][2]][parts[0][1]]
                if t != 0:
                    key = a + (g1,)
                    out[key] = out.get(key, 0) + c * t
            return {k: clean(v) for k, v in out.items() if v != 0}
        co = self.base.coaction
        for combo, c in _expand([co.basis(p[0]) for p in parts]):
            # combo[j] = (a_j<0>, a_j<1>)
            mats = [self._sr[h1] for _, h1 in combo]
            chain = c
            for j in range(1, n + 1):
                chain = chain * mats[j][parts[j - 1][2]][parts[j][1]]
                if chain == 0:
                    break
            if chain == 0:
                continue
            a = tuple(a0 for a0, _ in combo)
            for (g0, g1), e in H.delta(g):
                gm = V.matrices[g0]
                t = sum(gm[parts[n][2]][s] * mats[0][s][parts[0][1]] for s in range(V.dim))
                if t != 0:
                    key = a + (g1,)
                    out[key] = out.get(key, 0) + chain * e * t
        return {k: clean(v) for k, v in out.items() if v != 0}

    def op(self, n: int) -> LinOp:
        if n not in self._ops:
            self._ops[n] = MatrixOp.from_rows(self.EM.coords(n), lambda x: self.row(n, x))
        return self._ops[n]

    def evaluate(self, f: Mapping, elems: Sequence[Mapping]) -> dict[int, Scalar]:
        """``Psi f(x_0, ..., x_n)`` as a functional on H, for elements of ``A (x) End(V)``."""
        n = len(elems) - 1
        out: dict = {}
        for keys, c in _expand([tuple(e.items()) for e in elems]):
            for g in range(self.H.dim):
                acc = 0
                for y, d in self.row(n, keys + (g,)).items():
                    fy = f.get(y)
                    if fy is not None:
                        acc = acc + d * fy
                if acc != 0:
                    out[g] = out.get(g, 0) + c * acc
        return {g: clean(v) for g, v in out.items() if v != 0}


def verify_trace(HA: HAlgebra, V: Representation, n_max: int, simplified: bool | None = None, tag: str = "nondiagonal") -> Report:
    """Equivariance of ``Psi f`` and commutation with every structure map, ``n <= n_max``."""
    M = matrix_algebra_nondiagonal(HA, V) if tag == "nondiagonal" else matrix_algebra_diagonal(HA, V)
    P = TraceMap(M, simplified)
    E, EM = P.E, P.EM
    rep = Report(f"trace map {HA.name} {V.name} [{tag}]")
    for n in range(n_max + 1):
        eq = E.equivariant_basis(n)
        lab = E.label
        psi = P.op(n)
        bad = next((k for k, v in enumerate(eq) if not EM.in_subspace(psi(v), n)), None)
        rep.record("Psi f equivariant", None if bad is None else {"basis_vector": bad}, degree=n)
        compare_on(rep, "Psi T = T Psi", psi @ E.cyc(n), EM.cyc(n) @ psi, eq, n, lab)
        if n >= 1:
            prev = E.equivariant_basis(n - 1)
            for i in range(n + 1):
                compare_on(rep, f"Psi d^{i} = d^{i} Psi", psi @ E.face(n, i), EM.face(n, i) @ P.op(n - 1), prev, n - 1, lab)
        if n < n_max:
            nxt = E.equivariant_basis(n + 1)
            for i in range(n + 1):
                compare_on(rep, f"Psi s^{i} = s^{i} Psi", psi @ E.degen(n, i), EM.degen(n, i) @ P.op(n + 1), nxt, n + 1, lab)
    return rep


def beta_pullback(HA: HAlgebra, V: Representation, n: int) -> LinOp:
    """``F -> F(beta x_0, ..., beta x_n)`` from diagonal-structure cochains to non-diagonal ones."""
    src = matrix_algebra_nondiagonal(HA, V)
    beta = beta_iso(HA, V, 1)
    images = {i: tuple(beta({i: 1}).items()) for i in range(src.algebra.dim)}
    EM = EquivariantComplex(src)

    def row(x):
        out: dict = {}
        for keys, c in _expand([images[i] for i in x[:-1]]):
            y = keys + (x[-1],)
            out[y] = out.get(y, 0) + c
        return {k: clean(v) for k, v in out.items() if v != 0}

    return MatrixOp.from_rows(EM.coords(n), row)


def verify_beta_transport(HA: HAlgebra, V: Representation, n_max: int, all_cochains: bool = False) -> Report:
    """``Psi_full f o beta = Psi_simplified f`` for every basis cochain and input tuple."""
    full = TraceMap(matrix_algebra_diagonal(HA, V))
    simple = TraceMap(matrix_algebra_nondiagonal(HA, V))
    rep = Report(f"beta transport {HA.name} {V.name}")
    for n in range(n_max + 1):
        vecs = [{x: 1} for x in full.E.coords(n)] if all_cochains else full.E.equivariant_basis(n)
        compare_on(rep, "Psi(beta x) = Psi_simplified(x)", beta_pullback(HA, V, n) @ full.op(n), simple.op(n), vecs, n, full.E.label)
    return rep


# pairings ------------------------------------------------------------------------------------


def is_cyclic(E: EquivariantComplex, f: Mapping, n: int) -> bool:
    """``lambda f = f`` with ``lambda = (-1)^n T``."""
    t = E.cyc(n)(f)
    return t == ({k: clean(-v) for k, v in f.items()} if n % 2 else dict(f))


def is_cyclic_cocycle(E: EquivariantComplex, f: Mapping, n: int) -> bool:
    return is_cyclic(E, f, n) and not E.b(n + 1)(f)


def pair_even(e: MatrixElem, f: Mapping, n2: int, trace: TraceMap | None = None) -> dict[int, Scalar]:
    """``<[e], f>(g) = Psi f(e, ..., e)(g)`` for an equivariant cyclic cocycle ``f`` of degree ``n2``."""
    P = trace or _trace_for(e.M)
    if n2 % 2:
        raise ValueError("the even pairing needs an even degree")
    if not is_invariant(e).ok:
        raise ValueError("idempotent is not invariant")
    if not is_idempotent(e).ok:
        raise ValueError("element is not idempotent")
    if not P.E.in_subspace(f, n2):
        raise ValueError("cochain is not equivariant")
    if not is_cyclic_cocycle(P.E, f, n2):
        raise ValueError("cochain is not a cyclic cocycle")
    return P.evaluate(f, [e.vec] * (n2 + 1))


def pair_periodic(e: MatrixElem, fs: Sequence[Mapping], trace: TraceMap | None = None) -> dict[int, Scalar]:
    """``Psi f_0(e) + sum_n (-1)^n (2n)!/n! Psi f_2n(e - 1/2, e, ..., e)``."""
    P = trace or _trace_for(e.M)
    E = P.E
    if not is_invariant(e).ok or not is_idempotent(e).ok:
        raise ValueError("need an invariant idempotent")
    if not is_periodic_cocycle(E, fs):
        raise ValueError("not a cocycle of the normalized (b, B) complex")
    out: dict = {}
    add_into(out, P.evaluate(fs[0], [e.vec]))
    shifted = sub(e.vec, scale(one(e.M).vec, Fraction(1, 2)))
    for k in range(1, len(fs)):
        coef = (-1) ** k * Fraction(factorial(2 * k), factorial(k))
        add_into(out, P.evaluate(fs[k], [shifted] + [e.vec] * (2 * k)), coef)
    return {g: clean(v) for g, v in out.items()}


def is_periodic_cocycle(E: EquivariantComplex, fs: Sequence[Mapping]) -> bool:
    """Normalized, equivariant, ``b f_2k + B f_2k+2 = 0`` and ``b f_2m = 0``."""
    m = len(fs) - 1
    for k, f in enumerate(fs):
        deg = 2 * k
        if not E.in_subspace(f, deg) or any(E.degen(deg - 1, i)(f) for i in range(deg)):
            return False
        d = E.b(deg + 1)(f)
        if k < m:
            d = add_into(d, E.B(deg + 1)(fs[k + 1]))
        if d:
            return False
    return True


_TRACE_MEMO: dict = {}


def _trace_for(M: MatrixAlgebra) -> TraceMap:
    hit = _TRACE_MEMO.get(id(M))
    if hit is None or hit[0] is not M:
        hit = _TRACE_MEMO[id(M)] = (M, TraceMap(M))
    return hit[1]


def kernel_within(ops: LinOp | Sequence[LinOp], vecs: Sequence[Mapping]) -> list[Vec]:
    """Basis of ``{v in span(vecs) : op(v) = 0 for every op}``."""
    ops = [ops] if isinstance(ops, LinOp) else list(ops)
    rows: dict = {}
    for k, v in enumerate(vecs):
        for t, op in enumerate(ops):
            for x, c in op(v).items():
                rows.setdefault((t, x), {})[k] = c
    coeffs = nullspace(rows.values(), range(len(vecs)))
    out = []
    for c in coeffs:
        acc: Vec = {}
        for k, ck in c.items():
            add_into(acc, vecs[k], ck)
        out.append(acc)
    return out


def cyclic_cochains(E: EquivariantComplex, n: int) -> list[Vec]:
    sign = -1 if n % 2 else 1
    return kernel_within(Sum([(1, E.cyc(n)), (-sign, Identity())]), E.equivariant_basis(n))


def cyclic_cocycles(E: EquivariantComplex, n: int) -> list[Vec]:
    return kernel_within(E.b(n + 1), cyclic_cochains(E, n))


def verify_pairing(
    e: MatrixElem,
    n_values: Iterable[int] = (0, 1),
    gamma: tuple[MatrixElem, MatrixElem] | None = None,
    other: MatrixElem | None = None,
) -> Report:
    """Coboundary invariance, similarity invariance, additivity and R(H)-membership of ``<e, f>``."""
    P = _trace_for(e.M)
    E, H = P.E, P.H
    rep = Report(f"pairing {e.M.name}")
    values = []
    for n in n_values:
        deg = 2 * n
        cocycles = cyclic_cocycles(E, deg)
        rep.data[f"cyclic_cocycles_{deg}"] = len(cocycles)
        vals = [pair_even(e, f, deg, P) for f in cocycles]
        values.extend(vals)
        if n >= 1:
            bad = None
            for k, h in enumerate(cyclic_cochains(E, deg - 1)):
                bh = E.b(deg)(h)
                for j, f in enumerate(cocycles):
                    shifted = pair_even(e, add_into(dict(f), bh), deg, P)
                    if shifted != vals[j]:
                        bad = ({"coboundary_of": k, "cocycle": j}, shifted, vals[j])
                        break
                if bad:
                    break
            rep.record("<e, f + b f'> = <e, f>", *(bad if bad else (None,)), degree=deg)
        if gamma is not None:
            g, g_inv = gamma
            conj = g * e * g_inv
            bad = next(((j, pair_even(conj, f, deg, P), vals[j]) for j, f in enumerate(cocycles) if pair_even(conj, f, deg, P) != vals[j]), None)
            rep.record("<g e g^-1, f> = <e, f>", *(bad if bad else (None,)), degree=deg)
        if other is not None:
            s = direct_sum(e, other)
            Ps = _trace_for(s.M)
            bad = None
            for j, f in enumerate(cocycles):
                lhs = pair_even(s, f, deg, Ps)
                rhs = add_into(dict(vals[j]), pair_even(other, f, deg, _trace_for(other.M)))
                if lhs != rhs:
                    bad = (j, lhs, rhs)
                    break
            rep.record("<e + e', f> = <e, f> + <e', f>", *(bad if bad else (None,)), degree=deg)
    bad = next((k for k, v in enumerate(values) if not in_invariant_functionals(H, v)), None)
    rep.record("pairing values lie in R(H)", None if bad is None else {"value": bad}, values[bad] if bad is not None else None)
    rep.data["values"] = [{H.labels[g]: c for g, c in sorted(v.items())} for v in values]
    return rep


def verify_periodic_pairing(e: MatrixElem) -> Report:
    """Coboundary invariance at ``m = 1``: ``(B h, b h)`` pairs to zero for normalized ``h``."""
    P = _trace_for(e.M)
    E, H = P.E, P.H
    rep = Report("periodic pairing")
    bad = None
    for k, h in enumerate(E.normalized_basis(1)):
        fs = [E.B(0)(h), E.b(2)(h)]
        val = pair_periodic(e, fs, P)
        if val:
            bad = ({"normalized_1_cochain": k}, val, {})
            break
    rep.record("<e, D h> = 0", *(bad if bad else (None,)))
    # pairing of cocycles lands in R(H)
    zs = _periodic_cocycles(E)
    vals = [pair_periodic(e, fs, P) for fs in zs]
    badr = next((k for k, v in enumerate(vals) if not in_invariant_functionals(H, v)), None)
    rep.record("periodic values lie in R(H)", None if badr is None else {"cocycle": badr})
    rep.data["values"] = [{H.labels[g]: c for g, c in sorted(v.items())} for v in vals]
    return rep


def _periodic_cocycles(E: EquivariantComplex) -> list[list[Vec]]:
    """Basis of cocycles ``(f_0, f_2)`` in the normalized total complex."""
    n0, n2 = E.normalized_basis(0), E.normalized_basis(2)
    vecs = [(0, v) for v in n0] + [(2, v) for v in n2]
    rows: dict = {}
    for k, (deg, v) in enumerate(vecs):
        parts = []
        if deg == 0:
            parts.append((1, E.b(1)(v)))
        else:
            parts.append((1, E.B(1)(v)))
            parts.append((3, E.b(3)(v)))
        for comp, w in parts:
            for x, c in w.items():
                row = rows.setdefault((comp, x), {})
                row[k] = row.get(k, 0) + c
    out = []
    for coeffs in nullspace(rows.values(), range(len(vecs))):
        f0: Vec = {}
        f2: Vec = {}
        for k, c in coeffs.items():
            add_into(f0 if vecs[k][0] == 0 else f2, vecs[k][1], c)
        out.append([f0, f2])
    return out


# homotopies from invariant elements ----------------------------------------------------------------


class InnerHomotopies:
    """Conjugation ``alpha_b``, inner derivation ``delta_b`` and the homotopies ``theta^i``, ``rho``.

    Each operator substitutes, slot by slot, either a linear image of an input
    argument or the fixed element ``b``; it is stored through the inverse of
    that substitution so applying it costs only the support of the cochain.
    """

    def __init__(self, HA: HAlgebra, b: Mapping[int, Scalar], invertible: bool = True):
        if not is_invariant((HA, b)).ok:
            raise ValueError("b must be invariant")
        self.HA, self.A = HA, HA.algebra
        self.E = EquivariantComplex(HA)
        self.b_elem = {k: v for k, v in b.items() if v != 0}
        self.b_inv = self.A.inverse(b) if invertible else None
        A = self.A
        basis = range(A.dim)
        ident = {a: (((a, 1),)) for a in basis}
        self._id = _invert(ident)
        self._right_binv = None
        self._conj = None
        if self.b_inv is not None:
            self._right_binv = _invert({a: tuple(A.mul({a: 1}, self.b_inv).items()) for a in basis})
            self._conj = _invert({a: tuple(A.mul(A.mul(self.b_elem, {a: 1}), self.b_inv).items()) for a in basis})
        self._comm = _invert({a: tuple(sub(A.mul(self.b_elem, {a: 1}), A.mul({a: 1}, self.b_elem)).items()) for a in basis})
        self._ops: dict = {}

    def _subst_op(self, key, specs_list: list[tuple[Scalar, list]]) -> LinOp:
        """Sum of substitutions; ``specs[s]`` is ``(j, inverse table)`` or ``("b", None)``."""
        if key in self._ops:
            return self._ops[key]
        b = self.b_elem

        def col(y):
            out: dict = {}
            for sign, specs in specs_list:
                choices = []
                for s, (j, inv) in enumerate(specs):
                    if j == "b":
                        c = b.get(y[s])
                        if c is None:
                            choices = None
                            break
                        choices.append(((None, c),))
                    else:
                        choices.append(tuple(((j, xv), c) for xv, c in inv.get(y[s], ())))
                if choices is None:
                    continue
                for picks, c in _expand(choices):
                    slots = sorted(p for p in picks if p is not None)
                    x = tuple(v for _, v in slots) + (y[-1],)
                    out[x] = out.get(x, 0) + sign * c
            return [(x, clean(c)) for x, c in out.items() if c != 0]

        op = self._ops[key] = ColumnOp(col)
        return op

    def _need_inverse(self) -> None:
        if self.b_inv is None:
            raise ValueError("this operator needs an invertible element")

    def alpha(self, n: int) -> LinOp:
        """``f(b a_0 b^-1, ..., b a_n b^-1)``."""
        self._need_inverse()
        return self._subst_op(("alpha", n), [(1, [(j, self._conj) for j in range(n + 1)])])

    def delta(self, n: int) -> LinOp:
        """``sum_i f(a_0, ..., [b, a_i], ..., a_n)``."""
        terms = []
        for i in range(n + 1):
            terms.append((1, [(j, self._comm if j == i else self._id) for j in range(n + 1)]))
        return self._subst_op(("delta", n), terms)

    def theta(self, n: int, i: int) -> LinOp:
        """``C^{n+1} -> C^n``: ``f(a_0 b^-1, b a_1 b^-1, ..., b a_i b^-1, b, a_{i+1}, ...)``."""
        if not 0 <= i <= n:
            raise IndexError("theta index out of range")
        self._need_inverse()
        specs = [(0, self._right_binv)] + [(j, self._conj) for j in range(1, i + 1)] + [("b", None)] + [(j, self._id) for j in range(i + 1, n + 1)]
        return self._subst_op(("theta", n, i), [(1, specs)])

    def rho(self, n: int) -> LinOp:
        """``C^{n+1} -> C^n``: ``sum_i (-1)^i f(a_0, ..., a_i, b, a_{i+1}, ...)``."""
        terms = []
        for i in range(n + 1):
            specs = [(j, self._id) for j in range(i + 1)] + [("b", None)] + [(j, self._id) for j in range(i + 1, n + 1)]
            terms.append(((-1) ** i, specs))
        return self._subst_op(("rho", n), terms)


def _invert(table: Mapping[int, Iterable[tuple[int, Scalar]]]) -> dict:
    inv: dict = {}
    for src, terms in table.items():
        for dst, c in terms:
            inv.setdefault(dst, []).append((src, c))
    return {k: tuple(v) for k, v in inv.items()}


def verify_homotopies(HA: HAlgebra, b: Mapping[int, Scalar], n_max: int) -> Report:
    """The homotopy identities and the cocyclic-map property of ``alpha_b``, ``delta_b``."""
    K = InnerHomotopies(HA, b)
    E = K.E
    rep = Report(f"homotopies {HA.name}")
    for n in range(n_max + 1):
        vecs = E.equivariant_basis(n)
        lab = E.label
        cmp = lambda id_, l, r: compare_on(rep, id_, l, r, vecs, n, lab)
        cmp("theta^n d^(n+1) = alpha_b", K.theta(n, n) @ E.face(n + 1, n + 1), K.alpha(n))
        cmp("theta^0 d^0 = id", K.theta(n, 0) @ E.face(n + 1, 0), Identity())
        anti = K.rho(n) @ E.b(n + 1)
        if n >= 1:
            anti = anti + E.b(n) @ K.rho(n - 1)
        cmp("b rho + rho b = -delta_b", anti, -K.delta(n))
        for name, op in (("alpha_b", K.alpha), ("delta_b", K.delta)):
            cmp(f"{name} T = T {name}", op(n) @ E.cyc(n), E.cyc(n) @ op(n))
            for i in range(n + 2):
                cmp(f"{name} d^{i} = d^{i} {name}", op(n + 1) @ E.face(n + 1, i), E.face(n + 1, i) @ op(n))
            for i in range(n):
                cmp(f"{name} s^{i} = s^{i} {name}", op(n - 1) @ E.degen(n - 1, i), E.degen(n - 1, i) @ op(n))
    return rep
