"""Equivariant cocyclic modules, their (b, B) operators and cohomology.

A degree-n cochain is a sparse dict keyed by ``(a_0, ..., a_n, g)``: the value
``f(a_0, ..., a_n)(g)`` on basis elements of A and H.  Every structure map of
a cocyclic module is a pullback along a multilinear substitution, so it is
represented by a :class:`ColumnOp` that, for an input coordinate, lists the
output coordinates reading it.  Plain cochains on an algebra B are the special
case ``H = k`` (one H coordinate, always 0).
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .actions import HAlgebra, crossed_product
from .hopf import FinAlgebra
from .linalg import Echelon, Vec, add_into, clean, nullspace, rank
from .operators import Identity, LinOp, MatrixOp, Sum, compare_on, power
from .report import Report
from .scalars import Scalar

Terms = tuple


class ColumnOp(LinOp):
    """Pullback operator given by ``col(y) = [(x, c), ...]`` meaning ``(Pf)(x) += c f(y)``."""

    def __init__(self, col: Callable[[tuple], Sequence[tuple[tuple, Scalar]]]):
        self.col = col
        self._cache: dict = {}

    def column(self, y: tuple) -> Sequence:
        hit = self._cache.get(y)
        if hit is None:
            hit = self._cache[y] = tuple(self.col(y))
        return hit

    def __call__(self, v: Mapping) -> Vec:
        out: dict = {}
        get = out.get
        for y, fy in v.items():
            for x, c in self.column(y):
                out[x] = get(x, 0) + c * fy
        return {k: clean(c) for k, c in out.items() if c != 0}


# small helpers on basis terms ------------------------------------------------------------


def _vec_terms(v: Mapping) -> Terms:
    return tuple(sorted(v.items()))


def _product(alg: FinAlgebra, idxs: Sequence[int]) -> Vec:
    """Product of basis elements, left to right."""
    acc: Vec = {idxs[0]: 1} if idxs else alg.one()
    for j in idxs[1:]:
        nxt: Vec = {}
        for i, c in acc.items():
            for k, d in alg.table[i][j]:
                nxt[k] = nxt.get(k, 0) + c * d
        acc = {k: clean(c) for k, c in nxt.items() if c != 0}
    return acc


def _expand(choices: Sequence[Iterable[tuple]]) -> Iterable[tuple[tuple, Scalar]]:
    """Multilinear expansion of a product of sums ``sum_k c_k key_k``."""
    for combo in itertools.product(*choices):
        c = 1
        for _, d in combo:
            c = c * d
        if c != 0:
            yield tuple(k for k, _ in combo), c


def _inverse_table(table: Mapping[Hashable, Iterable[tuple[Hashable, Scalar]]]) -> dict:
    inv: dict = {}
    for src, terms in table.items():
        for dst, c in terms:
            inv.setdefault(dst, []).append((src, c))
    return inv


def _label(labels: Sequence[str], k: int) -> str:
    return labels[k]


# the generic cocyclic module -------------------------------------------------------------


class CocyclicModule:
    """Cochains ``A^{(x)(n+1)} -> F(H)`` with cyclic operator twisted by a table.

    ``twist[(g, a)]`` is the expansion of ``S^-1(g0).a (x) g1`` as terms
    ``((a', g'), c)``; it drives the rotated slot of ``T`` and of the top face.
    """

    def __init__(self, algebra: FinAlgebra, hdim: int, twist: Mapping[tuple[int, int], Terms], hlabels: Sequence[str] | None = None, name: str = ""):
        self.algebra = algebra
        self.hdim = hdim
        self.hlabels = tuple(hlabels) if hlabels is not None else tuple(str(i) for i in range(hdim))
        self.name = name
        self.twist = dict(twist)
        self._twist_inv = _inverse_table(self.twist)
        n = algebra.dim
        self._mul_inv = _inverse_table({(i, j): algebra.table[i][j] for i in range(n) for j in range(n)})
        self._unit = tuple(sorted(algebra.unit.items()))
        self._ops: dict = {}

    # coordinates ------------------------------------------------------------------------

    def dim(self, n: int) -> int:
        return self.algebra.dim ** (n + 1) * self.hdim

    def coords(self, n: int) -> Iterable[tuple]:
        for a in itertools.product(range(self.algebra.dim), repeat=n + 1):
            for g in range(self.hdim):
                yield a + (g,)

    def label(self, x: tuple) -> str:
        la = self.algebra.labels
        return ",".join(la[i] for i in x[:-1]) + " | " + self.hlabels[x[-1]]

    def basis(self, n: int) -> list[Vec]:
        """Basis of the cochain subspace the operators are checked on."""
        return [{x: 1} for x in self.coords(n)]

    def normalized_basis(self, n: int) -> list[Vec]:
        key = ("normalized", n)
        if key not in self._ops:
            eqs = list(self.subspace_equations(n))
            for i in range(n):
                d = self.degen(n - 1, i)
                eqs.extend(_rows_of(d, self.coords(n), self.coords(n - 1)))
            self._ops[key] = nullspace(eqs, self.coords(n))
        return self._ops[key]

    def subspace_equations(self, n: int) -> Iterable[Vec]:
        return ()

    def in_subspace(self, v: Mapping, n: int) -> bool:
        return True

    def _cached(self, key, build):
        op = self._ops.get(key)
        if op is None:
            op = self._ops[key] = build()
        return op

    # structure maps ----------------------------------------------------------------------

    def face(self, n: int, i: int) -> LinOp:
        """``d^i : C^{n-1} -> C^n``."""
        if n < 1 or not 0 <= i <= n:
            raise IndexError(f"face index {i} out of range in degree {n}")
        return self._cached(("face", n, i), lambda: ColumnOp(self._face_col(n, i)))

    def _face_col(self, n: int, i: int):
        mul_inv, twist_inv = self._mul_inv, self._twist_inv

        if i < n:

            def col(y):
                out = []
                for (p, q), c in mul_inv.get(y[i], ()):
                    out.append((y[:i] + (p, q) + y[i + 1:], c))
                return out

        else:

            def col(y):
                # y = (b, a_1, ..., a_{n-1}, g'), where b = a' a_0 and (a', g') = twist(g, a_n)
                out = []
                b, rest, gp = y[0], y[1:-1], y[-1]
                for (ap, a0), c in mul_inv.get(b, ()):
                    for (g, an), d in twist_inv.get((ap, gp), ()):
                        out.append(((a0,) + rest + (an, g), c * d))
                return out

        return col

    def degen(self, n: int, i: int) -> LinOp:
        """``s^i : C^{n+1} -> C^n`` inserting the unit after slot ``i``."""
        if n < 0 or not 0 <= i <= n:
            raise IndexError(f"degeneracy index {i} out of range in degree {n}")
        unit = dict(self._unit)

        def col(y):
            u = unit.get(y[i + 1])
            return [(y[: i + 1] + y[i + 2:], u)] if u is not None else []

        return self._cached(("degen", n, i), lambda: ColumnOp(col))

    def cyc(self, n: int) -> LinOp:
        """``T_n : C^n -> C^n``."""
        if n < 0:
            raise IndexError("negative degree")
        twist_inv = self._twist_inv

        def col(y):
            ap, rest, gp = y[0], y[1:-1], y[-1]
            return [(rest + (an, g), c) for (g, an), c in twist_inv.get((ap, gp), ())]

        return self._cached(("cyc", n), lambda: ColumnOp(col))

    def extra_degen(self, n: int) -> LinOp:
        """Extra degeneracy ``s = s^n T_{n+1} : C^{n+1} -> C^n``."""
        return self._cached(("extra", n), lambda: self.degen(n, n) @ self.cyc(n + 1))

    def b(self, n: int) -> LinOp:
        """Hochschild coboundary ``C^{n-1} -> C^n``."""
        return self._cached(("b", n), lambda: Sum([((-1) ** i, self.face(n, i)) for i in range(n + 1)]))

    def norm(self, n: int) -> LinOp:
        def build():
            t = self.cyc(n)
            terms, cur = [], Identity()
            for i in range(n + 1):
                terms.append(((-1) ** (i * n), cur))
                cur = t @ cur
            return Sum(terms)

        return self._cached(("norm", n), build)

    def B(self, n: int) -> LinOp:
        """Connes' operator ``C^{n+1} -> C^n``: ``N s (1 - (-1)^{n+1} T)``."""
        return self._cached(
            ("B", n),
            lambda: self.norm(n) @ self.extra_degen(n) @ Sum([(1, Identity()), (-((-1) ** (n + 1)), self.cyc(n + 1))]),
        )


def _rows_of(op: LinOp, src_coords: Iterable[tuple], dst_coords: Iterable[tuple]) -> list[Vec]:
    """Rows of ``op`` (as linear forms on the source coordinates), via its columns."""
    rows: dict = {}
    if isinstance(op, ColumnOp):
        for y in src_coords:
            for x, c in op.column(y):
                rows.setdefault(x, {})[y] = c
    else:
        for y in src_coords:
            for x, c in op({y: 1}).items():
                rows.setdefault(x, {})[y] = c
    return [r for r in rows.values() if any(c != 0 for c in r.values())]


# equivariant cochains --------------------------------------------------------------------


def equivariant_twist(HA: HAlgebra, mutated: bool = False) -> dict:
    """``(g, a) -> S^-1(g0).a (x) g1``; ``mutated`` drops the ``S^-1``."""
    H, A = HA.hopf, HA.algebra
    table: dict = {}
    for g in range(H.dim):
        for a in range(A.dim):
            acc: dict = {}
            for (g0, g1), c in H.delta(g):
                h = {g0: 1} if mutated else H.antipode({g0: 1}, -1)
                for ap, d in HA.act(h, {a: 1}).items():
                    add_into(acc, {(ap, g1): c * d})
            table[(g, a)] = _vec_terms(acc)
    return table


class EquivariantComplex(CocyclicModule):
    """The cocyclic module of H-equivariant cochains of an H-module algebra."""

    def __init__(self, HA: HAlgebra, mutated_twist: bool = False):
        H = HA.hopf
        super().__init__(HA.algebra, H.dim, equivariant_twist(HA, mutated_twist), H.labels, name=HA.name)
        self.HA = HA
        self.hopf = H
        A = HA.algebra
        self._act_inv = [_inverse_table({a: HA.action.basis(h, a) for a in range(A.dim)}) for h in range(H.dim)]
        # conj[h][g] = sum over D(h) of S(h1) g h0
        self._conj = []
        for h in range(H.dim):
            row = {}
            for g in range(H.dim):
                acc: dict = {}
                for (h0, h1), c in H.delta(h):
                    for s, d in H.s_table[h1]:
                        add_into(acc, _product(H, (s, g, h0)), c * d)
                row[g] = _vec_terms(acc)
            self._conj.append(row)
        self._conj_inv = [_inverse_table(row) for row in self._conj]

    # the H-action on cochains -------------------------------------------------------------

    def _legs(self, h: int, n: int) -> tuple:
        if n == 0:
            return (((h,), 1),)
        return self.hopf.delta(h, n)

    def action_op(self, n: int, h: int) -> LinOp:
        """``(h.f)(a)(g) = f(h(0).a_0, ..., h(n).a_n)(g)``."""

        def build():
            legs = self._legs(h, n)
            act_inv = self._act_inv

            def col(y):
                out: dict = {}
                for hs, c in legs:
                    choices = [act_inv[hj].get(y[j], ()) for j, hj in enumerate(hs)]
                    for xs, d in _expand(choices):
                        x = xs + (y[-1],)
                        out[x] = out.get(x, 0) + c * d
                return [(x, clean(c)) for x, c in out.items() if c != 0]

            return ColumnOp(col)

        return self._cached(("action", n, h), build)

    def coaction_side_op(self, n: int, h: int) -> LinOp:
        """``f -> f(a)(S(h1) g h0)``."""

        def build():
            inv = self._conj_inv[h]

            def col(y):
                return [(y[:-1] + (g,), c) for g, c in inv.get(y[-1], ())]

            return ColumnOp(col)

        return self._cached(("rho", n, h), build)

    def equivariance_defect(self, n: int, h: int) -> LinOp:
        return self._cached(("defect", n, h), lambda: self.action_op(n, h) - self.coaction_side_op(n, h))

    def cochain_action(self, f: Mapping, n: int, h: Mapping) -> Vec:
        out: Vec = {}
        for i, c in h.items():
            add_into(out, self.action_op(n, i)(f), c)
        return out

    def subspace_equations(self, n: int) -> Iterable[Vec]:
        coords = list(self.coords(n))
        for h in range(self.hdim):
            yield from _rows_of(self.equivariance_defect(n, h), coords, coords)

    def equivariant_basis(self, n: int) -> list[Vec]:
        key = ("equivariant", n)
        if key not in self._ops:
            self._ops[key] = nullspace(self.subspace_equations(n), self.coords(n))
        return self._ops[key]

    def basis(self, n: int) -> list[Vec]:
        return self.equivariant_basis(n)

    def in_subspace(self, v: Mapping, n: int) -> bool:
        return all(not self.equivariance_defect(n, h)(v) for h in range(self.hdim))

    def is_equivariant(self, f: Mapping, n: int) -> Report:
        rep = Report("equivariance")
        for h in range(self.hdim):
            d = self.equivariance_defect(n, h)(f)
            if d:
                at = min(d)
                rep.failed("equivariance", witness={"h": self.hopf.labels[h], "coordinate": self.label(at)}, lhs=self.action_op(n, h)(f).get(at, 0), rhs=self.coaction_side_op(n, h)(f).get(at, 0), degree=n)
                return rep
        rep.passed("equivariance", degree=n)
        return rep


def plain_module(B: FinAlgebra, name: str = "") -> CocyclicModule:
    """The standard cocyclic module of an algebra: faces multiply, ``T`` rotates."""
    twist = {(0, a): (((a, 0), 1),) for a in range(B.dim)}
    return CocyclicModule(B, 1, twist, ("*",), name=name)


# verification of the cocyclic identities ---------------------------------------------------


def check_cocyclic_identities(
    M: CocyclicModule,
    n_max: int,
    rep: Report | None = None,
    basis: Callable[[int], list[Vec]] | None = None,
    preservation: bool = True,
) -> Report:
    """Check every cosimplicial and cyclic relation on a basis of each ``C^m``, ``m <= n_max``."""
    rep = rep if rep is not None else Report(f"cocyclic identities {M.name}".strip())
    basis = basis or M.basis
    lab = M.label
    for m in range(n_max + 1):
        vecs = basis(m)

        def cmp(id_, lhs, rhs):
            compare_on(rep, id_, lhs, rhs, vecs, degree=m, label=lab)

        for j in range(m + 3):
            for i in range(j):
                if j <= m + 2:
                    cmp(f"d^{j} d^{i} = d^{i} d^{j - 1}", M.face(m + 2, j) @ M.face(m + 1, i), M.face(m + 2, i) @ M.face(m + 1, j - 1))
        for j in range(m - 1):
            for i in range(j + 1):
                cmp(f"s^{j} s^{i} = s^{i} s^{j + 1}", M.degen(m - 2, j) @ M.degen(m - 1, i), M.degen(m - 2, i) @ M.degen(m - 1, j + 1))
        for j in range(m + 1):
            for i in range(m + 2):
                lhs = M.degen(m, j) @ M.face(m + 1, i)
                if i < j:
                    rhs = M.face(m, i) @ M.degen(m - 1, j - 1)
                elif i in (j, j + 1):
                    rhs = Identity()
                else:
                    rhs = M.face(m, i - 1) @ M.degen(m - 1, j)
                cmp(f"s^{j} d^{i}", lhs, rhs)
        for i in range(1, m + 2):
            cmp(f"T d^{i} = d^{i - 1} T", M.cyc(m + 1) @ M.face(m + 1, i), M.face(m + 1, i - 1) @ M.cyc(m))
        cmp(f"T d^0 = d^{m + 1}", M.cyc(m + 1) @ M.face(m + 1, 0), M.face(m + 1, m + 1))
        for i in range(1, m):
            cmp(f"T s^{i} = s^{i - 1} T", M.cyc(m - 1) @ M.degen(m - 1, i), M.degen(m - 1, i - 1) @ M.cyc(m))
        if m >= 1:
            cmp(f"T s^0 = s^{m - 1} T^2", M.cyc(m - 1) @ M.degen(m - 1, 0), M.degen(m - 1, m - 1) @ power(M.cyc(m), 2))
            cmp("extra degeneracy T s^0 = s T", M.cyc(m - 1) @ M.degen(m - 1, 0), M.extra_degen(m - 1) @ M.cyc(m))
        cmp(f"T^{m + 1} = id", power(M.cyc(m), m + 1), Identity())
        if preservation:
            _check_preservation(M, rep, m, vecs)
    return rep


def _check_preservation(M: CocyclicModule, rep: Report, m: int, vecs: list[Vec]) -> None:
    maps = [(f"d^{i}", M.face(m + 1, i), m + 1) for i in range(m + 2)]
    maps += [(f"s^{i}", M.degen(m - 1, i), m - 1) for i in range(m)]
    maps.append(("T", M.cyc(m), m))
    for name, op, deg in maps:
        bad = next((k for k, v in enumerate(vecs) if not M.in_subspace(op(v), deg)), None)
        if bad is None:
            rep.passed(f"{name} preserves subspace", degree=m)
        else:
            rep.failed(f"{name} preserves subspace", witness={"basis_vector": bad}, degree=m)


def check_mixed_complex(M: CocyclicModule, n_max: int, rep: Report | None = None, normalized: bool = True) -> Report:
    """``b^2 = 0`` on the subspace; ``B^2 = 0`` and ``bB + Bb = 0`` on normalized cochains."""
    rep = rep if rep is not None else Report("mixed complex")
    lab = M.label
    for m in range(n_max + 1):
        full = M.basis(m)
        compare_on(rep, "b b = 0", M.b(m + 2) @ M.b(m + 1), Sum([]), full, degree=m, label=lab)
        vecs = M.normalized_basis(m) if normalized else full
        tag = "" if normalized else " (unnormalized)"
        if m >= 2:
            compare_on(rep, "B B = 0" + tag, M.B(m - 2) @ M.B(m - 1), Sum([]), vecs, degree=m, label=lab)
        if m >= 1:
            anti = Sum([(1, M.b(m) @ M.B(m - 1)), (1, M.B(m) @ M.b(m + 1))])
            compare_on(rep, "1 - (bB + Bb) = id" + tag, Sum([(1, Identity()), (-1, anti)]), Identity(), vecs, degree=m, label=lab)
        else:
            compare_on(rep, "1 - (bB + Bb) = id" + tag, Sum([(1, Identity()), (-1, M.B(0) @ M.b(1))]), Identity(), vecs, degree=m, label=lab)
        if normalized:
            for name, op, deg in [("b", M.b(m + 1), m + 1)] + ([("B", M.B(m - 1), m - 1)] if m >= 1 else []):
                bad = next((k for k, v in enumerate(vecs) if not _is_normalized(M, op(v), deg)), None)
                rep.record(f"{name} preserves normalized cochains", witness=None if bad is None else {"basis_vector": bad}, degree=m)
    return rep


def _is_normalized(M: CocyclicModule, v: Mapping, n: int) -> bool:
    return M.in_subspace(v, n) and all(not M.degen(n - 1, i)(v) for i in range(n))


def verify_cocyclic(HA: HAlgebra, n_max: int, mutated_twist: bool = False) -> Report:
    """All cocyclic-module identities on the equivariant basis, up to degree ``n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    M = EquivariantComplex(HA, mutated_twist)
    rep = Report(f"cocyclic {HA.name}".strip())
    rep.data["equivariant_dims"] = {m: len(M.equivariant_basis(m)) for m in range(n_max + 1)}
    check_cocyclic_identities(M, n_max, rep)
    check_mixed_complex(M, n_max, rep)
    return rep


# cohomology ---------------------------------------------------------------------------------


def _rank_images(op: LinOp, vecs: Iterable[Mapping], tag=None) -> int:
    e = Echelon()
    n = 0
    for v in vecs:
        w = op(v)
        if tag is not None:
            w = {(tag, k): c for k, c in w.items()}
        if w and e.add(w):
            n += 1
    return n


def hochschild_dims(M: CocyclicModule, n_max: int) -> dict[int, int]:
    out = {}
    ranks = {}
    for n in range(n_max + 2):
        ranks[n] = _rank_images(M.b(n + 1), M.basis(n))
    for n in range(n_max + 1):
        out[n] = len(M.basis(n)) - ranks[n] - (ranks[n - 1] if n >= 1 else 0)
    return out


def _tot_rank(M: CocyclicModule, n: int, columns: int) -> int:
    """Rank of ``D = b + B`` on ``Tot^n`` of the normalized bicomplex, columns ``0..columns``."""
    e = Echelon()
    r = 0
    for k in range(columns + 1):
        j = n - 2 * k
        if j < 0:
            break
        for v in M.normalized_basis(j):
            w: dict = {}
            for key, c in M.b(j + 1)(v).items():
                w[(j + 1, key)] = c
            if j >= 1 and k + 1 <= columns:
                for key, c in M.B(j - 1)(v).items():
                    w[(j - 1, key)] = c
            if w and e.add(w):
                r += 1
    return r


def _tot_dim(M: CocyclicModule, n: int, columns: int) -> int:
    return sum(len(M.normalized_basis(n - 2 * k)) for k in range(columns + 1) if n - 2 * k >= 0)


def cyclic_dims(M: CocyclicModule, n_max: int, columns: int | None = None) -> dict[int, int]:
    columns = n_max + 1 if columns is None else columns
    ranks = {n: _tot_rank(M, n, columns) for n in range(n_max + 1)}
    return {n: _tot_dim(M, n, columns) - ranks[n] - (ranks[n - 1] if n >= 1 else 0) for n in range(n_max + 1)}


def cohomology_dims(M: CocyclicModule, n_max: int) -> Report:
    """Hochschild and cyclic cohomology dimensions, with the truncation-stability check."""
    rep = Report("cohomology")
    hh = hochschild_dims(M, n_max)
    hc = cyclic_dims(M, n_max)
    hc_more = cyclic_dims(M, n_max, columns=n_max + 2)
    rep.record("cyclic dims stable under one more column", witness=None if hc == hc_more else {"with": hc, "more": hc_more})
    rep.data.update({"HH": hh, "HC": hc, "cochain_dims": {n: len(M.basis(n)) for n in range(n_max + 1)}})
    return rep


# the crossed-product comparison maps -------------------------------------------------------


class CrossedComparison:
    """``phi``/``psi`` between equivariant cochains, the bicomplex cells and ``A # H``."""

    def __init__(self, HA: HAlgebra):
        self.HA = HA
        self.H, self.A = HA.hopf, HA.algebra
        self.E = EquivariantComplex(HA)
        self.cross = crossed_product(HA)
        self.P = plain_module(self.cross, name="crossed product")
        self.X = Cylindrical(HA)
        self._ops: dict = {}

    def _cached(self, key, build):
        if key not in self._ops:
            self._ops[key] = build()
        return self._ops[key]

    def _act_vec(self, h: Mapping, a: int) -> Vec:
        return self.HA.act(h, {a: 1})

    def _phi_row(self, n: int, x: tuple, split_eval: bool) -> dict:
        H, nh = self.H, self.H.dim
        a = [b // nh for b in x[: n + 1]]
        g = [b % nh for b in x[: n + 1]]
        out: dict = {}
        for legs_combo, c in _expand([H.delta(g[j], j + 1) for j in range(n + 1)]):
            args = []
            for k in range(n + 1):
                prod = _product(H, [legs_combo[j][j - k] for j in range(k, n + 1)])
                args.append(self.HA.act(H.antipode(prod, -1), {a[k]: 1}).items())
            evals = [legs_combo[j][j + 1] for j in range(n + 1)]
            if split_eval:
                ev_choices = [((e, 1),) for e in evals]
            else:
                ev_choices = [tuple(_product(H, evals).items())]
            for keys, d in _expand(args + ev_choices):
                out[keys] = out.get(keys, 0) + c * d
        return {k: clean(v) for k, v in out.items() if v != 0}

    def phi(self, n: int) -> LinOp:
        """Equivariant cochains to cochains on the crossed product."""
        return self._cached(("phi", n), lambda: MatrixOp.from_rows(self.P.coords(n), lambda x: self._phi_row(n, x, False)))

    def phi_cells(self, n: int) -> LinOp:
        """Diagonal bicomplex cells ``X_{n,n}`` to cochains on the crossed product."""
        return self._cached(("phix", n), lambda: MatrixOp.from_rows(self.P.coords(n), lambda x: self._phi_row(n, x, True)))

    def psi(self, n: int) -> LinOp:
        """Cochains on the crossed product to diagonal cells ``X_{n,n}``."""
        H, nh = self.H, self.H.dim

        def row(x):
            a, g = x[: n + 1], x[n + 1:]
            out: dict = {}
            for legs_combo, c in _expand([H.delta(g[j], j + 1) for j in range(n + 1)]):
                slots = []
                for m in range(n + 1):
                    prod = _product(H, [legs_combo[j][m] for j in range(m, n + 1)])
                    acted = self.HA.act(prod, {a[m]: 1})
                    hpart = legs_combo[m][m + 1]
                    slots.append(tuple((b * nh + hpart, d) for b, d in acted.items()))
                for keys, d in _expand(slots):
                    y = keys + (0,)
                    out[y] = out.get(y, 0) + c * d
            return {k: clean(v) for k, v in out.items() if v != 0}

        return self._cached(("psi", n), lambda: MatrixOp.from_rows(self.X.coords(n, n), row))

    def iota(self, n: int) -> LinOp:
        """``f -> f(a)(g_0 ... g_n)`` from equivariant cochains to ``X_{n,n}``."""
        H = self.H

        def row(x):
            a, g = x[: n + 1], x[n + 1:]
            return {a + (k,): c for k, c in _product(H, list(g)).items()}

        return self._cached(("iota", n), lambda: MatrixOp.from_rows(self.X.coords(n, n), row))

    def verify(self, n_max: int) -> Report:
        rep = Report(f"phi-psi {self.HA.name}")
        E, P, X = self.E, self.P, self.X
        for n in range(n_max + 1):
            eq = E.equivariant_basis(n)
            lab = E.label
            phi = self.phi(n)
            compare_on(rep, "phi = phi_cells o iota", phi, self.phi_cells(n) @ self.iota(n), eq, n, lab)
            compare_on(rep, "psi o phi = iota", self.psi(n) @ phi, self.iota(n), eq, n, lab)
            cells = [{x: 1} for x in X.coords(n, n)]
            plain = [{x: 1} for x in P.coords(n)]
            compare_on(rep, "psi o phi_cells = id", self.psi(n) @ self.phi_cells(n), Identity(), cells, n)
            compare_on(rep, "phi_cells o psi = id", self.phi_cells(n) @ self.psi(n), Identity(), plain, n)
            compare_on(rep, "phi T = tau phi", phi @ E.cyc(n), P.cyc(n) @ phi, eq, n, lab)
            compare_on(rep, "phi_cells diag(tau) = tau phi_cells", self.phi_cells(n) @ X.diag_cyc(n), P.cyc(n) @ self.phi_cells(n), cells, n)
            if n >= 1:
                prev = E.equivariant_basis(n - 1)
                prev_cells = [{x: 1} for x in X.coords(n - 1, n - 1)]
                for i in range(n + 1):
                    compare_on(rep, f"phi d^{i} = d^{i} phi", phi @ E.face(n, i), P.face(n, i) @ self.phi(n - 1), prev, n - 1, lab)
                    compare_on(rep, f"phi_cells diag(d^{i}) = d^{i} phi_cells", self.phi_cells(n) @ X.diag_face(n, i), P.face(n, i) @ self.phi_cells(n - 1), prev_cells, n - 1)
            if n < n_max:
                nxt = E.equivariant_basis(n + 1)
                nxt_cells = [{x: 1} for x in X.coords(n + 1, n + 1)]
                for i in range(n + 1):
                    compare_on(rep, f"phi s^{i} = s^{i} phi", phi @ E.degen(n, i), P.degen(n, i) @ self.phi(n + 1), nxt, n + 1, lab)
                    compare_on(rep, f"phi_cells diag(s^{i}) = s^{i} phi_cells", self.phi_cells(n) @ X.diag_degen(n, i), P.degen(n, i) @ self.phi_cells(n + 1), nxt_cells, n + 1)
        return rep


def verify_phi_psi(HA: HAlgebra, n_max: int) -> Report:
    return CrossedComparison(HA).verify(n_max)


# the cocylindrical module X_{p,q} ------------------------------------------------------------


class Cylindrical:
    """Cells ``X_{p,q} = Hom(A^{(x)(p+1)} (x) H^{(x)(q+1)}, k)``; coordinates ``(a_0..a_p, g_0..g_q)``.

    Operators are pullbacks written on the target coordinate.  Cell degrees are
    inferred from the key length, so the same row function serves every ``(p, q)``.
    """

    def __init__(self, HA: HAlgebra, mutate_vertical: bool = False):
        self.HA, self.H, self.A = HA, HA.hopf, HA.algebra
        self.mutate_vertical = mutate_vertical
        self._ops: dict = {}

    def coords(self, p: int, q: int) -> Iterable[tuple]:
        for a in itertools.product(range(self.A.dim), repeat=p + 1):
            for g in itertools.product(range(self.H.dim), repeat=q + 1):
                yield a + g

    def label(self, p: int):
        la, lh = self.A.labels, self.H.labels
        return lambda x: ",".join(la[i] for i in x[: p + 1]) + " | " + ",".join(lh[i] for i in x[p + 1:])

    def cells(self, p: int, q: int) -> list[Vec]:
        return [{x: 1} for x in self.coords(p, q)]

    def _op(self, key, p, q, row):
        if key not in self._ops:
            self._ops[key] = MatrixOp.from_rows(self.coords(p, q), row)
        return self._ops[key]

    def _rotate_a(self, a_last: int, gs: Sequence[int]) -> Iterable[tuple[tuple[int, tuple], Scalar]]:
        """Terms of ``S^-1(g_0(0)...g_q(0)).a_last`` with the remaining legs ``g_j(1)``."""
        H = self.H
        for combo, c in _expand([H.delta(g) for g in gs]):
            prod = _product(H, [legs[0] for legs in combo])
            rest = tuple(legs[1] for legs in combo)
            for ap, d in self.HA.act(H.antipode(prod, -1), {a_last: 1}).items():
                yield (ap, rest), c * d

    # horizontal
    def tau(self, p: int, q: int) -> LinOp:
        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            out: dict = {}
            for (ap, rest), c in self._rotate_a(a[p], g):
                y = (ap,) + a[:p] + rest
                out[y] = out.get(y, 0) + c
            return out

        return self._op(("tau", p, q), p, q, row)

    def face(self, p: int, q: int, i: int) -> LinOp:
        """Horizontal ``d^i : X_{p-1,q} -> X_{p,q}``."""
        if p < 1 or not 0 <= i <= p:
            raise IndexError("horizontal face index out of range")
        A = self.A

        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            out: dict = {}
            if i < p:
                for k, c in A.table[a[i]][a[i + 1]]:
                    out[a[:i] + (k,) + a[i + 2:] + g] = c
                return out
            for (ap, rest), c in self._rotate_a(a[p], g):
                for k, d in A.table[ap][a[0]]:
                    y = (k,) + a[1:p] + rest
                    out[y] = out.get(y, 0) + c * d
            return out

        return self._op(("face", p, q, i), p, q, row)

    def degen(self, p: int, q: int, i: int) -> LinOp:
        """Horizontal ``s^i : X_{p+1,q} -> X_{p,q}``."""
        if not 0 <= i <= p:
            raise IndexError("horizontal degeneracy index out of range")
        unit = self.A.unit

        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            return {a[: i + 1] + (u,) + a[i + 1:] + g: c for u, c in unit.items()}

        return self._op(("degen", p, q, i), p, q, row)

    # vertical
    def _act_diag(self, g: int, a: Sequence[int], extra_legs: int) -> Iterable[tuple[tuple, tuple, Scalar]]:
        """``g(0).(a_0..a_p)`` diagonally, returning the acted slots and the remaining legs."""
        H = self.H
        p = len(a) - 1
        for legs, c in H.delta(g, p + extra_legs):
            choices = [self.HA.action.basis(legs[j], a[j]) for j in range(p + 1)]
            for keys, d in _expand(choices):
                yield keys, legs[p + 1:], c * d

    def taubar(self, p: int, q: int) -> LinOp:
        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            out: dict = {}
            for keys, rest, c in self._act_diag(g[q], a, 1):
                if self.mutate_vertical:
                    y = keys + g[:q] + rest
                else:
                    y = keys + rest + g[:q]
                out[y] = out.get(y, 0) + c
            return out

        return self._op(("taubar", p, q), p, q, row)

    def facebar(self, p: int, q: int, i: int) -> LinOp:
        """Vertical ``d^i : X_{p,q-1} -> X_{p,q}``."""
        if q < 1 or not 0 <= i <= q:
            raise IndexError("vertical face index out of range")
        H = self.H

        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            out: dict = {}
            if i < q:
                for k, c in H.table[g[i]][g[i + 1]]:
                    out[a + g[:i] + (k,) + g[i + 2:]] = c
                return out
            for keys, rest, c in self._act_diag(g[q], a, 1):
                for k, d in H.table[rest[0]][g[0]]:
                    y = keys + (k,) + g[1:q]
                    out[y] = out.get(y, 0) + c * d
            return out

        return self._op(("facebar", p, q, i), p, q, row)

    def degenbar(self, p: int, q: int, i: int) -> LinOp:
        """Vertical ``s^i : X_{p,q+1} -> X_{p,q}``."""
        if not 0 <= i <= q:
            raise IndexError("vertical degeneracy index out of range")
        unit = self.H.unit

        def row(x):
            a, g = x[: p + 1], x[p + 1:]
            return {a + g[: i + 1] + (u,) + g[i + 1:]: c for u, c in unit.items()}

        return self._op(("degenbar", p, q, i), p, q, row)

    # diagonal
    def diag_cyc(self, n: int) -> LinOp:
        return self.taubar(n, n) @ self.tau(n, n)

    def diag_face(self, n: int, i: int) -> LinOp:
        """``X_{n-1,n-1} -> X_{n,n}``."""
        return self.facebar(n, n, i) @ self.face(n, n - 1, i)

    def diag_degen(self, n: int, i: int) -> LinOp:
        """``X_{n+1,n+1} -> X_{n,n}``."""
        return self.degenbar(n, n, i) @ self.degen(n, n + 1, i)


def verify_cylindrical(HA: HAlgebra, p_max: int, q_max: int, mutate_vertical: bool = False) -> Report:
    """Bi-paracocyclic relations, commutation of the two directions and cylindricity."""
    X = Cylindrical(HA, mutate_vertical)
    rep = Report(f"cylindrical {HA.name}")
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            cells = X.cells(p, q)
            lab = X.label(p)
            deg = None

            def cmp(id_, lhs, rhs, vecs=cells):
                compare_on(rep, f"{id_} [p={p},q={q}]", lhs, rhs, vecs, deg, lab)

            tau, taubar = X.tau(p, q), X.taubar(p, q)
            cmp("tau taubar = taubar tau", tau @ taubar, taubar @ tau)
            cmp("tau^(p+1) taubar^(q+1) = id", power(tau, p + 1) @ power(taubar, q + 1), Identity())
            # horizontal faces/degeneracies against vertical ones
            for i in range(p + 2):
                cmp(f"taubar d^{i} = d^{i} taubar", X.taubar(p + 1, q) @ X.face(p + 1, q, i), X.face(p + 1, q, i) @ taubar)
                for j in range(q + 2):
                    cmp(f"dbar^{j} d^{i} = d^{i} dbar^{j}", X.facebar(p + 1, q + 1, j) @ X.face(p + 1, q, i), X.face(p + 1, q + 1, i) @ X.facebar(p, q + 1, j))
            for j in range(q + 2):
                cmp(f"tau dbar^{j} = dbar^{j} tau", X.tau(p, q + 1) @ X.facebar(p, q + 1, j), X.facebar(p, q + 1, j) @ tau)
            if p >= 1:
                for i in range(p):
                    cmp(f"taubar s^{i} = s^{i} taubar", X.taubar(p - 1, q) @ X.degen(p - 1, q, i), X.degen(p - 1, q, i) @ taubar)
                    for j in range(q + 1):
                        cmp(f"sbar^{j} s^{i} = s^{i} sbar^{j}", X.degenbar(p - 1, q, j) @ X.degen(p - 1, q + 1, i), X.degen(p - 1, q, i) @ X.degenbar(p, q, j), X.cells(p, q + 1))
                    for j in range(q + 2):
                        cmp(f"dbar^{j} s^{i} = s^{i} dbar^{j}", X.facebar(p - 1, q + 1, j) @ X.degen(p - 1, q, i), X.degen(p - 1, q + 1, i) @ X.facebar(p, q + 1, j))
            if q >= 1:
                for j in range(q):
                    cmp(f"tau sbar^{j} = sbar^{j} tau", X.tau(p, q - 1) @ X.degenbar(p, q - 1, j), X.degenbar(p, q - 1, j) @ tau)
                    for i in range(p + 2):
                        cmp(f"sbar^{j} d^{i} = d^{i} sbar^{j}", X.degenbar(p + 1, q - 1, j) @ X.face(p + 1, q, i), X.face(p + 1, q - 1, i) @ X.degenbar(p, q - 1, j))
            _paracyclic(rep, X, p, q, cells, lab)
    return rep


def _paracyclic(rep: Report, X: Cylindrical, p: int, q: int, cells, lab) -> None:
    """Paracocyclic relations in each direction, from source cell ``(p, q)``."""

    def cmp(id_, lhs, rhs):
        compare_on(rep, f"{id_} [p={p},q={q}]", lhs, rhs, cells, None, lab)

    # horizontal
    for j in range(p + 3):
        for i in range(j):
            cmp(f"d^{j} d^{i} = d^{i} d^{j - 1}", X.face(p + 2, q, j) @ X.face(p + 1, q, i), X.face(p + 2, q, i) @ X.face(p + 1, q, j - 1))
    for i in range(1, p + 2):
        cmp(f"tau d^{i} = d^{i - 1} tau", X.tau(p + 1, q) @ X.face(p + 1, q, i), X.face(p + 1, q, i - 1) @ X.tau(p, q))
    cmp("tau d^0 = d^last", X.tau(p + 1, q) @ X.face(p + 1, q, 0), X.face(p + 1, q, p + 1))
    for j in range(p + 1):
        for i in range(p + 2):
            lhs = X.degen(p, q, j) @ X.face(p + 1, q, i)
            if i < j:
                rhs = X.face(p, q, i) @ X.degen(p - 1, q, j - 1)
            elif i in (j, j + 1):
                rhs = Identity()
            else:
                rhs = X.face(p, q, i - 1) @ X.degen(p - 1, q, j)
            cmp(f"s^{j} d^{i}", lhs, rhs)
    for i in range(1, p):
        cmp(f"tau s^{i} = s^{i - 1} tau", X.tau(p - 1, q) @ X.degen(p - 1, q, i), X.degen(p - 1, q, i - 1) @ X.tau(p, q))
    if p >= 1:
        cmp("tau s^0 = s^last tau^2", X.tau(p - 1, q) @ X.degen(p - 1, q, 0), X.degen(p - 1, q, p - 1) @ power(X.tau(p, q), 2))
    # vertical
    for j in range(q + 3):
        for i in range(j):
            cmp(f"dbar^{j} dbar^{i} = dbar^{i} dbar^{j - 1}", X.facebar(p, q + 2, j) @ X.facebar(p, q + 1, i), X.facebar(p, q + 2, i) @ X.facebar(p, q + 1, j - 1))
    for i in range(1, q + 2):
        cmp(f"taubar dbar^{i} = dbar^{i - 1} taubar", X.taubar(p, q + 1) @ X.facebar(p, q + 1, i), X.facebar(p, q + 1, i - 1) @ X.taubar(p, q))
    cmp("taubar dbar^0 = dbar^last", X.taubar(p, q + 1) @ X.facebar(p, q + 1, 0), X.facebar(p, q + 1, q + 1))
    for j in range(q + 1):
        for i in range(q + 2):
            lhs = X.degenbar(p, q, j) @ X.facebar(p, q + 1, i)
            if i < j:
                rhs = X.facebar(p, q, i) @ X.degenbar(p, q - 1, j - 1)
            elif i in (j, j + 1):
                rhs = Identity()
            else:
                rhs = X.facebar(p, q, i - 1) @ X.degenbar(p, q - 1, j)
            cmp(f"sbar^{j} dbar^{i}", lhs, rhs)
    for i in range(1, q):
        cmp(f"taubar sbar^{i} = sbar^{i - 1} taubar", X.taubar(p, q - 1) @ X.degenbar(p, q - 1, i), X.degenbar(p, q - 1, i - 1) @ X.taubar(p, q))
    if q >= 1:
        cmp("taubar sbar^0 = sbar^last taubar^2", X.taubar(p, q - 1) @ X.degenbar(p, q - 1, 0), X.degenbar(p, q - 1, q - 1) @ power(X.taubar(p, q), 2))


def cylindricity_as_displayed(HA: HAlgebra, p_max: int, q_max: int) -> Report:
    """``taubar^(p+1) tau^(q+1) = id`` with the exponents attached as displayed."""
    X = Cylindrical(HA)
    rep = Report("cylindricity with displayed exponents")
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            compare_on(rep, f"taubar^(p+1) tau^(q+1) = id [p={p},q={q}]", power(X.taubar(p, q), p + 1) @ power(X.tau(p, q), q + 1), Identity(), X.cells(p, q), None, X.label(p))
    return rep


# the theta-twisted complex -------------------------------------------------------------------


def _matrix_power_map(table: Mapping[int, Mapping[int, Scalar]], inverse: Mapping[int, Mapping[int, Scalar]], m: int, dim: int) -> dict:
    cur = {a: {a: 1} for a in range(dim)}
    step = table if m >= 0 else inverse
    for _ in range(abs(m)):
        nxt = {}
        for a in range(dim):
            acc: dict = {}
            for b, c in cur[a].items():
                add_into(acc, step.get(b, {}), c)
            nxt[a] = acc
        cur = nxt
    return cur


def verify_automorphism(A: FinAlgebra, theta: Mapping[int, Mapping[int, Scalar]]) -> Report:
    rep = Report("algebra automorphism")
    n = A.dim

    def apply(v):
        out: Vec = {}
        for a, c in v.items():
            add_into(out, theta.get(a, {}), c)
        return out

    bad = None
    for i, j in itertools.product(range(n), repeat=2):
        lhs = apply(A.mul({i: 1}, {j: 1}))
        rhs = A.mul(apply({i: 1}), apply({j: 1}))
        if lhs != rhs:
            bad = ((A.labels[i], A.labels[j]), lhs, rhs)
            break
    rep.record("multiplicative", *(bad if bad else (None,)))
    rep.record("unital", None if apply(A.unit) == A.unit else "1", apply(A.unit), A.unit)
    r = rank([apply({a: 1}) for a in range(n)])
    rep.record("bijective", None if r == n else {"rank": r})
    return rep


class ThetaTwisted(CocyclicModule):
    """The twisted cyclic operators: top face and ``t`` apply ``theta^m`` to the rotated slot."""

    def __init__(self, A: FinAlgebra, theta: Mapping[int, Mapping[int, Scalar]], m: int = 1, name: str = "theta-twisted"):
        rep = verify_automorphism(A, theta)
        if not rep.ok:
            raise ValueError(f"theta is not an algebra automorphism: {rep.failures()[0].id}")
        n = A.dim
        self.theta = {a: dict(theta.get(a, {})) for a in range(n)}
        inv_rows = _invert_map(self.theta, n)
        self.theta_inv = inv_rows
        self.m = m
        pm = _matrix_power_map(self.theta, inv_rows, m, n)
        twist = {(0, a): _vec_terms({(b, 0): c for b, c in pm[a].items()}) for a in range(n)}
        super().__init__(A, 1, twist, ("*",), name=name)

    def subspace_equations(self, n: int) -> Iterable[Vec]:
        """``f(theta a_0, ..., theta a_n) - f(a_0, ..., a_n) = 0``."""
        th = self.theta
        for x in self.coords(n):
            row: dict = {}
            for keys, c in _expand([tuple(th[a].items()) for a in x[:-1]]):
                y = keys + (0,)
                row[y] = row.get(y, 0) + c
            row[x] = row.get(x, 0) - 1
            row = {k: v for k, v in row.items() if v != 0}
            if row:
                yield row

    def basis(self, n: int) -> list[Vec]:
        key = ("invariant", n)
        if key not in self._ops:
            self._ops[key] = nullspace(self.subspace_equations(n), self.coords(n))
        return self._ops[key]

    def in_subspace(self, v: Mapping, n: int) -> bool:
        th = self.theta
        for x in self.coords(n):
            acc = 0
            for keys, c in _expand([tuple(th[a].items()) for a in x[:-1]]):
                acc = acc + c * v.get(keys + (0,), 0)
            if acc != v.get(x, 0):
                return False
        return True


def _invert_map(table: Mapping[int, Mapping[int, Scalar]], n: int) -> dict:
    from .linalg import mat_inverse

    # column a of the matrix holds theta(e_a)
    mat = [[table[a].get(b, 0) for a in range(n)] for b in range(n)]
    inv = mat_inverse(mat)
    return {a: {b: inv[b][a] for b in range(n) if inv[b][a] != 0} for a in range(n)}


def verify_theta_twisted(A: FinAlgebra, theta, m: int, n_max: int) -> Report:
    M = ThetaTwisted(A, theta, m)
    rep = Report(f"theta-twisted m={m}")
    rep.data["invariant_dims"] = {k: len(M.basis(k)) for k in range(n_max + 1)}
    check_cocyclic_identities(M, n_max, rep)
    return rep


# the matrix trace map -------------------------------------------------------------------------


def matrix_ring(HA: HAlgebra, r: int) -> HAlgebra:
    """``A (x) M_r(k)`` with H acting on the A factor only."""
    from .actions import matrix_algebra_nondiagonal, trivial_rep

    return matrix_algebra_nondiagonal(HA, trivial_rep(HA.hopf, r))


def trace_map(E: EquivariantComplex, EM: EquivariantComplex, r: int, n: int) -> LinOp:
    """``(tr f)(a_0 (x) m_0, ...)(g) = tr(m_0 ... m_n) f(a_0, ...)(g)`` on matrix units."""

    def row(x):
        parts = [(idx // (r * r), (idx % (r * r)) // r, idx % r) for idx in x[:-1]]
        for j in range(n + 1):
            if parts[j][2] != parts[(j + 1) % (n + 1)][1]:
                return {}
        return {tuple(p[0] for p in parts) + (x[-1],): 1}

    return MatrixOp.from_rows(EM.coords(n), row)


def verify_trace_map(HA: HAlgebra, r: int, n_max: int) -> Report:
    """Equivariance of ``tr f`` and commutation with every structure map."""
    E = EquivariantComplex(HA)
    MA = matrix_ring(HA, r)
    EM = EquivariantComplex(MA)
    rep = Report(f"trace map r={r}")
    tr = {n: trace_map(E, EM, r, n) for n in range(n_max + 2)}
    for n in range(n_max + 1):
        eq = E.equivariant_basis(n)
        lab = E.label
        bad = next((k for k, v in enumerate(eq) if not EM.in_subspace(tr[n](v), n)), None)
        rep.record("tr f equivariant", None if bad is None else {"basis_vector": bad}, degree=n)
        compare_on(rep, "tr T = T tr", tr[n] @ E.cyc(n), EM.cyc(n) @ tr[n], eq, n, lab)
        for i in range(n + 2):
            compare_on(rep, f"tr d^{i} = d^{i} tr", tr[n + 1] @ E.face(n + 1, i), EM.face(n + 1, i) @ tr[n], eq, n, lab)
        if n >= 1:
            for i in range(n):
                compare_on(rep, f"tr s^{i} = s^{i} tr", tr[n - 1] @ E.degen(n - 1, i), EM.degen(n - 1, i) @ tr[n], eq, n, lab)
    return rep
