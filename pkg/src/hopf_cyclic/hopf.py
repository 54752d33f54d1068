"""Finite-dimensional algebras and Hopf algebras given by structure constants.

Elements are sparse coefficient dicts ``{basis index: scalar}``.  Iterated
coproducts follow the convention ``D^(n) = (D x id) o D^(n-1)`` and legs are
numbered ``0..n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Vec, add_into, clean, mat_inverse, scale
from .report import Report, VerificationError
from .scalars import Scalar

Terms = tuple  # tuple of (index, coef)


def _as_terms(v: Mapping[int, Scalar]) -> Terms:
    return tuple(sorted((k, clean(c)) for k, c in v.items() if c != 0))


class FinAlgebra:
    """Unital associative algebra on a finite basis."""

    def __init__(self, labels: Sequence[str], mult: Mapping[tuple[int, int], Mapping[int, Scalar]], unit: Mapping[int, Scalar], validate: bool = True):
        self.labels = tuple(labels)
        n = len(self.labels)
        if n == 0:
            raise ValueError("algebra must have positive dimension")
        self.table: list[list[Terms]] = [[() for _ in range(n)] for _ in range(n)]
        for (i, j), v in mult.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in v):
                raise ValueError(f"structure constant index out of range at {(i, j)}")
            self.table[i][j] = _as_terms(v)
        self.unit: Vec = {k: clean(c) for k, c in unit.items() if c != 0}
        if validate:
            rep = self.verify()
            if not rep.ok:
                raise VerificationError(rep)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> Vec:
        return {i: 1}

    def one(self) -> Vec:
        return dict(self.unit)

    def _check(self, x: Mapping) -> None:
        for k in x:
            if not 0 <= k < self.dim:
                raise ValueError(f"index {k} out of range for dimension {self.dim}")

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        self._check(x)
        self._check(y)
        out: Vec = {}
        tab = self.table
        for i, a in x.items():
            row = tab[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    v = out.get(k, 0) + ab * c
                    if v == 0:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return {k: clean(v) for k, v in out.items()}

    def mul_many(self, xs: Iterable[Mapping]) -> Vec:
        acc = self.one()
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def power(self, x: Mapping, n: int) -> Vec:
        return self.mul_many([x] * n)

    def left_matrix(self, x: Mapping) -> list[list]:
        """Matrix of ``y -> x*y`` (columns indexed by input basis)."""
        n = self.dim
        m = [[0] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.mul(x, {j: 1}).items():
                m[k][j] = c
        return m

    def inverse(self, x: Mapping) -> Vec:
        """Two-sided inverse; raises ZeroDivisionError if ``x`` is not a unit."""
        minv = mat_inverse(self.left_matrix(x))
        one = self.one()
        y = {}
        for i in range(self.dim):
            acc = 0
            for k, c in one.items():
                acc = acc + minv[i][k] * c
            if acc != 0:
                y[i] = clean(acc)
        if self.mul(y, x) != one:
            raise ZeroDivisionError("element has a right inverse only")
        return y

    def show(self, x: Mapping) -> dict:
        return {self.labels[k]: c for k, c in sorted(x.items())}

    def verify(self) -> Report:
        rep = Report("algebra")
        _check_associative(self, rep)
        _check_unit(self, rep)
        return rep


def _check_associative(alg: FinAlgebra, rep: Report) -> None:
    n = alg.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = alg.mul(alg.mul({i: 1}, {j: 1}), {k: 1})
        rhs = alg.mul({i: 1}, alg.mul({j: 1}, {k: 1}))
        if lhs != rhs:
            lab = alg.labels
            rep.failed("associativity", witness=(lab[i], lab[j], lab[k]), lhs=alg.show(lhs), rhs=alg.show(rhs))
            return
    rep.passed("associativity")


def _check_unit(alg: FinAlgebra, rep: Report) -> None:
    one = alg.one()
    for i in range(alg.dim):
        for lhs in (alg.mul(one, {i: 1}), alg.mul({i: 1}, one)):
            if lhs != {i: 1}:
                rep.failed("unit", witness=(alg.labels[i],), lhs=alg.show(lhs), rhs=alg.show({i: 1}))
                return
    rep.passed("unit")


@dataclass(frozen=True)
class TensorElem:
    """Sparse element of ``V_0 x ... x V_{n}`` keyed by multi-index."""

    dims: tuple[int, ...]
    terms: Mapping[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        for key, c in self.terms.items():
            if len(key) != len(self.dims) or any(not 0 <= i < d for i, d in zip(key, self.dims)):
                raise ValueError(f"multi-index {key} outside dims {self.dims}")
            if c == 0:
                raise ValueError("stored zero coefficient")

    @staticmethod
    def build(dims: Sequence[int], pairs: Iterable[tuple[tuple[int, ...], Scalar]]) -> TensorElem:
        acc: dict = {}
        for key, c in pairs:
            add_into(acc, {tuple(key): c})
        return TensorElem(tuple(dims), acc)

    @property
    def arity(self) -> int:
        return len(self.dims)

    def __add__(self, other: TensorElem) -> TensorElem:
        self._same(other)
        return TensorElem(self.dims, add_into(dict(self.terms), other.terms))

    def __sub__(self, other: TensorElem) -> TensorElem:
        self._same(other)
        return TensorElem(self.dims, add_into(dict(self.terms), other.terms, -1))

    def scale(self, c: Scalar) -> TensorElem:
        return TensorElem(self.dims, scale(self.terms, c))

    def _same(self, other: TensorElem) -> None:
        if self.dims != other.dims:
            raise ValueError(f"tensor shape mismatch {self.dims} vs {other.dims}")

    def __eq__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.dims == other.dims and dict(self.terms) == dict(other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def contract(self, leg: int, f: Callable[[int], Mapping[int, Scalar]], out_dim: int | None = None) -> TensorElem:
        """Apply the linear map ``f`` (given on basis vectors) to one leg.

        ``out_dim == 0`` means ``f`` is scalar valued and the leg is removed;
        in that case ``f(i)`` must return ``{0: value}``.
        """
        if not 0 <= leg < self.arity:
            raise IndexError(f"leg {leg} out of range for arity {self.arity}")
        dim = self.dims[leg] if out_dim is None else out_dim
        acc: dict = {}
        for key, c in self.terms.items():
            for j, d in f(key[leg]).items():
                new = key[:leg] + ((j,) if dim else ()) + key[leg + 1:]
                add_into(acc, {new: c * d})
        dims = self.dims[:leg] + ((dim,) if dim else ()) + self.dims[leg + 1:]
        return TensorElem(dims, acc)

    def multiply_legs(self, alg: FinAlgebra) -> Vec:
        """Collapse all legs with the product of ``alg`` (left to right)."""
        acc: Vec = {}
        for key, c in self.terms.items():
            prod = {key[0]: 1}
            for k in key[1:]:
                prod = alg.mul(prod, {k: 1})
            add_into(acc, prod, c)
        return acc

    def flip(self) -> TensorElem:
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        return TensorElem(self.dims[::-1], {(b, a): c for (a, b), c in self.terms.items()})

    def mul(self, other: TensorElem, algs: Sequence[FinAlgebra]) -> TensorElem:
        """Leg-wise product in ``A_0 x ... x A_n``."""
        self._same(other)
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = [algs[i].mul({a: 1}, {b: 1}) for i, (a, b) in enumerate(zip(k1, k2))]
                for combo in itertools.product(*(lg.items() for lg in legs)):
                    c = c1 * c2
                    for _, x in combo:
                        c = c * x
                    add_into(acc, {tuple(k for k, _ in combo): c})
        return TensorElem(self.dims, acc)


class FinHopf(FinAlgebra):
    """Hopf algebra with bijective antipode, validated on construction."""

    def __init__(
        self,
        labels: Sequence[str],
        mult: Mapping[tuple[int, int], Mapping[int, Scalar]],
        unit: Mapping[int, Scalar],
        coprod: Mapping[int, Mapping[tuple[int, int], Scalar]],
        counit: Sequence[Scalar],
        antipode: Mapping[int, Mapping[int, Scalar]],
        antipode_inv: Mapping[int, Mapping[int, Scalar]],
        validate: bool = True,
    ):
        super().__init__(labels, mult, unit, validate=False)
        n = self.dim
        self.coprod_table: list[tuple] = [tuple(sorted((k, clean(c)) for k, c in coprod.get(i, {}).items() if c != 0)) for i in range(n)]
        self.counit_table: tuple = tuple(clean(c) for c in counit)
        self.s_table: list[Terms] = [_as_terms(antipode.get(i, {})) for i in range(n)]
        self.sinv_table: list[Terms] = [_as_terms(antipode_inv.get(i, {})) for i in range(n)]
        if len(self.counit_table) != n:
            raise ValueError("counit has wrong length")
        self._delta_cache: dict = {}
        if validate:
            rep = self.verify_hopf_axioms()
            if not rep.ok:
                raise VerificationError(rep)

    @classmethod
    def unchecked(cls, *args, **kwargs) -> FinHopf:
        """Construct without validation (for exercising the verifier)."""
        kwargs["validate"] = False
        return cls(*args, **kwargs)

    # basic maps -------------------------------------------------------------------

    def counit(self, x: Mapping) -> Scalar:
        self._check(x)
        acc = 0
        for i, c in x.items():
            acc = acc + c * self.counit_table[i]
        return clean(acc)

    def antipode(self, x: Mapping, power: int = 1) -> Vec:
        self._check(x)
        if power not in (1, -1):
            raise ValueError("power must be +1 or -1")
        tab = self.s_table if power == 1 else self.sinv_table
        out: Vec = {}
        for i, c in x.items():
            for j, d in tab[i]:
                add_into(out, {j: d}, c)
        return out

    def coproduct(self, x: Mapping) -> TensorElem:
        return self.coproduct_iter(x, 1)

    def delta(self, i: int, n: int = 1) -> tuple:
        """``D^(n)(h_i)`` as a tuple of ``(legs, coef)``; cached."""
        key = (i, n)
        hit = self._delta_cache.get(key)
        if hit is not None:
            return hit
        if n < 1:
            raise ValueError("iterated coproduct needs n >= 1")
        if n == 1:
            out = tuple(((j, k), c) for (j, k), c in self.coprod_table[i])
        else:
            acc: dict = {}
            for legs, c in self.delta(i, n - 1):
                for (j, k), d in self.coprod_table[legs[0]]:
                    add_into(acc, {(j, k) + legs[1:]: c * d})
            out = tuple(sorted(acc.items()))
        self._delta_cache[key] = out
        return out

    def coproduct_iter(self, x: Mapping, n: int) -> TensorElem:
        self._check(x)
        if n < 1:
            raise ValueError("iterated coproduct needs n >= 1")
        acc: dict = {}
        for i, c in x.items():
            for legs, d in self.delta(i, n):
                add_into(acc, {legs: c * d})
        return TensorElem((self.dim,) * (n + 1), acc)

    def s_basis(self, i: int, power: int = 1) -> Terms:
        return self.s_table[i] if power == 1 else self.sinv_table[i]

    def is_cocommutative(self) -> bool:
        return all(self.coproduct({i: 1}).flip() == self.coproduct({i: 1}) for i in range(self.dim))

    # verification -----------------------------------------------------------------

    def verify_hopf_axioms(self) -> Report:
        rep = Report("hopf axioms")
        _check_associative(self, rep)
        _check_unit(self, rep)
        n = self.dim
        lab = self.labels
        dims2 = (n, n)
        alg2 = [self, self]

        def first(id_, cases):
            for wit, lhs, rhs in cases:
                if lhs != rhs:
                    rep.failed(id_, witness=wit, lhs=lhs, rhs=rhs)
                    return
            rep.passed(id_)

        def coassoc():
            for i in range(n):
                d = self.coproduct({i: 1})
                lhs = _expand_leg(d, 0, self)
                rhs = _expand_leg(d, 1, self)
                yield (lab[i],), dict(lhs.terms), dict(rhs.terms)

        def counit_ax():
            for i in range(n):
                d = self.coproduct({i: 1})
                eps = lambda k: {0: self.counit_table[k]} if self.counit_table[k] != 0 else {}
                yield (lab[i], "left"), _to_vec(d.contract(0, eps, 0)), {i: 1}
                yield (lab[i], "right"), _to_vec(d.contract(1, eps, 0)), {i: 1}

        def delta_mult():
            yield ("1",), dict(self.coproduct(self.one()).terms), dict(TensorElem.build(dims2, [((a, b), c * d) for a, c in self.unit.items() for b, d in self.unit.items()]).terms)
            for i, j in itertools.product(range(n), repeat=2):
                lhs = self.coproduct(self.mul({i: 1}, {j: 1}))
                rhs = self.coproduct({i: 1}).mul(self.coproduct({j: 1}), alg2)
                yield (lab[i], lab[j]), dict(lhs.terms), dict(rhs.terms)

        def eps_mult():
            yield ("1",), self.counit(self.one()), 1
            for i, j in itertools.product(range(n), repeat=2):
                yield (lab[i], lab[j]), self.counit(self.mul({i: 1}, {j: 1})), clean(self.counit_table[i] * self.counit_table[j])

        def antipode_ax(side):
            for i in range(n):
                d = self.coproduct({i: 1})
                leg = 0 if side == "left" else 1
                lhs = d.contract(leg, lambda k: dict(self.s_table[k])).multiply_legs(self)
                rhs = scale(self.one(), self.counit_table[i])
                yield (lab[i],), self.show(lhs), self.show(rhs)

        def s_inverse():
            for i in range(n):
                yield (lab[i], "S o S^-1"), self.show(self.antipode(self.antipode({i: 1}, -1))), self.show({i: 1})
                yield (lab[i], "S^-1 o S"), self.show(self.antipode(self.antipode({i: 1}), -1)), self.show({i: 1})

        first("coassociativity", coassoc())
        first("counit", counit_ax())
        first("coproduct multiplicative", delta_mult())
        first("counit multiplicative", eps_mult())
        first("antipode left", antipode_ax("left"))
        first("antipode right", antipode_ax("right"))
        first("antipode inverse", s_inverse())
        return rep


def tensor_contract(t: TensorElem, leg: int, f: Callable[[int], Mapping[int, Scalar]], out_dim: int | None = None) -> TensorElem:
    return t.contract(leg, f, out_dim)


def _to_vec(t: TensorElem) -> Vec:
    return {k[0]: c for k, c in t.terms.items()}


def _expand_leg(t: TensorElem, leg: int, H: FinHopf) -> TensorElem:
    """Apply the coproduct to one leg, splitting it into two adjacent legs."""
    acc: dict = {}
    for key, c in t.terms.items():
        for (j, k), d in H.coprod_table[key[leg]]:
            add_into(acc, {key[:leg] + (j, k) + key[leg + 1:]: c * d})
    return TensorElem(t.dims[:leg] + (H.dim, H.dim) + t.dims[leg + 1:], acc)


# constructors -------------------------------------------------------------------------


def group_algebra(labels: Sequence[str], mul: Callable[[int, int], int], validate: bool = True) -> FinHopf:
    """The group algebra ``kG`` on a finite group given by its multiplication."""
    n = len(labels)
    unit = next(e for e in range(n) if all(mul(e, g) == g for g in range(n)))
    inv = [next(h for h in range(n) if mul(g, h) == unit) for g in range(n)]
    mult = {(i, j): {mul(i, j): 1} for i in range(n) for j in range(n)}
    return FinHopf(
        labels,
        mult,
        {unit: 1},
        {i: {(i, i): 1} for i in range(n)},
        [1] * n,
        {i: {inv[i]: 1} for i in range(n)},
        {i: {inv[i]: 1} for i in range(n)},
        validate=validate,
    )


def trivial_hopf() -> FinHopf:
    """The one-dimensional Hopf algebra ``k``."""
    return group_algebra(["1"], lambda a, b: 0)


def hopf_from_generated(labels, mult, unit, gen_coprod: Mapping[int, TensorElem], words: Mapping[int, Sequence[int]], counit, antipode, antipode_inv, validate=True) -> FinHopf:
    """Extend coproducts given on generators multiplicatively.

    ``words[i]`` spells basis element ``i`` as a product of generator indices.
    """
    alg = FinAlgebra(labels, mult, unit, validate=False)
    n = alg.dim
    coprod = {}
    for i in range(n):
        t = TensorElem.build((n, n), [((a, b), c * d) for a, c in alg.unit.items() for b, d in alg.unit.items()])
        for g in words[i]:
            t = t.mul(gen_coprod[g], [alg, alg])
        coprod[i] = dict(t.terms)
    return FinHopf(labels, mult, unit, coprod, counit, antipode, antipode_inv, validate=validate)
