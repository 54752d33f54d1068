"""Sparse exact linear algebra over the scalar fields.

Vectors are dicts mapping a hashable, orderable key to a nonzero scalar.
:class:`Echelon` keeps a fully reduced row-echelon basis that grows one vector
at a time; rank, span membership and nullspaces are built on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .scalars import LaurentFrac, Scalar

Vec = dict


def div(a: Scalar, b: Scalar) -> Scalar:
    if type(a) is int and type(b) is int:
        f = Fraction(a, b)
        return f.numerator if f.denominator == 1 else f
    r = a / b
    if type(r) is Fraction and r.denominator == 1:
        return r.numerator
    return r


def clean(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def add_into(acc: Vec, v: Mapping, c: Scalar = 1) -> Vec:
    """``acc += c * v`` in place, dropping zeros."""
    if c == 0:
        return acc
    one = c == 1 and not isinstance(c, LaurentFrac)
    for k, x in v.items():
        y = acc.get(k, 0) + (x if one else c * x)
        if y == 0:
            acc.pop(k, None)
        else:
            acc[k] = clean(y)
    return acc


def scale(v: Mapping, c: Scalar) -> Vec:
    if c == 0:
        return {}
    return {k: clean(x * c) for k, x in v.items()}


def sub(a: Mapping, b: Mapping) -> Vec:
    return add_into(dict(a), b, -1)


def lin_comb(pairs: Iterable[tuple[Scalar, Mapping]]) -> Vec:
    acc: Vec = {}
    for c, v in pairs:
        add_into(acc, v, c)
    return acc


def first_difference(a: Mapping, b: Mapping):
    """Smallest key where two sparse vectors differ, or None."""
    diff = sub(a, b)
    if not diff:
        return None
    return min(diff, key=_sort_key)


def _sort_key(k):
    return (str(type(k)), k)


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a span."""

    def __init__(self) -> None:
        self.rows: dict[Hashable, Vec] = {}
        self.occ: dict[Hashable, set] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> Vec:
        out = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = out.get(p)
            if c:
                add_into(out, self.rows[p], -c)
        return out

    def add(self, v: Mapping) -> bool:
        """Add ``v``; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        occ = self.occ
        pivot = min(r, key=lambda k: (len(occ.get(k, ())), k))
        lead = r[pivot]
        if lead != 1:
            r = {k: div(x, lead) for k, x in r.items()}
        # clear the new pivot from existing rows
        for p in list(occ.get(pivot, ())):
            row = self.rows[p]
            c = row[pivot]
            for k in row:
                occ[k].discard(p)
            add_into(row, r, -c)
            for k in row:
                occ.setdefault(k, set()).add(p)
        self.rows[pivot] = r
        for k in r:
            occ.setdefault(k, set()).add(pivot)
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    n = 0
    for v in vectors:
        if e.add(v):
            n += 1
    return n


def nullspace(equations: Iterable[Mapping], variables: Iterable[Hashable]) -> list[Vec]:
    """Basis of ``{x : <eq, x> = 0 for every eq}`` over the given variables.

    Each equation is a sparse row over the variables.  The basis is returned
    with one vector per free variable, in sorted variable order.
    """
    e = Echelon()
    for eq in equations:
        if eq:
            e.add(eq)
    basis = []
    for u in sorted(variables):
        if u in e.rows:
            continue
        vec = {u: 1}
        for p in e.occ.get(u, ()):
            vec[p] = clean(-e.rows[p][u])
        basis.append(vec)
    return basis


def same_span(a: list[Mapping], b: list[Mapping]) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    return len(ea) == len(eb) and all(eb.contains(v) for v in a)


# small dense matrices --------------------------------------------------------------------


def mat_mul(x: list[list], y: list[list]) -> list[list]:
    n, m, p = len(x), len(y), len(y[0]) if y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = 0
            for k in range(m):
                a = x[i][k]
                if a != 0:
                    b = y[k][j]
                    if b != 0:
                        acc = acc + a * b
            row.append(clean(acc))
        out.append(row)
    return out


def mat_add(x: list[list], y: list[list], c: Scalar = 1) -> list[list]:
    return [[clean(a + c * b) for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_scale(x: list[list], c: Scalar) -> list[list]:
    return [[clean(a * c) for a in r] for r in x]


def identity(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> list[list]:
    return [[0] * (n if m is None else m) for _ in range(n)]


def mat_inverse(x: list[list]) -> list[list]:
    """Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
    n = len(x)
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(x)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        lead = a[col][col]
        a[col] = [div(v, lead) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [clean(v - c * w) for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def trace(x: list[list]) -> Scalar:
    acc = 0
    for i in range(len(x)):
        acc = acc + x[i][i]
    return clean(acc)
