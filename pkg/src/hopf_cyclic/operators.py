"""Sparse linear operators on cochain spaces.

A cochain is a sparse dict ``{coordinate tuple: value}``.  Operators that
pull back along a multilinear substitution are stored column-wise: for each
input coordinate the list of output coordinates it feeds, so applying an
operator to a sparse cochain costs only its support.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .linalg import Vec, add_into
from .report import Report
from .scalars import Scalar


class LinOp:
    def __call__(self, v: Mapping) -> Vec:
        raise NotImplementedError

    def __matmul__(self, other: LinOp) -> LinOp:
        return Compose(self, other)

    def __add__(self, other: LinOp) -> LinOp:
        return Sum([(1, self), (1, other)])

    def __sub__(self, other: LinOp) -> LinOp:
        return Sum([(1, self), (-1, other)])

    def __neg__(self) -> LinOp:
        return Sum([(-1, self)])

    def __rmul__(self, c: Scalar) -> LinOp:
        return Sum([(c, self)])


class MatrixOp(LinOp):
    """Explicit sparse operator stored by input coordinate."""

    def __init__(self, cols: Mapping[Hashable, Sequence[tuple[Hashable, Scalar]]]):
        self.cols = cols

    @classmethod
    def from_rows(cls, out_coords: Iterable[Hashable], row: Callable[[Hashable], Mapping]) -> MatrixOp:
        cols: dict = {}
        for x in out_coords:
            for y, c in row(x).items():
                cols.setdefault(y, []).append((x, c))
        return cls(cols)

    def __call__(self, v: Mapping) -> Vec:
        out: Vec = {}
        cols = self.cols
        for y, fy in v.items():
            col = cols.get(y)
            if not col:
                continue
            for x, c in col:
                add_into(out, {x: c * fy})
        return out


class Compose(LinOp):
    def __init__(self, outer: LinOp, inner: LinOp):
        self.outer, self.inner = outer, inner

    def __call__(self, v: Mapping) -> Vec:
        return self.outer(self.inner(v))


class Sum(LinOp):
    def __init__(self, terms: list[tuple[Scalar, LinOp]]):
        self.terms = terms

    def __call__(self, v: Mapping) -> Vec:
        out: Vec = {}
        for c, op in self.terms:
            add_into(out, op(v), c)
        return out


class Identity(LinOp):
    def __call__(self, v: Mapping) -> Vec:
        return dict(v)


class Zero(LinOp):
    def __call__(self, v: Mapping) -> Vec:
        return {}


def power(op: LinOp, k: int) -> LinOp:
    out: LinOp = Identity()
    for _ in range(k):
        out = op @ out
    return out


def compare_on(
    rep: Report,
    id_: str,
    lhs: LinOp,
    rhs: LinOp,
    vectors: Sequence[Mapping],
    degree: int | None = None,
    label: Callable[[Hashable], object] | None = None,
) -> bool:
    """Record whether ``lhs(v) == rhs(v)`` for every ``v``; first mismatch is the witness."""
    for k, v in enumerate(vectors):
        left, right = lhs(v), rhs(v)
        if left != right:
            diff = add_into(dict(left), right, -1)
            at = min(diff)
            rep.failed(
                id_,
                witness={"basis_vector": k, "coordinate": label(at) if label else at},
                lhs=left.get(at, 0),
                rhs=right.get(at, 0),
                degree=degree,
            )
            return False
    rep.passed(id_, degree=degree)
    return True


def zero_on(rep: Report, id_: str, op: LinOp, vectors: Sequence[Mapping], degree: int | None = None, label=None) -> bool:
    return compare_on(rep, id_, op, Zero(), vectors, degree, label)
