"""Presented noncommutative algebras, rewriting to normal form, symbolic Hopf data.

A monomial is a tuple of generator indices.  A polynomial is an :class:`NCPoly`,
a mapping from normal-form monomials to nonzero scalars.  Monomials are
compared by ``(weight, length, word)`` where the weight of a generator is
declared by the presentation and words compare lexicographically by index,
so the generator list is given in increasing order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import identity, mat_add, mat_mul
from .report import Report
from .scalars import LaurentFrac, Scalar, scalar_from_json, scalar_str, scalar_to_json

Mono = tuple
STEP_BUDGET = 10**6


class RewriteError(RuntimeError):
    """Rewriting exceeded its step budget; ``trace`` holds the last steps."""

    def __init__(self, msg: str, trace: list):
        super().__init__(msg)
        self.trace = trace


class ActionError(KeyError):
    pass


def _clean(terms: Mapping[Mono, Scalar]) -> dict[Mono, Scalar]:
    return {m: c for m, c in terms.items() if c}


class NCPoly:
    """Noncommutative polynomial in normal form over a fixed presentation."""

    __slots__ = ("p", "terms")

    def __init__(self, p: Presentation, terms: Mapping[Mono, Scalar]):
        self.p = p
        self.terms = _clean(terms)

    def __add__(self, other) -> NCPoly:
        other = self.p.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return NCPoly(self.p, out)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> NCPoly:
        return self + (-self.p.coerce(other))

    def __rsub__(self, other) -> NCPoly:
        return self.p.coerce(other) - self

    def __mul__(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            return self.p.multiply(self, other)
        return NCPoly(self.p, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, c) -> NCPoly:
        return NCPoly(self.p, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            other = self.p.coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Mono, Scalar]]:
        return sorted(self.terms.items(), key=lambda mc: self.p.key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in reversed(self.sorted_terms()):
            word = self.p.word(m)
            cs = scalar_str(c)
            if word == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                parts.append(f"({cs})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


@dataclass
class Presentation:
    """Generators (increasing order), weights and rewrite rules ``lhs -> rhs``."""

    name: str
    generators: list[str]
    rules: dict[Mono, dict[Mono, Scalar]]
    weights: list[int] | None = None
    scalar_field: str = "Q(s)"
    budget: int = STEP_BUDGET
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.weights is None:
            self.weights = [1] * len(self.generators)
        if len(self.weights) != len(self.generators):
            raise ValueError("one weight per generator required")
        self._lengths = sorted({len(l) for l in self.rules}, reverse=True)
        for lhs, rhs in self.rules.items():
            if not lhs:
                raise ValueError("empty left-hand side")
            for m in rhs:
                if not self.key(m) < self.key(lhs):
                    raise ValueError(f"rule {self.word(lhs)} -> {self.word(m)} is not decreasing")

    # naming ----------------------------------------------------------------------------

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def mono(self, *names: str) -> Mono:
        return tuple(self.index(n) for n in names)

    def word(self, m: Mono) -> str:
        if not m:
            return "1"
        out, i = [], 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            g = self.generators[m[i]]
            out.append(g if j - i == 1 else f"{g}^{j - i}")
            i = j
        return "".join(out) if all(len(self.generators[k]) == 1 for k in m) else " ".join(out)

    def key(self, m: Mono) -> tuple:
        return (sum(self.weights[g] for g in m), len(m), m)

    # polynomials -----------------------------------------------------------------------

    def coerce(self, x) -> NCPoly:
        if isinstance(x, NCPoly):
            return x
        return NCPoly(self, {(): x})

    def one(self) -> NCPoly:
        return NCPoly(self, {(): 1})

    def zero(self) -> NCPoly:
        return NCPoly(self, {})

    def gen(self, name: str) -> NCPoly:
        return self.normal_form({(self.index(name),): 1})

    def poly(self, terms: Mapping[Mono, Scalar] | Iterable[tuple[Sequence[str], Scalar]]) -> NCPoly:
        """Normal form of a raw polynomial given by index monomials or name sequences."""
        if isinstance(terms, Mapping):
            return self.normal_form(terms)
        raw: dict[Mono, Scalar] = {}
        for names, c in terms:
            m = self.mono(*names)
            raw[m] = raw.get(m, 0) + c
        return self.normal_form(raw)

    def multiply(self, x: NCPoly, y: NCPoly) -> NCPoly:
        raw: dict[Mono, Scalar] = {}
        for m, c in x.terms.items():
            for n, d in y.terms.items():
                raw[m + n] = raw.get(m + n, 0) + c * d
        return self.normal_form(raw)

    # rewriting -------------------------------------------------------------------------

    def find_redex(self, m: Mono) -> tuple[int, Mono] | None:
        """Leftmost occurrence of a rule's left-hand side in ``m``."""
        for i in range(len(m)):
            for L in self._lengths:
                if i + L <= len(m) and m[i:i + L] in self.rules:
                    return i, m[i:i + L]
        return None

    def is_normal(self, m: Mono) -> bool:
        return self.find_redex(m) is None

    def normal_form(self, raw: Mapping[Mono, Scalar] | NCPoly) -> NCPoly:
        if isinstance(raw, NCPoly):
            raw = raw.terms
        out: dict[Mono, Scalar] = {}
        for m, c in raw.items():
            if not c:
                continue
            for n, d in self._nf_mono(tuple(m)).items():
                out[n] = out.get(n, 0) + c * d
        return NCPoly(self, out)

    def _nf_mono(self, m: Mono) -> dict[Mono, Scalar]:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        pending: dict[Mono, Scalar] = {m: 1}
        done: dict[Mono, Scalar] = {}
        steps = 0
        trace: deque = deque(maxlen=20)
        while pending:
            w, c = pending.popitem()
            if not c:
                continue
            hit = self._cache.get(w)
            if hit is not None:
                for n, d in hit.items():
                    done[n] = done.get(n, 0) + c * d
                continue
            red = self.find_redex(w)
            if red is None:
                done[w] = done.get(w, 0) + c
                continue
            steps += 1
            if steps > self.budget:
                raise RewriteError(
                    f"rewriting {self.word(m)} exceeded {self.budget} steps",
                    [(self.word(x), self.word(l)) for x, l in trace],
                )
            i, lhs = red
            trace.append((w, lhs))
            for r, d in self.rules[lhs].items():
                n = w[:i] + r + w[i + len(lhs):]
                pending[n] = pending.get(n, 0) + c * d
        result = _clean(done)
        self._cache[m] = result
        return result

    # serialization ---------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "weights": list(self.weights),
            "field": self.scalar_field,
            "rules": [
                {"lhs": list(lhs), "rhs": [[list(m), scalar_to_json(c)] for m, c in sorted(rhs.items(), key=lambda mc: self.key(mc[0]))]}
                for lhs, rhs in self.rules.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping | str) -> Presentation:
        if isinstance(obj, str):
            obj = json.loads(obj)
        gens = list(obj["generators"])
        rules: dict[Mono, dict[Mono, Scalar]] = {}
        for rule in obj["rules"]:
            lhs = tuple(int(i) for i in rule["lhs"])
            rhs: dict[Mono, Scalar] = {}
            for m, c in rule["rhs"]:
                key = tuple(int(i) for i in m)
                rhs[key] = rhs.get(key, 0) + scalar_from_json(c)
            if any(i >= len(gens) or i < 0 for i in lhs):
                raise ValueError(f"rule refers to unknown generator: {lhs}")
            rules[lhs] = _clean(rhs)
        return cls(obj.get("name", "presentation"), gens, rules, obj.get("weights"), obj.get("field", "Q(s)"))


def _rule_poly(p: Presentation, lhs: Mono) -> dict[Mono, Scalar]:
    """The relation ``lhs - rhs`` as a raw (unreduced) polynomial."""
    out = {lhs: 1}
    for m, c in p.rules[lhs].items():
        out[m] = out.get(m, 0) - c
    return _clean(out)


def check_confluence(p: Presentation, degree_bound: int) -> Report:
    """Diamond-lemma check: every overlap and inclusion ambiguity up to the bound resolves."""
    rep = Report(f"confluence({p.name}, {degree_bound})")
    if p.rules and degree_bound < max(len(l) for l in p.rules):
        raise ValueError("degree bound below the largest rule degree")
    lhss = list(p.rules)
    seen = set()
    for l1 in lhss:
        for l2 in lhss:
            ambiguities = []
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    word = l1 + l2[k:]
                    left = {r + l2[k:]: c for r, c in p.rules[l1].items()}
                    right = {l1[:-k] + r: c for r, c in p.rules[l2].items()}
                    ambiguities.append((word, left, right))
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        left = dict(p.rules[l1])
                        right = {l1[:i] + r + l1[i + len(l2):]: c for r, c in p.rules[l2].items()}
                        ambiguities.append((l1, left, right))
            for word, left, right in ambiguities:
                if len(word) > degree_bound or (word, l1, l2) in seen:
                    continue
                seen.add((word, l1, l2))
                a, b = p.normal_form(left), p.normal_form(right)
                cid = f"overlap.{p.word(word)}.{p.word(l1)}|{p.word(l2)}"
                if a == b:
                    rep.passed(cid)
                else:
                    rep.failed(cid, witness=p.word(word), lhs=str(a), rhs=str(b))
    rep.data["ambiguities"] = len(seen)
    return rep


# symbolic Hopf data ----------------------------------------------------------------------

Tensor = dict  # tuple of leg monomials -> scalar


def _tensor_add(out: Tensor, t: Tensor, c: Scalar = 1) -> None:
    for k, v in t.items():
        out[k] = out.get(k, 0) + c * v


class SymbolicHopf:
    """Coproduct, counit and (inverse) antipode on generators, extended to words."""

    def __init__(
        self,
        p: Presentation,
        coproduct: Mapping[str, Sequence[tuple[Sequence[str], Sequence[str], Scalar]]],
        counit: Mapping[str, Scalar],
        antipode: Mapping[str, NCPoly],
        antipode_inv: Mapping[str, NCPoly],
    ):
        self.p = p
        self.delta = {p.index(g): [(p.mono(*l), p.mono(*r), c) for l, r, c in terms] for g, terms in coproduct.items()}
        self.eps = {p.index(g): c for g, c in counit.items()}
        self.S = {p.index(g): v for g, v in antipode.items()}
        self.Sinv = {p.index(g): v for g, v in antipode_inv.items()}
        self._cop: dict = {}

    # tensors ---------------------------------------------------------------------------

    def _normalize_tensor(self, raw: Tensor) -> Tensor:
        """Bring every leg to normal form, expanding multilinearly."""
        out: Tensor = {}
        for legs, c in raw.items():
            expanded: Tensor = {(): c}
            for leg in legs:
                nf = self.p._nf_mono(leg)
                nxt: Tensor = {}
                for k, v in expanded.items():
                    for m, d in nf.items():
                        nxt[k + (m,)] = nxt.get(k + (m,), 0) + v * d
                expanded = nxt
            _tensor_add(out, expanded)
        return _clean(out)

    def _tensor_mul(self, x: Tensor, y: Tensor) -> Tensor:
        raw: Tensor = {}
        for a, c in x.items():
            for b, d in y.items():
                k = tuple(u + v for u, v in zip(a, b))
                raw[k] = raw.get(k, 0) + c * d
        return self._normalize_tensor(raw)

    def coproduct(self, mono: Mono, n: int = 1) -> Tensor:
        """Iterated coproduct of a word with ``n + 1`` legs, each in normal form."""
        key = (tuple(mono), n)
        if key in self._cop:
            return self._cop[key]
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n == 0:
            res = {(m,): c for m, c in self.p._nf_mono(tuple(mono)).items()}
        elif not mono:
            res = {((),) * (n + 1): 1}
        elif len(mono) > 1:
            res = self.coproduct(mono[:1], n)
            for g in mono[1:]:
                res = self._tensor_mul(res, self.coproduct((g,), n))
        else:
            g = mono[0]
            if g not in self.delta:
                raise ActionError(f"no coproduct for generator {self.p.generators[g]}")
            if n == 1:
                res = self._normalize_tensor({(l, r): c for l, r, c in self.delta[g]})
            else:
                res = {}
                for legs, c in self.coproduct(mono, n - 1).items():
                    for head, d in self.coproduct(legs[0], 1).items():
                        k = head + legs[1:]
                        res[k] = res.get(k, 0) + c * d
                res = _clean(res)
        self._cop[key] = res
        return res

    def coproduct_poly(self, x: NCPoly, n: int = 1) -> Tensor:
        out: Tensor = {}
        for m, c in x.terms.items():
            _tensor_add(out, self.coproduct(m, n), c)
        return _clean(out)

    def counit(self, x: NCPoly | Mono) -> Scalar:
        if isinstance(x, NCPoly):
            total = 0
            for m, c in x.terms.items():
                total = total + c * self.counit(m)
            return total
        out = 1
        for g in x:
            out = out * self.eps[g]
        return out

    def _anti(self, table: Mapping[int, NCPoly], x: NCPoly) -> NCPoly:
        out = self.p.zero()
        for m, c in x.terms.items():
            term = self.p.one()
            for g in reversed(m):
                term = term * table[g]
            out = out + c * term
        return out

    def antipode(self, x: NCPoly) -> NCPoly:
        return self._anti(self.S, x)

    def antipode_inv(self, x: NCPoly) -> NCPoly:
        return self._anti(self.Sinv, x)

    def tensor_str(self, t: Tensor) -> str:
        if not t:
            return "0"
        parts = []
        for legs, c in sorted(t.items(), key=lambda kv: [self.p.key(l) for l in kv[0]]):
            s = "⊗".join(self.p.word(l) for l in legs)
            cs = scalar_str(c)
            parts.append(s if cs == "1" else f"({cs})*{s}")
        return " + ".join(parts)

    # axioms ----------------------------------------------------------------------------

    def _mult_legs(self, t: Tensor, f0, f1) -> NCPoly:
        out = self.p.zero()
        for (a, b), c in t.items():
            out = out + c * (f0(NCPoly(self.p, {a: 1})) * f1(NCPoly(self.p, {b: 1})))
        return out

    def verify(self) -> Report:
        rep = Report(f"hopf-axioms({self.p.name})")
        p = self.p
        ident = lambda x: x
        for g in sorted(self.delta):
            name = p.generators[g]
            x = NCPoly(p, {(g,): 1})
            t = self.coproduct((g,), 1)
            unit = self.counit((g,)) * p.one()
            for side, val in (("left", self._mult_legs(t, self.antipode, ident)), ("right", self._mult_legs(t, ident, self.antipode))):
                rep.record(f"antipode.{side}.{name}", None if val == unit else name, str(val), str(unit))
            left: Tensor = {}
            for (a, b), c in t.items():
                for (a0, a1), d in self.coproduct(a, 1).items():
                    left[(a0, a1, b)] = left.get((a0, a1, b), 0) + c * d
            right: Tensor = {}
            for (a, b), c in t.items():
                for (b0, b1), d in self.coproduct(b, 1).items():
                    right[(a, b0, b1)] = right.get((a, b0, b1), 0) + c * d
            left, right = _clean(left), _clean(right)
            rep.record(f"coassociativity.{name}", None if left == right else name, self.tensor_str(left), self.tensor_str(right))
            for side, idx in (("left", 0), ("right", 1)):
                val = p.zero()
                for legs, c in t.items():
                    val = val + c * self.counit(legs[idx]) * NCPoly(p, {legs[1 - idx]: 1})
                rep.record(f"counit.{side}.{name}", None if val == x else name, str(val), str(x))
            for label, val in (("S.Sinv", self.antipode(self.antipode_inv(x))), ("Sinv.S", self.antipode_inv(self.antipode(x)))):
                rep.record(f"inverse.{label}.{name}", None if val == x else name, str(val), name)
        for lhs in p.rules:
            rel = _rule_poly(p, lhs)
            rname = p.word(lhs)
            d = _clean({})
            for m, c in rel.items():
                _tensor_add(d, self.coproduct(m, 1), c)
            d = _clean(d)
            rep.record(f"relation.coproduct.{rname}", None if not d else rname, self.tensor_str(d), "0")
            e = sum((c * self.counit(m) for m, c in rel.items()), 0)
            rep.record(f"relation.counit.{rname}", None if not e else rname, e, 0)
            s = self.antipode(NCPoly(p, {}) + _raw_poly(p, rel))
            rep.record(f"relation.antipode.{rname}", None if s.is_zero() else rname, str(s), "0")
        return rep


def _raw_poly(p: Presentation, raw: Mapping[Mono, Scalar]) -> NCPoly:
    """Wrap an unreduced polynomial without rewriting (for anti-homomorphism checks)."""
    poly = NCPoly.__new__(NCPoly)
    poly.p = p
    poly.terms = _clean(raw)
    return poly


# module-algebra actions --------------------------------------------------------------------


class GeneratorAction:
    """Action of a presented Hopf algebra on a presented algebra, given on generators."""

    def __init__(self, hopf: SymbolicHopf, algebra: Presentation, table: Mapping[tuple[str, str], NCPoly]):
        self.hopf = hopf
        self.A = algebra
        H = hopf.p
        self.table = {(H.index(h), algebra.index(a)): algebra.coerce(v) for (h, a), v in table.items()}
        self._memo: dict = {}

    def act_mono(self, h: Mono, x: Mono) -> NCPoly:
        key = (h, x)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        A = self.A
        if not h:
            res = A.normal_form({x: 1})
        elif len(h) > 1:
            res = A.zero()
            for m, c in self.act_mono(h[1:], x).terms.items():
                res = res + c * self.act_mono(h[:1], m)
        elif not x:
            res = self.hopf.counit(h) * A.one()
        elif len(x) == 1:
            entry = self.table.get((h[0], x[0]))
            if entry is None:
                raise ActionError(f"no action of {self.hopf.p.generators[h[0]]} on {A.generators[x[0]]}")
            res = entry
        else:
            res = A.zero()
            for (h0, h1), c in self.hopf.coproduct(h, 1).items():
                left = self.act_mono(h0, x[:1])
                if left.is_zero():
                    continue
                right = self.act_mono(h1, x[1:])
                res = res + c * (left * right)
        self._memo[key] = res
        return res

    def apply(self, h: NCPoly | Mono, x: NCPoly | Mapping[Mono, Scalar] | Mono) -> NCPoly:
        """Bilinear action; ``x`` may be unreduced (a raw mapping or a bare word)."""
        hterms = h.terms if isinstance(h, NCPoly) else {tuple(h): 1}
        if isinstance(x, NCPoly):
            xterms = x.terms
        elif isinstance(x, tuple):
            xterms = {x: 1}
        else:
            xterms = x
        out = self.A.zero()
        for hm, c in hterms.items():
            for xm, d in xterms.items():
                out = out + (c * d) * self.act_mono(hm, tuple(xm))
        return out

    def verify(self) -> Report:
        """Relations of the algebra are annihilated; relations of the Hopf algebra act as zero."""
        rep = Report("module-algebra-action")
        A, H = self.A, self.hopf.p
        for lhs in A.rules:
            rel = _rule_poly(A, lhs)
            for g in sorted(self.hopf.delta):
                val = self.apply((g,), rel)
                rep.record(f"annihilates.{H.generators[g]}.{A.word(lhs)}", None if val.is_zero() else A.word(lhs), str(val), "0")
        for lhs in H.rules:
            rel = _rule_poly(H, lhs)
            for a in range(len(A.generators)):
                val = self.apply(_raw_poly(H, rel), (a,))
                rep.record(f"hopf-relation.{H.word(lhs)}.{A.generators[a]}", None if val.is_zero() else A.generators[a], str(val), "0")
        return rep


def invert_diagonal_entries(
    table: Mapping[tuple[str, str], NCPoly], g: str, g_inv: str, algebra: Presentation
) -> dict[tuple[str, str], NCPoly]:
    """Add the action of ``g_inv`` where ``g`` scales each algebra generator."""
    out = dict(table)
    for a in algebra.generators:
        v = table[(g, a)]
        mono = (algebra.index(a),)
        if set(v.terms) != {mono}:
            raise ValueError(f"{g} does not act diagonally on {a}")
        c = v.terms[mono]
        out[(g_inv, a)] = NCPoly(algebra, {mono: c.inverse() if isinstance(c, LaurentFrac) else Fraction(1) / c})
    return out


# presented representations -----------------------------------------------------------------


def mat_equal(x, y) -> bool:
    return all(not (x[i][j] - y[i][j]) for i in range(len(x)) for j in range(len(x[0])))


def mat_str(x) -> list[list[str]]:
    return [[scalar_str(v) for v in row] for row in x]


class PresentedRep:
    """Matrices assigned to the generators of a presentation."""

    def __init__(self, p: Presentation, matrices: Mapping[str, list[list[Scalar]]], name: str = "rep"):
        self.p = p
        self.mats = {p.index(g): m for g, m in matrices.items()}
        self.dim = len(next(iter(matrices.values())))
        self.name = name

    def of_mono(self, m: Mono):
        out = identity(self.dim)
        for g in m:
            out = mat_mul(out, self.mats[g])
        return out

    def of(self, x: NCPoly | Mapping[Mono, Scalar]):
        terms = x.terms if isinstance(x, NCPoly) else x
        out = [[0] * self.dim for _ in range(self.dim)]
        for m, c in terms.items():
            out = mat_add(out, self.of_mono(m), c)
        return out

    def verify(self) -> Report:
        rep = Report(f"representation({self.name})")
        for lhs in self.p.rules:
            val = self.of(_rule_poly(self.p, lhs))
            zero = [[0] * self.dim for _ in range(self.dim)]
            w = self.p.word(lhs)
            rep.record(f"relation.{w}", None if mat_equal(val, zero) else w, mat_str(val), mat_str(zero))
        return rep


# the built-in presentations --------------------------------------------------------------


def q(k) -> LaurentFrac:
    return LaurentFrac.q(k)


def uq_su2() -> tuple[Presentation, SymbolicHopf]:
    """Quantum enveloping algebra on ``E, F, K, Ki`` (``Ki`` is the inverse of ``K``).

    ``E`` and ``F`` have weight 1 and ``K``, ``Ki`` weight 0, so normal forms
    are ``E^i F^j K^l`` or ``E^i F^j Ki^l``.
    """
    gens = ["E", "F", "K", "Ki"]
    E, F, K, Ki = range(4)
    c = 1 / (q(1) - q(-1))
    rules = {
        (K, Ki): {(): 1},
        (Ki, K): {(): 1},
        (K, E): {(E, K): q(1)},
        (Ki, E): {(E, Ki): q(-1)},
        (K, F): {(F, K): q(-1)},
        (Ki, F): {(F, Ki): q(1)},
        # the sign is the one realized by the two-dimensional representation
        (F, E): {(E, F): 1, (K, K): -c, (Ki, Ki): c},
    }
    p = Presentation("uq-su2", gens, rules, weights=[1, 1, 0, 0])
    cop = {
        "K": [(["K"], ["K"], 1)],
        "Ki": [(["Ki"], ["Ki"], 1)],
        "E": [(["E"], ["K"], 1), (["Ki"], ["E"], 1)],
        "F": [(["F"], ["K"], 1), (["Ki"], ["F"], 1)],
    }
    eps = {"K": 1, "Ki": 1, "E": 0, "F": 0}
    S = {"K": p.gen("Ki"), "Ki": p.gen("K"), "E": -q(1) * p.gen("E"), "F": -q(-1) * p.gen("F")}
    Sinv = {"K": p.gen("Ki"), "Ki": p.gen("K"), "E": -q(-1) * p.gen("E"), "F": -q(1) * p.gen("F")}
    return p, SymbolicHopf(p, cop, eps, S, Sinv)


def podles_sphere() -> Presentation:
    """Equator quantum sphere on ``b < a < a*``."""
    gens = ["b", "a", "a*"]
    b, a, s = range(3)
    rules = {
        (a, s): {(): 1, (b, b): -q(-4)},
        (s, a): {(): 1, (b, b): -1},
        (a, b): {(b, a): q(-2)},
        (s, b): {(b, s): q(2)},
    }
    return Presentation("podles", gens, rules)


def podles_action(hopf: SymbolicHopf | None = None, algebra: Presentation | None = None) -> GeneratorAction:
    if hopf is None:
        _, hopf = uq_su2()
    A = algebra or podles_sphere()
    a, s, b = A.gen("a"), A.gen("a*"), A.gen("b")
    zero = A.zero()
    table = {
        ("K", "a"): q(1) * a,
        ("K", "a*"): q(-1) * s,
        ("K", "b"): b,
        ("E", "a"): zero,
        ("E", "b"): q(Fraction(5, 2)) * a,
        ("E", "a*"): -q(Fraction(3, 2)) * (1 + q(-2)) * b,
        ("F", "a"): q(Fraction(-7, 2)) * (1 + q(2)) * b,
        ("F", "b"): -q(Fraction(-1, 2)) * s,
        ("F", "a*"): zero,
    }
    return GeneratorAction(hopf, A, invert_diagonal_entries(table, "K", "Ki", A))


def rep2_uq(p: Presentation | None = None) -> PresentedRep:
    if p is None:
        p, _ = uq_su2()
    h = Fraction(1, 2)
    return PresentedRep(
        p,
        {
            "E": [[0, 0], [1, 0]],
            "F": [[0, 1], [0, 0]],
            "K": [[q(-h), 0], [0, q(h)]],
            "Ki": [[q(h), 0], [0, q(-h)]],
        },
        name="rep2-uq",
    )


def toy_presentation() -> Presentation:
    """``xy -> 1``, ``yx -> x``: terminating but not confluent."""
    return Presentation("toy", ["x", "y"], {(0, 1): {(): 1}, (1, 0): {(0,): 1}})


PRESENTATIONS = {"uq-su2": lambda: uq_su2()[0], "podles": podles_sphere, "toy": toy_presentation}
