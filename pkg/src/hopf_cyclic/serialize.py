"""JSON import and export for every structure the command line consumes or emits.

Indices are 0-based.  Scalars are strings ``"p/q"`` or Laurent-fraction maps.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .actions import (
    ActionMap,
    CoactionMap,
    HAlgebra,
    MatrixAlgebra,
    Representation,
    RMatrix,
    UniversalRForm,
    matrix_algebra_diagonal,
    matrix_algebra_nondiagonal,
)
from .hopf import FinAlgebra, FinHopf, TensorElem
from .ktheory import MatrixElem, _memo_matrix
from .rewrite import GeneratorAction, NCPoly, Presentation, PresentedRep, SymbolicHopf
from .scalars import Scalar, scalar_from_json, scalar_to_json


class FormatError(ValueError):
    pass


def _s(c: Scalar):
    return scalar_to_json(c)


def _p(x) -> Scalar:
    return scalar_from_json(x)


def _dense_vec(v: Mapping[int, Scalar], n: int) -> list:
    return [_s(v.get(i, 0)) for i in range(n)]


def _from_dense(row: list) -> dict[int, Scalar]:
    out = {}
    for i, x in enumerate(row):
        c = _p(x)
        if c != 0:
            out[i] = c
    return out


def _matrix(m) -> list:
    return [[_s(x) for x in row] for row in m]


def _from_matrix(m) -> list:
    return [[_p(x) for x in row] for row in m]


# algebras and Hopf algebras -----------------------------------------------------------------


def algebra_to_json(A: FinAlgebra) -> dict:
    n = A.dim
    return {
        "dim": n,
        "basis": list(A.labels),
        "mult": [[i, j, k, _s(c)] for i in range(n) for j in range(n) for k, c in A.table[i][j]],
        "unit": _dense_vec(A.unit, n),
    }


def _mult_table(obj: Mapping) -> dict:
    mult: dict = {}
    for i, j, k, c in obj["mult"]:
        mult.setdefault((int(i), int(j)), {})[int(k)] = _p(c)
    return mult


def _check_dim(obj: Mapping) -> int:
    try:
        n = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError("missing or bad 'dim'") from exc
    if "basis" in obj and len(obj["basis"]) != n:
        raise FormatError("'basis' length differs from 'dim'")
    return n


def algebra_from_json(obj: Mapping, validate: bool = True) -> FinAlgebra:
    n = _check_dim(obj)
    labels = obj.get("basis") or [f"e{i}" for i in range(n)]
    return FinAlgebra(labels, _mult_table(obj), _from_dense(obj["unit"]), validate=validate)


def hopf_to_json(H: FinHopf) -> dict:
    out = algebra_to_json(H)
    n = H.dim
    out["coprod"] = [[i, j, k, _s(c)] for i in range(n) for (j, k), c in H.coprod_table[i]]
    out["counit"] = [_s(c) for c in H.counit_table]
    out["antipode"] = [_dense_vec(dict(H.s_table[i]), n) for i in range(n)]
    out["antipode_inv"] = [_dense_vec(dict(H.sinv_table[i]), n) for i in range(n)]
    return out


def hopf_from_json(obj: Mapping, validate: bool = True) -> FinHopf:
    n = _check_dim(obj)
    try:
        labels = obj.get("basis") or [f"e{i}" for i in range(n)]
        coprod: dict = {}
        for i, j, k, c in obj["coprod"]:
            coprod.setdefault(int(i), {})[(int(j), int(k))] = _p(c)
        antipode = {i: _from_dense(row) for i, row in enumerate(obj["antipode"])}
        antipode_inv = {i: _from_dense(row) for i, row in enumerate(obj["antipode_inv"])}
        counit = [_p(c) for c in obj["counit"]]
        mult, unit = _mult_table(obj), _from_dense(obj["unit"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed Hopf algebra JSON: {exc}") from exc
    return FinHopf(labels, mult, unit, coprod, counit, antipode, antipode_inv, validate=validate)


# actions, coactions, module algebras ---------------------------------------------------------


def action_to_json(act: ActionMap) -> list:
    return [[h, a, b, _s(c)] for h, a, b, c in act.entries()]


def action_from_json(rows: list, hdim: int, adim: int) -> ActionMap:
    table: dict = {}
    for h, a, b, c in rows:
        table.setdefault((int(h), int(a)), {})[int(b)] = _p(c)
    return ActionMap(hdim, adim, table)


def coaction_to_json(co: CoactionMap) -> list:
    return [[a, b, h, _s(c)] for a, b, h, c in co.entries()]


def coaction_from_json(rows: list, adim: int, hdim: int) -> CoactionMap:
    table: dict = {}
    for a, b, h, c in rows:
        table.setdefault(int(a), {})[(int(b), int(h))] = _p(c)
    return CoactionMap(adim, hdim, table)


def h_algebra_to_json(HA: HAlgebra) -> dict:
    return {
        "kind": "h-algebra",
        "name": HA.name,
        "hopf": hopf_to_json(HA.hopf),
        "algebra": algebra_to_json(HA.algebra),
        "action": action_to_json(HA.action),
        "coaction": None if HA.coaction is None else coaction_to_json(HA.coaction),
    }


def h_algebra_from_json(obj: Mapping) -> HAlgebra:
    H = hopf_from_json(obj["hopf"])
    A = algebra_from_json(obj["algebra"])
    act = action_from_json(obj["action"], H.dim, A.dim)
    co = None if obj.get("coaction") is None else coaction_from_json(obj["coaction"], A.dim, H.dim)
    return HAlgebra(A, H, act, co, name=obj.get("name", ""))


def representation_to_json(V: Representation) -> dict:
    return {"kind": "representation", "name": V.name, "hopf": hopf_to_json(V.hopf), "matrices": [_matrix(m) for m in V.matrices]}


def representation_from_json(obj: Mapping, hopf: FinHopf | None = None) -> Representation:
    H = hopf or hopf_from_json(obj["hopf"])
    return Representation(H, [_from_matrix(m) for m in obj["matrices"]], name=obj.get("name", ""))


def rmatrix_to_json(R: RMatrix) -> dict:
    return {
        "kind": "r-matrix",
        "hopf": hopf_to_json(R.hopf),
        "r": [[i, j, _s(c)] for (i, j), c in sorted(R.r.terms.items())],
        "r_inv": [[i, j, _s(c)] for (i, j), c in sorted(R.r_inv.terms.items())],
    }


def rmatrix_from_json(obj: Mapping) -> RMatrix:
    H = hopf_from_json(obj["hopf"])
    dims = (H.dim, H.dim)
    r = TensorElem.build(dims, (((int(i), int(j)), _p(c)) for i, j, c in obj["r"]))
    r_inv = TensorElem.build(dims, (((int(i), int(j)), _p(c)) for i, j, c in obj["r_inv"]))
    return RMatrix(H, r, r_inv)


def rform_to_json(R: UniversalRForm) -> dict:
    return {"kind": "r-form", "hopf": hopf_to_json(R.hopf), "form": _matrix(R.form), "form_inv": _matrix(R.form_inv)}


def rform_from_json(obj: Mapping) -> UniversalRForm:
    return UniversalRForm(hopf_from_json(obj["hopf"]), _from_matrix(obj["form"]), _from_matrix(obj["form_inv"]))


# cochains and idempotents -------------------------------------------------------------------


def cochain_to_json(f: Mapping[tuple, Scalar], degree: int) -> dict:
    return {
        "kind": "cochain",
        "degree": degree,
        "entries": [[list(x[:-1]), x[-1], _s(c)] for x, c in sorted(f.items()) if c != 0],
    }


def cochain_from_json(obj: Mapping) -> tuple[int, dict]:
    n = int(obj["degree"])
    f: dict = {}
    for a, g, c in obj["entries"]:
        if len(a) != n + 1:
            raise FormatError(f"cochain entry {a} does not have {n + 1} slots")
        f[tuple(int(i) for i in a) + (int(g),)] = _p(c)
    return n, f


def periodic_cochain_to_json(fs: list[Mapping]) -> dict:
    return {"kind": "periodic-cochain", "components": [cochain_to_json(f, 2 * k) for k, f in enumerate(fs)]}


def idempotent_to_json(e: MatrixElem) -> dict:
    M = e.M
    return {
        "kind": "idempotent",
        "h_algebra": h_algebra_to_json(M.base),
        "representation": representation_to_json(M.rep),
        "structure": M.tag,
        "matrix": [[[[i, _s(c)] for i, c in sorted(entry.items())] for entry in row] for row in M.to_matrix(e.vec)],
    }


def idempotent_from_json(obj: Mapping, base: HAlgebra | None = None) -> MatrixElem:
    HA = base or h_algebra_from_json(obj["h_algebra"])
    V = representation_from_json(obj["representation"], HA.hopf)
    build = matrix_algebra_diagonal if obj.get("structure", "nondiagonal") == "diagonal" else matrix_algebra_nondiagonal
    M: MatrixAlgebra = _memo_matrix(build, HA, V)
    entries = [[{int(i): _p(c) for i, c in entry} for entry in row] for row in obj["matrix"]]
    if len(entries) != M.d or any(len(row) != M.d for row in entries):
        raise FormatError("idempotent matrix has the wrong size")
    return MatrixElem(M, M.from_matrix(entries))


# presented structures --------------------------------------------------------------------------


def ncpoly_to_json(x: NCPoly) -> list:
    return [[list(m), _s(c)] for m, c in x.sorted_terms()]


def symbolic_hopf_to_json(hopf: SymbolicHopf) -> dict:
    p = hopf.p
    g = p.generators
    return {
        "kind": "symbolic-hopf",
        "presentation": p.to_json(),
        "coproduct": {g[i]: [[list(l), list(r), _s(c)] for l, r, c in terms] for i, terms in sorted(hopf.delta.items())},
        "counit": {g[i]: _s(c) for i, c in sorted(hopf.eps.items())},
        "antipode": {g[i]: ncpoly_to_json(v) for i, v in sorted(hopf.S.items())},
        "antipode_inv": {g[i]: ncpoly_to_json(v) for i, v in sorted(hopf.Sinv.items())},
    }


def generator_action_to_json(act: GeneratorAction) -> dict:
    H, A = act.hopf.p, act.A
    return {
        "kind": "generator-action",
        "hopf": symbolic_hopf_to_json(act.hopf),
        "algebra": A.to_json(),
        "table": [[H.generators[h], A.generators[a], ncpoly_to_json(v)] for (h, a), v in sorted(act.table.items())],
    }


def presented_rep_to_json(r: PresentedRep) -> dict:
    return {
        "kind": "presented-representation",
        "presentation": r.p.to_json(),
        "matrices": {r.p.generators[g]: _matrix(m) for g, m in sorted(r.mats.items())},
    }


def poly_matrix_to_json(m: list) -> dict:
    return {"kind": "poly-matrix", "presentation": m[0][0].p.to_json(), "entries": [[ncpoly_to_json(x) for x in row] for row in m]}


# dispatch ---------------------------------------------------------------------------------------


def to_json(obj: Any) -> dict:
    if isinstance(obj, MatrixElem):
        return idempotent_to_json(obj)
    if isinstance(obj, FinHopf):
        return dict(hopf_to_json(obj), kind="hopf")
    if isinstance(obj, HAlgebra):
        return h_algebra_to_json(obj)
    if isinstance(obj, FinAlgebra):
        return dict(algebra_to_json(obj), kind="algebra")
    if isinstance(obj, Representation):
        return representation_to_json(obj)
    if isinstance(obj, RMatrix):
        return rmatrix_to_json(obj)
    if isinstance(obj, UniversalRForm):
        return rform_to_json(obj)
    if isinstance(obj, Presentation):
        return dict(obj.to_json(), kind="presentation")
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[1], SymbolicHopf):
        return symbolic_hopf_to_json(obj[1])
    if isinstance(obj, SymbolicHopf):
        return symbolic_hopf_to_json(obj)
    if isinstance(obj, GeneratorAction):
        return generator_action_to_json(obj)
    if isinstance(obj, PresentedRep):
        return presented_rep_to_json(obj)
    if isinstance(obj, list) and obj and isinstance(obj[0], list) and isinstance(obj[0][0], NCPoly):
        return poly_matrix_to_json(obj)
    raise TypeError(f"no JSON format for {type(obj).__name__}")


def from_json(obj: Mapping) -> Any:
    kind = obj.get("kind")
    if kind is None:
        if "coprod" in obj:
            kind = "hopf"
        elif "mult" in obj:
            kind = "algebra"
        elif "rules" in obj:
            kind = "presentation"
    loaders = {
        "hopf": hopf_from_json,
        "algebra": algebra_from_json,
        "h-algebra": h_algebra_from_json,
        "representation": representation_from_json,
        "r-matrix": rmatrix_from_json,
        "r-form": rform_from_json,
        "presentation": Presentation.from_json,
        "cochain": cochain_from_json,
        "idempotent": idempotent_from_json,
    }
    if kind not in loaders:
        raise FormatError(f"unknown JSON structure kind {kind!r}")
    return loaders[kind](obj)


def load(path: str | Path) -> Any:
    with open(path) as fh:
        return from_json(json.load(fh))


def dumps(obj: Any) -> str:
    return json.dumps(to_json(obj), indent=2, sort_keys=True, ensure_ascii=False)
