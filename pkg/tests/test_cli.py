from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_cyclic.catalog import sign_line_projection, sweedler_h4
from hopf_cyclic.cli import Stage, exit_code, main, run_stages
from hopf_cyclic.cyclic import EquivariantComplex
from hopf_cyclic.ktheory import cyclic_cocycles, pair_even
from hopf_cyclic.report import PASS, SKIPPED, Report
from hopf_cyclic.scalars import scalar_str
from hopf_cyclic.serialize import cochain_to_json, hopf_to_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_verify_hopf():
    code, rep = run_json("verify", "hopf", "h4")
    assert code == 0 and rep["ok"]
    assert rep["command"] == "verify hopf"
    assert set(rep) >= {"command", "inputs", "checks", "timing_ms", "version", "ok"}


def test_same_seed_same_report():
    _, a = run_json("verify", "yd", "--hopf", "h4", "--algebra", "adjoint", "--seed", "5", "--perturbations", "10")
    _, b = run_json("--seed", "5", "verify", "yd", "--hopf", "h4", "--algebra", "adjoint", "--perturbations", "10")
    a.pop("timing_ms")
    b.pop("timing_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_usage_errors():
    assert run("bogus")[0] == 2
    assert run("verify", "hopf", "does-not-exist.json")[0] == 2
    assert run("verify", "hopf", "nope")[0] == 2
    assert run("verify", "cocyclic", "--hopf", "kc2", "--algebra", "nothing")[0] == 2
    assert run("export", "nothing")[0] == 2


def test_broken_hopf_file(tmp_path):
    obj = hopf_to_json(sweedler_h4())
    obj["antipode"] = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(obj))
    code, rep = run_json("verify", "hopf", str(path))
    assert code == 1
    bad = [c for c in rep["checks"] if c["status"] != PASS]
    assert any("antipode" in c["id"] and c.get("witness") == ["x"] for c in bad)


def test_mutated_cocyclic_and_fail_fast():
    code, rep = run_json("verify", "cocyclic", "--hopf", "h4", "--algebra", "adjoint", "--n-max", "1", "--mutated")
    assert code == 1
    code, rep = run_json("verify", "cocyclic", "--hopf", "h4", "--algebra", "adjoint", "--n-max", "1", "--mutated", "--fail-fast")
    assert code == 1
    statuses = [c["status"] for c in rep["checks"]]
    assert SKIPPED in statuses


@pytest.mark.parametrize(
    "argv",
    [
        ("monopole",),
        ("verify", "module-algebra", "--twist-with", "kc2-regular"),
        ("verify", "phi-psi", "--n-max", "1"),
        ("verify", "cylindrical", "--p-max", "1", "--q-max", "1"),
        ("verify", "trace-map", "--n-max", "1"),
        ("verify", "isomorphisms", "--r-matrix", "kc2-r"),
        ("verify", "rewrite", "podles", "--samples", "20"),
        ("pairing", "--idempotent", "sign-line-projection"),
        ("pairing", "--idempotent", "sign-line-projection", "--periodic"),
        ("cohomology", "--n-max", "1"),
    ],
    ids=lambda a: " ".join(a),
)
def test_passing_commands(argv):
    code, rep = run_json(*argv)
    assert code == 0, [c for c in rep["checks"] if c["status"] != PASS][:2]


def test_toy_rewrite_fails():
    code, rep = run_json("verify", "rewrite", "toy")
    assert code == 1


def test_pairing_with_cocycle_file(tmp_path):
    e = sign_line_projection()
    E = EquivariantComplex(e.M.base)
    f = cyclic_cocycles(E, 0)[0]
    path = tmp_path / "f.json"
    path.write_text(json.dumps(cochain_to_json(f, 0)))
    code, rep = run_json("pairing", "--idempotent", "sign-line-projection", "--cocycle", str(path))
    assert code == 0
    expect = pair_even(e, f, 0)
    labels = e.M.hopf.labels
    assert rep["data"]["pairing"]["value"] == {labels[g]: scalar_str(v) for g, v in sorted(expect.items())}
    assert rep["data"]["pairing"]["in_R_H"]


def test_export_and_catalog():
    code, text = run("export", "kc2")
    assert code == 0 and json.loads(text)["dim"] == 2
    code, text = run("catalog", "list", "--json")
    assert code == 0 and len(json.loads(text)) == 35


def _stage(name, statuses):
    def build():
        rep = Report(name)
        for k, s in enumerate(statuses):
            if s == "pass":
                rep.passed(f"c{k}")
            elif s == "fail":
                rep.failed(f"c{k}", witness=k)
            else:
                raise RuntimeError("boom")
        return rep

    return Stage(name, build)


@given(st.lists(st.lists(st.sampled_from(["pass", "fail", "crash"]), min_size=1, max_size=4), min_size=1, max_size=4), st.booleans())
@settings(max_examples=100, deadline=None)
def test_exit_code_property(suites, fail_fast):
    stages = [_stage(f"s{i}", sts) for i, sts in enumerate(suites)]
    checks, _ = run_stages(stages, fail_fast)
    all_pass = all(s == "pass" for sts in suites for s in sts)
    assert (exit_code(checks) == 0) == all_pass
    if fail_fast and not all_pass:
        first_bad = next(i for i, c in enumerate(checks) if c.status != PASS)
        assert all(c.status == SKIPPED for c in checks[first_bad + 1:])
