"""Acceptance criteria 1-10; each test prints one PASS/FAIL line."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from hopf_cyclic.actions import (
    endo_conj_algebra,
    perturbed_coactions,
    regular_rep,
    twisted_product,
    verify_beta,
    verify_module_algebra,
    verify_t,
    yd_condition_compat,
    yd_condition_explicit,
)
from hopf_cyclic.catalog import (
    H_ALGEBRAS,
    REPRESENTATIONS,
    adjoint,
    h_algebra,
    kc2,
    kc2_r_matrix,
    sign_line,
    sign_line_conjugator,
    sign_line_projection,
    sign_line_unit,
    point_averaging,
    sweedler_h4,
)
from hopf_cyclic.cli import homotopy_case
from hopf_cyclic.cyclic import (
    EquivariantComplex,
    cylindricity_as_displayed,
    verify_cocyclic,
    verify_cylindrical,
    verify_phi_psi,
)
from hopf_cyclic.ktheory import (
    invariant_functionals,
    invariant_functionals_conjugation,
    verify_beta_transport,
    verify_homotopies,
    verify_pairing,
    verify_periodic_pairing,
    verify_trace,
)
from hopf_cyclic.linalg import same_span
from hopf_cyclic.monopole import bracket_in_rep, monopole_suite, setup
from hopf_cyclic.rewrite import check_confluence, podles_action, podles_sphere, uq_su2


def _summary(report) -> str:
    bad = report.failures()
    if not bad:
        return f"{len(report.checks)} checks"
    c = bad[0]
    return f"{len(bad)} of {len(report.checks)} checks fail, first: {c.id} witness={c.witness}"


@contextmanager
def criterion(log, label: str, budget_s: float):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        line = f"FAIL {label}: {type(exc).__name__}: {exc}"
        print(line)
        log.append(line)
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed <= budget_s else "FAIL"
    line = f"{status} {label} ({elapsed:.2f} s, budget {budget_s:g} s){': ' + '; '.join(notes) if notes else ''}"
    print(line)
    log.append(line)
    assert elapsed <= budget_s, line


def _require(report, notes: list[str], tag: str):
    notes.append(f"{tag} {_summary(report)}")
    assert report.ok, _summary(report)


def test_criterion_01_monopole(criterion_log):
    with criterion(criterion_log, "criterion 1 monopole e_q^2 = e_q, K.e_q = e_q, E.e_q = F.e_q = 0", 5) as notes:
        rep = monopole_suite()
        _require(rep, notes, "monopole")
        assert rep.data["decomposition_matches"]
        assert all(rep.data[f"{h}.expected_vanishing_hold"] for h in "KEF")


def test_criterion_02_representation_relations(criterion_log):
    with criterion(criterion_log, "criterion 2 two-dimensional representation satisfies every defining relation", 1) as notes:
        s = setup()
        _require(s.rep.verify(), notes, "relations")
        br = bracket_in_rep(s)
        # EF - FE equals the Cartan element in the representation
        minus = [[-v for v in row] for row in br["FE-EF"]]
        assert minus == br["cartan"]
        assert br["cartan"] == [[-1, 0], [0, 1]]
        notes.append("EF - FE = diag(-1, 1) = (K^2 - K^-2)/(q - q^-1)")


@pytest.mark.xfail(strict=True, reason="with the given matrices FE - EF is diag(1, -1); the bracket holds with EF - FE")
def test_criterion_02_literal_sign(criterion_log):
    br = bracket_in_rep()
    ok = br["FE-EF"] == [[-1, 0], [0, 1]] == br["cartan"]
    line = f"{'PASS' if ok else 'FAIL'} criterion 2 literal FE - EF = diag(-1, 1): observed FE - EF = {br['FE-EF']}"
    print(line)
    criterion_log.append(line)
    assert ok


def test_criterion_03_cocyclic_modules(criterion_log):
    with criterion(criterion_log, "criterion 3 cocyclic identities on the full equivariant basis, n <= 3", 120) as notes:
        for hopf, alg in (("kc2", "sign-line"), ("h4", "adjoint"), ("ks3", "adjoint")):
            _require(verify_cocyclic(h_algebra(hopf, alg), 3), notes, f"{hopf}/{alg}")


def test_criterion_04_phi_psi_and_cylindrical(criterion_log):
    with criterion(criterion_log, "criterion 4 phi/psi comparison and cylindrical identities, p, q <= 2", 120) as notes:
        HA = sign_line()
        _require(verify_phi_psi(HA, 2), notes, "phi-psi")
        _require(verify_cylindrical(HA, 2, 2), notes, "cylindrical")


@pytest.mark.xfail(strict=True, reason="exponents as displayed do not give the identity; tau^(p+1) taubar^(q+1) = id does")
def test_criterion_04_literal_cylindricity(criterion_log):
    rep = cylindricity_as_displayed(sign_line(), 2, 2)
    line = f"{'PASS' if rep.ok else 'FAIL'} criterion 4 literal taubar^(p+1) tau^(q+1) = id: {_summary(rep)}"
    print(line)
    criterion_log.append(line)
    assert rep.ok


def test_criterion_05_yd_twisted_products_isomorphisms(criterion_log):
    with criterion(criterion_log, "criterion 5 twisted products, YD form agreement, beta and t isomorphisms", 60) as notes:
        h4_self = adjoint(sweedler_h4())
        T = twisted_product(h4_self, h4_self)
        _require(verify_module_algebra(T.hopf, T.algebra, T.action), notes, "h4 twisted h4")
        T2 = twisted_product(sign_line(), endo_conj_algebra(regular_rep(kc2())))
        _require(verify_module_algebra(T2.hopf, T2.algebra, T2.action), notes, "sign-line twisted End")
        structures = 0
        perturbations = 0
        for key, build in sorted(H_ALGEBRAS.items()):
            HA = build()
            if HA.coaction is None:
                continue
            H, A = HA.hopf, HA.algebra
            assert (yd_condition_compat(H, A, HA.action, HA.coaction) is None) == (yd_condition_explicit(H, A, HA.action, HA.coaction) is None), key
            structures += 1
            for co in perturbed_coactions(HA, 50, seed=0):
                assert (yd_condition_compat(H, A, HA.action, co) is None) == (yd_condition_explicit(H, A, HA.action, co) is None), key
                perturbations += 1
        notes.append(f"form agreement on {structures} structures and {perturbations} perturbations")
        for hopf, alg, rep in (("kc2", "sign-line", "kc2-regular"), ("h4", "adjoint", "h4-two-dim"), ("h4", "adjoint", "h4-trivial")):
            _require(verify_beta(h_algebra(hopf, alg), REPRESENTATIONS[rep]()), notes, f"beta {hopf}/{alg}/{rep}")
        _require(verify_t(sign_line(), regular_rep(kc2()), kc2_r_matrix()), notes, "t sign-line")


def test_criterion_06_trace_map(criterion_log):
    with criterion(criterion_log, "criterion 6 Psi equivariance, commutation and Psi o beta = Psi_simplified, n <= 2", 60) as notes:
        for hopf, alg, rep in (("kc2", "sign-line", "kc2-regular"), ("h4", "adjoint", "h4-trivial")):
            HA, V = h_algebra(hopf, alg), REPRESENTATIONS[rep]()
            _require(verify_trace(HA, V, 2), notes, f"Psi {hopf}/{alg}/{rep}")
            _require(verify_trace(HA, V, 2, tag="diagonal"), notes, f"Psi diagonal {hopf}/{alg}/{rep}")
            _require(verify_beta_transport(HA, V, 2), notes, f"beta transport {hopf}/{alg}/{rep}")


def test_criterion_07_pairing(criterion_log):
    with criterion(criterion_log, "criterion 7 pairing well-defined and valued in R(H), n = 0, 1", 60) as notes:
        e = sign_line_projection()
        rep = verify_pairing(e, (0, 1), gamma=sign_line_conjugator(), other=sign_line_unit())
        _require(rep, notes, "sign-line projection")
        _require(verify_pairing(point_averaging(), (0, 1)), notes, "point averaging")
        _require(verify_periodic_pairing(e), notes, "periodic")


def test_criterion_08_homotopies(criterion_log):
    with criterion(criterion_log, "criterion 8 inner homotopy identities, n <= 2", 30) as notes:
        M, b = homotopy_case("point")
        _require(verify_homotopies(M, b, 2), notes, "point")


def test_criterion_09_dimension_law(criterion_log):
    with criterion(criterion_log, "criterion 9 dim C^n_H(A) = dim C^n(A) dim R(H) for trivial actions, n <= 3", 30) as notes:
        for hopf in ("kc2", "kc3", "ks3", "h4"):
            HA = h_algebra(hopf, "trivial-sign-line")
            H = HA.hopf
            R = invariant_functionals(H)
            R_conj = invariant_functionals_conjugation(H)
            assert same_span(R, R_conj) and len(R) == len(R_conj), hopf
            E = EquivariantComplex(HA)
            for n in range(4):
                assert len(E.equivariant_basis(n)) == HA.algebra.dim ** (n + 1) * len(R), (hopf, n)
            notes.append(f"{hopf} dim R(H) = {len(R)}")


def test_criterion_10_rewrite_soundness(criterion_log):
    with criterion(criterion_log, "criterion 10 confluence at degree 6 and well-defined generator action", 30) as notes:
        U, _ = uq_su2()
        _require(check_confluence(U, 6), notes, "U_q(su2)")
        _require(check_confluence(podles_sphere(), 6), notes, "Podles sphere")
        _require(podles_action().verify(), notes, "action")
