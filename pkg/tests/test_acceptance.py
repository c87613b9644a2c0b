"""End-to-end verification of the library's headline numerical claims.

Each test freezes the key quantities of one worked construction at its
stated tolerance, so the suite doubles as a regression harness for the
whole pipeline: classification, discrimination, cone audits, distance
bounds, simulability, and symmetry.
"""

import numpy as np
import pytest

from gptcone.cones import (
    PSD,
    capacity_demo,
    gurvits_ball_contains,
    make_named_cone,
    ses_model,
)
from gptcone.discrimination import (
    entropy_example_audit,
    err_of_measurement,
    helstrom,
    min_error_over_cone,
)
from gptcone.dovm import (
    Dovm,
    aq_advantage_states,
    bq_witness_states,
    classify,
)
from gptcone.dual import dual_identity_check
from gptcone.fixtures import DIMS_22, appendix_measurement, appendix_states
from gptcone import pses
from gptcone.herm import BipartiteDims, norm, trace_inner
from gptcone.sampling import (
    haar_unitary,
    random_herm,
    random_max_entangled_state,
    random_state,
)
from gptcone.simulability import n_copy_overlap, non_simulability_certificate
from gptcone.symmetry import two_symmetry_counterexample
from gptcone.verdict import UNKNOWN, MembershipVerdict


def test_fixture_spectrum_and_classification(e_pair, e_dovm):
    e1, e2 = e_pair
    spec = np.linalg.eigvalsh(e1)
    assert np.max(np.abs(spec - [-0.5, 0.5, 0.5, 1.5])) <= 1e-9
    assert classify(e_dovm).tag == "BQ"
    assert np.max(np.abs(e1 + e2 - np.eye(4))) <= 1e-12


def test_nonorthogonal_perfect_discrimination():
    rho1, rho2, _, _ = appendix_states()
    e1, e2 = appendix_measurement()
    table = np.array([[trace_inner(rho1, e1), trace_inner(rho1, e2)],
                      [trace_inner(rho2, e1), trace_inner(rho2, e2)]])
    assert np.max(np.abs(table - np.eye(2))) <= 1e-12
    assert trace_inner(rho1, rho2) == pytest.approx(0.25, abs=1e-15)


def test_perfect_pair_construction(e_dovm):
    rho1, rho2, overlap = bq_witness_states(e_dovm)
    table = np.array([[trace_inner(rho1, e_dovm.m1), trace_inner(rho1, e_dovm.m2)],
                      [trace_inner(rho2, e_dovm.m1), trace_inner(rho2, e_dovm.m2)]])
    assert np.max(np.abs(table - np.eye(2))) <= 1e-9
    assert overlap == pytest.approx(0.75, abs=1e-9)


def test_psd_restricted_error_matches_trace_norm_bound():
    cone = make_named_cone(PSD, dim=4)
    worst = 0.0
    rng = np.random.default_rng(11)
    for _ in range(100):
        rho1, rho2 = random_state(4, rng), random_state(4, rng)
        target = 1.0 - 0.5 * norm(rho1 - rho2, "trace")
        cval, _ = min_error_over_cone(rho1, rho2, cone)
        worst = max(worst, abs(cval - target))
    assert worst <= 1e-6


def test_advantage_margin_values(e_dovm):
    rho1, rho2, margin = aq_advantage_states(e_dovm)
    err = err_of_measurement(rho1, rho2, e_dovm.effects)
    hval, _ = helstrom(rho1, rho2)
    assert err == pytest.approx(0.6464466, abs=1e-6)
    assert hval == pytest.approx(0.8232233, abs=1e-6)
    assert margin == pytest.approx(1.0 / (np.sqrt(2.0) * 4.0), abs=1e-6)
    assert norm(4.0 * rho2 - np.eye(4), "hilbert_schmidt") == \
        pytest.approx(1.0, abs=1e-9)
    assert gurvits_ball_contains(4.0 * rho2)


def test_no_advantage_without_negative_deciding_eigenvalue():
    bypass = (MembershipVerdict(UNKNOWN, tier="given"),) * 2
    rng = np.random.default_rng(5)
    violations = 0
    for k in range(500):
        U = haar_unitary(4, rng)
        if k % 2 == 0:
            spec = np.sort(rng.uniform(0.0, 1.0, size=4))
        else:
            lam1 = -rng.uniform(0.05, 0.5)
            top = 1.0 + lam1 - rng.uniform(0.0, 0.3)
            spec = np.sort(np.concatenate(
                [[lam1, max(top, lam1 + 1e-3)],
                 rng.uniform(lam1, max(top, lam1 + 1e-3), size=2)]))
        m1 = (U * spec) @ U.conj().T
        dovm = Dovm(m1=m1, m2=np.eye(4) - m1, dims=DIMS_22,
                    block_positivity_evidence=bypass)
        assert classify(dovm).tag in ("POVM", "NAQ")
        rho1, rho2 = random_state(4, rng), random_state(4, rng)
        hval, _ = helstrom(rho1, rho2)
        err = min(err_of_measurement(rho1, rho2, dovm.effects),
                  err_of_measurement(rho2, rho1, dovm.effects))
        if err < hval - 1e-9:
            violations += 1
    assert violations == 0


def test_deformation_audit_and_threshold():
    fam = pses.generalized_bell(2)
    params = pses.PsesParams(family_set=pses.swap_pair(fam), r=0.1,
                             dims=fam.dims)
    audit = pses.predual_audit(params, product_samples=10_000)
    assert audit.ok
    prod = audit.checks["product_state_nonnegativity"]
    assert prod["samples"] == 10_000
    assert prod["min_value"] >= -1e-9
    assert audit.checks["endpoint_gram"]["min_value"] >= -1e-9
    assert pses.r0(fam.dims) == pytest.approx(0.2071068, abs=1e-7)

    bad = pses.PsesParams(family_set=pses.swap_pair(fam), r=0.3,
                          dims=fam.dims)
    bad_audit = pses.predual_audit(bad, product_samples=1000)
    gram = bad_audit.checks["endpoint_gram"]
    assert not gram["ok"]
    i, j = gram["min_pair"]
    gens = pses.npm_endpoint_generators(bad)
    assert trace_inner(gens[i], gens[j]) == pytest.approx(gram["min_value"],
                                                          abs=1e-12)
    assert gram["min_value"] < -1e-9


def test_discrimination_example_closed_forms():
    fam = pses.generalized_bell(2)
    (M1, M2), (rho1, rho2), overlap = pses.dist_example(0.1, fam, tol=1e-10)
    assert overlap == pytest.approx(pses.overlap_closed_form(0.1), abs=1e-12)
    assert overlap == pytest.approx(0.1527778, abs=1e-7)
    table = np.array([[trace_inner(rho1, M1), trace_inner(rho1, M2)],
                      [trace_inner(rho2, M1), trace_inner(rho2, M2)]])
    assert np.max(np.abs(table - np.eye(2))) <= 1e-10
    eps = pses.eps_of_r(0.1)
    assert eps == pytest.approx(0.8164966, abs=1e-7)
    rel = pses.overlap_eps_relation(eps)
    assert rel["rederived_matches"]
    assert not rel["printed_matches"]
    assert rel["rederived_bound"] == pytest.approx(overlap, abs=1e-12)


def test_distance_witness_over_haar_targets():
    fam = pses.generalized_bell(2)
    params = pses.PsesParams(family_set=pses.swap_pair(fam), r=0.1,
                             dims=fam.dims)
    eps = pses.eps_of_r(0.1)
    rng = np.random.default_rng(17)
    for _ in range(100):
        sigma = random_max_entangled_state(2, rng)
        dist, rho0 = pses.distance_upper_bound(params, sigma, restarts=4)
        assert dist == pytest.approx(1.0 / 3.0, abs=1e-9)
        assert dist <= eps
        for N in pses.npm_endpoint_generators(params):
            assert trace_inner(rho0, N) >= -1e-8


def test_non_simulability_and_copy_overlaps(e_dovm):
    cert = non_simulability_certificate(e_dovm)
    assert cert.status == "NonSimulable"
    rho1, rho2, _, _ = appendix_states()
    for n in range(1, 6):
        assert n_copy_overlap(rho1, rho2, n) == pytest.approx(0.25**n,
                                                              abs=1e-12)


def test_shrunk_bloch_instance():
    from gptcone.simulability import shrunk_bloch_example

    rep = shrunk_bloch_example(0.5, samples=1000)
    assert rep["valid_on_domain"]
    assert rep["table_residual"] <= 1e-12
    assert rep["overlap"] == pytest.approx(0.375, abs=1e-12)
    assert rep["certificate"].status == "NonSimulable"


def test_entropy_decomposition_gap():
    rep = entropy_example_audit()
    assert rep["pass"]
    assert rep["decomposition_residual"] <= 1e-12
    assert rep["entropy_first_bits"] == pytest.approx(0.9182958, abs=5e-4)
    assert rep["entropy_second_bits"] == pytest.approx(0.7440, abs=5e-4)
    assert rep["entropy_gap_bits"] > 0.17


def test_sum_dual_equals_dual_intersection():
    rng = np.random.default_rng(23)
    for pair in range(20):
        g1 = [random_herm(3, rng) for _ in range(4)]
        g2 = [random_herm(3, rng) for _ in range(4)]
        rep = dual_identity_check(g1, g2, samples=1000, seed=pair)
        assert rep.ok
        assert rep.samples == 1000
        assert rep.disagreements == []


def test_capacity_product_basis_tables():
    for dA, dB in ((2, 2), (2, 3)):
        model = ses_model(BipartiteDims(dA, dB))
        states, meas = capacity_demo(model)
        n = dA * dB
        assert len(states) == n
        assert len(meas) == n
        table = np.array([[trace_inner(s, e) for e in meas.effects]
                          for s in states])
        assert np.max(np.abs(table - np.eye(n))) <= 1e-12


def test_two_symmetry_gap_and_invariance():
    rep = two_symmetry_counterexample(samples=200, tol=1e-10)
    assert rep["pair_one_overlap"] == pytest.approx(0.25, abs=1e-12)
    assert rep["pair_two_overlap"] == pytest.approx(0.0, abs=1e-12)
    assert rep["invariance_violation"] <= 1e-10
    assert rep["transforms_checked"] == 200
    assert not rep["equivalent"]
