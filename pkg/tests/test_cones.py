import numpy as np
import pytest

from gptcone.cones import (
    CLASSICAL_ORTHANT,
    CS_NEG,
    PSD,
    SEP,
    SEP_DUAL,
    SHRUNK_BLOCH,
    ConeRep,
    MeasurementValidationError,
    capacity_demo,
    dual_cone_membership,
    gurvits_ball_contains,
    make_named_cone,
    membership,
    min_product_expectation,
    sep_model,
    ses_model,
    validate_measurement,
)
from gptcone.herm import BipartiteDims, ValidationError, partial_transpose, trace_inner
from gptcone.sampling import random_separable_state, random_state
from gptcone.verdict import IN, OUT, UNKNOWN


@pytest.fixture(scope="module")
def sep22():
    return make_named_cone(SEP, dims=BipartiteDims(2, 2))


@pytest.fixture(scope="module")
def sepdual22():
    return make_named_cone(SEP_DUAL, dims=BipartiteDims(2, 2))


def test_psd_membership_in_out():
    cone = make_named_cone(PSD, dim=3)
    assert membership(cone, np.eye(3)).status == IN
    v = membership(cone, np.diag([1.0, -0.5, 2.0]))
    assert v.status == OUT
    # Witness is a dual element pairing negatively with the input.
    assert trace_inner(v.witness, np.diag([1.0, -0.5, 2.0])) < 0


def test_classical_orthant_membership():
    cone = make_named_cone(CLASSICAL_ORTHANT, dim=3)
    assert membership(cone, np.diag([0.3, 0.0, 1.0])).status == IN
    assert membership(cone, np.diag([0.3, -0.1, 1.0])).status == OUT
    off = np.zeros((3, 3))
    off[0, 1] = off[1, 0] = 0.5
    assert membership(cone, off + np.eye(3)).status == OUT


def test_sep_gurvits_tier(sep22):
    # Slightly depolarized identity is certified by the separability ball.
    x = np.eye(4) * 0.25 + 0.01 * np.diag([1.0, -1.0, 1.0, -1.0])
    v = membership(sep22, x)
    assert v.status == IN


def test_sep_ppt_out_with_witness(sep22, bell_state, dims22):
    v = membership(sep22, bell_state)
    assert v.status == OUT
    assert v.tier == "ppt"
    # The PPT witness is block-positive and pairs negatively with the input.
    assert trace_inner(v.witness, bell_state) < -1e-9
    val, _, _ = min_product_expectation(v.witness, dims22, restarts=16, seed=0)
    assert val >= -1e-9


def test_sep_unknown_is_honest(sep22, dims22):
    # A separable state outside the ball with PPT passing: Unknown allowed,
    # never Out.
    rho = random_separable_state(dims22, seed=3)
    assert membership(sep22, rho).status in (IN, UNKNOWN)


def test_sep_dual_tiers(sepdual22, bell_state, dims22):
    assert membership(sepdual22, np.eye(4)).status == IN
    assert membership(sepdual22, -np.eye(4)).status == OUT
    # Entanglement witness: block-positive but not PSD -> not Out.
    w = partial_transpose(bell_state, dims22)
    assert membership(sepdual22, w).status in (IN, UNKNOWN)
    # Bell projector minus too much identity is not block-positive.
    v = membership(sepdual22, bell_state - 0.3 * np.eye(4))
    assert v.status == OUT
    ab = v.witness
    assert trace_inner(ab, bell_state - 0.3 * np.eye(4)) < -1e-9


def test_shrunk_bloch_membership():
    cone = make_named_cone(SHRUNK_BLOCH, dim=2, params={"p": 0.5})
    pure = np.diag([1.0, 0.0]).astype(complex)
    assert membership(cone, pure).status == OUT
    v = membership(cone, 0.5 * pure + 0.25 * np.eye(2))
    assert v.status == IN
    out = membership(cone, pure)
    assert trace_inner(out.witness, pure) < 0


def test_shrunk_bloch_qubit_only():
    with pytest.raises(ValidationError):
        make_named_cone(SHRUNK_BLOCH, dim=3, params={"p": 0.5})
    with pytest.raises(ValidationError):
        make_named_cone(SHRUNK_BLOCH, dim=2, params={"p": 1.5})


def test_cs_neg_membership(bell_state, dims22):
    cone = make_named_cone(CS_NEG, dim=4, params={"s": 0.1}, dims=dims22)
    assert membership(cone, np.eye(4)).status in (IN, UNKNOWN)
    w = partial_transpose(bell_state, dims22)  # nege = 1/2, trace 1
    assert membership(cone, w).status == OUT
    big = make_named_cone(CS_NEG, dim=4, params={"s": 0.6}, dims=dims22)
    assert membership(big, w).status in (IN, UNKNOWN)


def test_gurvits_ball_contains():
    assert gurvits_ball_contains(np.eye(4))
    assert not gurvits_ball_contains(np.diag([2.0, 0.0, 0.0, 2.0]))


def test_min_product_expectation_matches_eigmin_on_product_ops(dims22):
    X = np.kron(np.diag([1.0, -0.5]), np.diag([1.0, 0.25]))
    val, a, b = min_product_expectation(X, dims22, restarts=16, seed=0)
    assert val == pytest.approx(-0.5, abs=1e-9)
    ab = np.kron(a, b)
    assert np.real(np.vdot(ab, X @ ab)) == pytest.approx(val, abs=1e-9)


def test_cone_rep_cross_consistency_rejected():
    g = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    h = [np.diag([-1.0, 0.0])]
    with pytest.raises(ValidationError):
        ConeRep(dim=2, generators=g, dual_generators=h)


def test_dual_cone_membership_psd_self_dual():
    cone = make_named_cone(PSD, dim=3)
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = random_state(3, rng)
        assert dual_cone_membership(cone, x).status == IN
    assert dual_cone_membership(cone, -np.eye(3)).status == OUT


def test_dual_cone_membership_sep_is_blockpos(sep22, bell_state, dims22):
    w = partial_transpose(bell_state, dims22)
    assert dual_cone_membership(sep22, w).status in (IN, UNKNOWN)
    assert dual_cone_membership(sep22, -np.eye(4)).status == OUT


def test_validate_measurement_povm_on_ses(dims22):
    model = ses_model(dims22)
    p = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    effects = [p, np.eye(4) - p]
    meas = validate_measurement(model, effects)
    assert len(meas) == 2


def test_validate_measurement_rejects_nonpositive(dims22, e_pair):
    model = ses_model(dims22)
    e1, e2 = e_pair
    with pytest.raises(MeasurementValidationError) as exc:
        validate_measurement(model, [e1, e2])
    assert exc.value.index == 0


def test_appendix_measurement_valid_on_sep_model(dims22, e_pair):
    # The beyond-quantum pair is a measurement for the separable model,
    # whose effect cone is the block-positive dual.
    model = sep_model(dims22)
    meas = validate_measurement(model, list(e_pair))
    assert len(meas) == 2


def test_validate_measurement_sum_check(dims22):
    model = ses_model(dims22)
    with pytest.raises(ValidationError):
        validate_measurement(model, [np.eye(4), 0.5 * np.eye(4)])


def test_capacity_demo_sizes():
    for dA, dB in ((2, 2), (2, 3)):
        states, meas = capacity_demo(ses_model(BipartiteDims(dA, dB)))
        assert len(states) == dA * dB
        assert len(meas) == dA * dB
        gram = np.array([[trace_inner(s, m) for m in meas.effects]
                         for s in states])
        assert np.max(np.abs(gram - np.eye(dA * dB))) <= 1e-12
