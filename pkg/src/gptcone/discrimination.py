"""Two-state discrimination: error functionals, the quantum optimum, and
cone-restricted minimum error, plus the preceding-work criteria."""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from .cones import ConeRep, Measurement
from .herm import ValidationError, ensure_herm, norm, partial_transpose, trace_inner
from .herm import BipartiteDims


def err_of_measurement(rho1, rho2, measurement) -> float:
    """Sum of the two error probabilities ``Tr rho1 M2 + Tr rho2 M1``."""
    effects = measurement.effects if isinstance(measurement, Measurement) \
        else list(measurement)
    if len(effects) != 2:
        raise ValidationError("error functional needs a 2-outcome measurement")
    return trace_inner(ensure_herm(rho1), effects[1]) \
        + trace_inner(ensure_herm(rho2), effects[0])


def _check_state(rho, tol=1e-8):
    rho = ensure_herm(rho)
    if np.linalg.eigvalsh(rho)[0] < -tol or abs(np.trace(rho).real - 1.0) > tol:
        raise ValidationError("input is not a density matrix")
    return rho


def helstrom(rho1, rho2) -> tuple[float, Measurement]:
    """Minimum error sum ``1 - ||rho1 - rho2||_1 / 2`` and its optimal POVM.

    The optimizer takes M1 as the projector onto the nonnegative
    eigenspace of ``rho1 - rho2``.
    """
    rho1 = _check_state(rho1)
    rho2 = _check_state(rho2)
    delta = rho1 - rho2
    vals, vecs = np.linalg.eigh(delta)
    m1 = (vecs * (vals >= 0.0)) @ vecs.conj().T
    m2 = np.eye(delta.shape[0], dtype=complex) - m1
    value = 1.0 - 0.5 * float(np.sum(np.abs(vals)))
    return value, Measurement(effects=[m1, m2])


def _negsum_weighted(B_sqrt, delta):
    """min over 0 <= X <= I of <B^1/2 delta B^1/2, X> and its argmin."""
    core = B_sqrt @ delta @ B_sqrt
    core = (core + core.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(core)
    proj = (vecs * (vals < 0.0)) @ vecs.conj().T
    return float(np.sum(np.minimum(vals, 0.0))), proj


def min_error_over_cone(rho1, rho2, dual_cone: ConeRep,
                        iters: int = 300) -> tuple[float, Measurement]:
    """Minimum error sum when effects range over ``dual_cone``.

    The effect cone is ``cone(generators) + PSD`` (PSD included when the
    cone's oracle is PSD or it carries no oracle).  Writing the effect as
    ``M = sum mu_k g_k + T`` with both M and u - M in the cone, the PSD
    block T is eliminated in closed form (a weighted Helstrom step), and
    the generator coefficients are optimized numerically from a grid of
    endpoint starts.  Ties are broken toward the smallest coefficients.
    """
    rho1 = _check_state(rho1)
    rho2 = _check_state(rho2)
    d = rho1.shape[0]
    u = np.eye(d, dtype=complex)
    delta = rho2 - rho1
    gens = [ensure_herm(g) for g in dual_cone.generators]
    include_psd = dual_cone.oracle in ("PSD", None)
    m = len(gens)

    if not include_psd:
        # Pure generator cone: both effects must decompose exactly over the
        # generators, which is a small LP in the coefficient vectors.
        from scipy.optimize import linprog

        if m == 0:
            raise ValidationError("effect cone has no generators")
        herm_vec = lambda A: np.concatenate([A.real.reshape(-1),
                                             A.imag.reshape(-1)])
        G = np.array([herm_vec(g) for g in gens]).T
        A_eq = np.hstack([G, G])
        c = np.concatenate([[trace_inner(delta, g) for g in gens],
                            np.zeros(m)])
        lp = linprog(c, A_eq=A_eq, b_eq=herm_vec(u), bounds=(0, None))
        if not lp.success:
            raise ValidationError("unit is not decomposable over the cone")
        M = sum(a * g for a, g in zip(lp.x[:m], gens))
        return 1.0 + trace_inner(delta, M), Measurement(effects=[M, u - M])

    def sqrt_psd(B):
        vals, vecs = np.linalg.eigh(B)
        return (vecs * np.sqrt(np.maximum(vals, 0.0))) @ vecs.conj().T

    def value_and_effect(z):
        mu, nu = z[:m], z[m:]
        B = u - sum((a + b) * g for a, b, g in zip(mu, nu, gens)) \
            if m else u
        bvals = np.linalg.eigvalsh(B)
        pen = max(-bvals[0], 0.0)
        Bs = sqrt_psd(B)
        neg, proj = _negsum_weighted(Bs, delta)
        Mgen = sum(a * g for a, g in zip(mu, gens)) if m else np.zeros_like(u)
        val = 1.0 + trace_inner(delta, Mgen) + neg
        T = Bs @ proj @ Bs
        return val + 100.0 * pen, val, Mgen + (T + T.conj().T) / 2.0

    if m == 0:
        f, val, M = value_and_effect(np.zeros(0))
        return val, Measurement(effects=[M, u - M])

    # Endpoint grid: no generators, plus each (mu_k, nu_l) pair at weight 1.
    starts = [np.zeros(2 * m)]
    for k in range(m):
        for l in range(m):
            z = np.zeros(2 * m)
            z[k], z[m + l] = 1.0, 1.0
            if np.linalg.eigvalsh(u - gens[k] - gens[l])[0] >= -1e-9:
                starts.append(z)
        z = np.zeros(2 * m)
        z[k] = 1.0
        if np.linalg.eigvalsh(u - gens[k])[0] >= -1e-9:
            starts.append(z)

    best = (np.inf, np.inf, None, np.inf)
    for z0 in starts:
        res = minimize(lambda z: value_and_effect(z)[0], z0, method="Powell",
                       bounds=[(0.0, None)] * (2 * m),
                       options={"maxiter": iters, "xtol": 1e-10, "ftol": 1e-12})
        f, val, M = value_and_effect(np.maximum(res.x, 0.0))
        coeff_norm = float(np.linalg.norm(res.x))
        key = (round(val, 12), coeff_norm)
        if val < best[0] - 1e-12 or (abs(val - best[0]) <= 1e-12
                                     and coeff_norm < best[3]):
            best = (val, f, M, coeff_norm)
    val, _, M, _ = best
    return val, Measurement(effects=[M, u - M])


def perfectly_distinguishable(states, measurement, tol: float = 1e-9) -> bool:
    """True iff the outcome Gram matrix is the identity to ``tol``."""
    effects = measurement.effects if isinstance(measurement, Measurement) \
        else list(measurement)
    if len(states) != len(effects):
        raise ValidationError("state and effect counts differ")
    gram = np.array([[trace_inner(s, e) for e in effects] for s in states])
    return float(np.max(np.abs(gram - np.eye(len(states))))) <= tol


def arai_criterion(rhoA1, rhoB1, rhoA2, rhoB2,
                   tol: float = 1e-9) -> tuple[bool, float]:
    """Perfect-distinguishability criterion for pure product pairs.

    Returns ``(lhs <= 1, lhs)`` with
    ``lhs = Tr rhoA1 rhoA2 + Tr rhoB1 rhoB2``.
    """
    for rho in (rhoA1, rhoB1, rhoA2, rhoB2):
        rho = ensure_herm(rho)
        vals = np.linalg.eigvalsh(rho)
        if vals[0] < -tol or abs(vals[-1] - 1.0) > 1e-8 \
                or np.sum(vals > 1e-8) != 1:
            raise ValidationError("local states must be pure (rank-1, trace 1)")
    lhs = trace_inner(rhoA1, rhoA2) + trace_inner(rhoB1, rhoB2)
    return lhs <= 1.0 + tol, lhs


def yah_region(x: float, y: float, family: str, s: float | None = None,
               t: float | None = None) -> bool:
    """Sufficient regions of local overlaps for perfect distinguishability.

    ``NEG``: ``xy <= 16 s^2 (1-x)(1-y)`` for s in [0, 1/4].
    ``SCO``: ``xy <= t (1-x)(1-y)`` for t in [0, 1]; the corresponding
    negativity parameter is ``sqrt(t)/(1+t)``.
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValidationError("x, y must lie in [0, 1]")
    if family == "NEG":
        if s is None or not 0.0 <= s <= 0.25:
            raise ValidationError("NEG family needs s in [0, 1/4]")
        return x * y <= 16.0 * s * s * (1.0 - x) * (1.0 - y)
    if family == "SCO":
        if t is None or not 0.0 <= t <= 1.0:
            raise ValidationError("SCO family needs t in [0, 1]")
        return x * y <= t * (1.0 - x) * (1.0 - y)
    raise ValidationError(f"unknown family {family!r}")


def sco_param_of_t(t: float) -> float:
    """Negativity parameter matching a SCO-region parameter t."""
    return float(np.sqrt(t) / (1.0 + t))


def preceding_measurement(alpha1: float, alpha2: float,
                          beta1: float, beta2: float):
    """The two-outcome construction underlying the preceding criteria.

    Builds ``M_i = T_i + pt(T_i)`` on 2 (x) 2 from the printed 4 x 4
    blocks.  The beta parameters are caller-supplied; the convention
    ``alpha_i^2 + beta_i^2 = 1`` is recommended but not enforced.
    """
    from .dovm import Dovm

    if not (0.0 < alpha1 <= 1.0 and 0.0 < alpha2 <= 1.0):
        raise ValidationError("alpha_i must lie in (0, 1]")
    g = alpha1 + alpha2
    if g <= 0.0:
        raise ValidationError("alpha1 + alpha2 must be positive")
    b1a1 = beta1 / alpha1
    b2a2 = beta2 / alpha2
    T1 = np.array([
        [g, 0, 0, -b1a1 * b2a2 * g],
        [0, g - 1, 0, -(g - 1) * b1a1],
        [0, 0, g - 1, -(g - 1) * b2a2],
        [-b1a1 * b2a2 * g, -(g - 1) * b1a1, -(g - 1) * b2a2, 2 - g],
    ], dtype=complex) / (2 * g)
    T2 = np.array([
        [0, 0, 0, 0],
        [0, 1, b1a1 * b2a2 * g, (g - 1) * b1a1],
        [0, b1a1 * b2a2 * g, 1, (g - 1) * b2a2],
        [0, (g - 1) * b1a1, (g - 1) * b2a2, 2 * (g - 1)],
    ], dtype=complex) / (2 * g)
    dims = BipartiteDims(2, 2)
    m1 = T1 + partial_transpose(T1, dims)
    m2 = T2 + partial_transpose(T2, dims)
    if np.max(np.abs(m1 + m2 - np.eye(4))) > 1e-10:
        raise ValidationError("construction failed the sum-to-identity check")
    return Dovm(m1=m1, m2=m2, dims=dims)


def entropy_example_audit(tol: float = 1e-12) -> dict:
    """Audit of the two-entropy decomposition example.

    One mixed state decomposes into perfectly distinguishable pure pairs
    in two ways whose weight distributions have different Shannon
    entropies.
    """
    from .fixtures import appendix_measurement, appendix_states

    rho1, rho2, sigma1, sigma2 = appendix_states()
    e1, e2 = appendix_measurement()
    w = np.sqrt(3.0)
    mix1 = rho1 / 3.0 + 2.0 * rho2 / 3.0
    mix2 = (3.0 + w) / 6.0 * sigma1 + (3.0 - w) / 6.0 * sigma2
    residual = float(np.max(np.abs(mix1 - mix2)))

    pair1_ok = perfectly_distinguishable([rho1, rho2], [e1, e2], tol=1e-12)
    # sigma1, sigma2 are orthogonal pure states: their own projectors plus
    # the complement form a quantum measurement discriminating them.
    proj = [sigma1, np.eye(4) - sigma1]
    pair2_ok = perfectly_distinguishable([sigma1, sigma2], proj, tol=1e-9)

    def h2(p):
        q = 1.0 - p
        terms = [x * np.log2(x) for x in (p, q) if x > 0]
        return -float(sum(terms))

    H1 = h2(1.0 / 3.0)
    H2 = h2((3.0 + w) / 6.0)
    return {
        "decomposition_residual": residual,
        "pair1_distinguishable": pair1_ok,
        "pair2_distinguishable": pair2_ok,
        "entropy_first_bits": H1,
        "entropy_second_bits": H2,
        "entropy_gap_bits": abs(H1 - H2),
        "pass": residual <= tol and pair1_ok and pair2_ok
                and abs(H1 - H2) > 0.17,
    }
