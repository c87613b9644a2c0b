"""Dual-cone computation and conic feasibility.

The numerical heart of the library: membership in cones generated by a
finite list of Hermitian matrices (optionally together with the full PSD
cone), pre-duality certificates via Gram matrices, and a Frank-Wolfe
minimizer over spectrahedra used to hunt for dual-side violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .herm import ensure_herm, trace_inner
from .sampling import random_pure_state
from .verdict import IN, OUT, MembershipVerdict


@dataclass
class ConicCertificate:
    """Nonnegative combination hitting ``x`` up to ``residual`` (HS norm)."""

    coefficients: np.ndarray
    psd_part: np.ndarray | None
    residual: float


@dataclass
class Infeasible:
    """Failed conic-feasibility search.

    ``bound`` is the smallest residual reached.  This is heuristic
    evidence only, never a proof of infeasibility.
    """

    bound: float


def dual_membership(generators, x, tol: float = 1e-9) -> MembershipVerdict:
    """Is ``<x, g> >= -tol`` for every generator?

    Decides membership in the dual of the conic hull of ``generators``.
    An Out verdict carries the violating generator as witness.
    """
    if not len(generators):
        raise ValueError("dual_membership needs at least one generator")
    x = ensure_herm(x)
    vals = [trace_inner(x, g) for g in generators]
    k = int(np.argmin(vals))
    if vals[k] >= -tol:
        return MembershipVerdict(IN, margin=vals[k])
    return MembershipVerdict(OUT, witness=np.asarray(generators[k]), margin=vals[k])


def gram_predual_check(generators, tol: float = 1e-9):
    """Pairwise-Gram nonnegativity of a generating set.

    If all ``<g_i, g_j> >= 0`` then the generated cone D satisfies
    D subset D*, so C := D* contains its own dual C* = closure of D.
    Returns ``(verdict, ((i, j), value))`` with the most negative pair.
    """
    if not len(generators):
        raise ValueError("gram_predual_check needs at least one generator")
    G = np.array([np.asarray(g).reshape(-1) for g in generators])
    gram = np.real(G.conj() @ G.T)
    i, j = np.unravel_index(np.argmin(gram), gram.shape)
    worst = float(gram[i, j])
    return worst >= -tol, ((int(i), int(j)), worst)


def _neg_part(R):
    vals, vecs = np.linalg.eigh(R)
    neg = np.minimum(vals, 0.0)
    return (vecs * neg) @ vecs.conj().T, float(np.sum(neg**2))


def conic_feasibility(
    x,
    generators,
    include_psd: bool = True,
    iters: int = 10_000,
    tol: float = 1e-8,
):
    """Decide ``x in cone(generators) + PSD`` by projected gradient.

    Minimizes ``f(mu) = dist(x - sum mu_k g_k, PSD)^2`` over ``mu >= 0``
    (distance to {0} when ``include_psd`` is false) with a Lipschitz step
    and halving backtracking.  Returns a :class:`ConicCertificate` when
    ``sqrt(f) <= tol``, else :class:`Infeasible` with the final residual.
    """
    x = ensure_herm(x)
    gens = [ensure_herm(g) for g in generators]
    m = len(gens)

    def objective(mu):
        R = x - sum(c * g for c, g in zip(mu, gens)) if m else x
        if include_psd:
            Rneg, f = _neg_part(R)
            return f, R, Rneg
        f = float(np.real(np.sum(R * R.conj())))
        return f, R, R

    mu = np.zeros(m)
    f, R, D = objective(mu)
    if m:
        L = 2.0 * sum(float(np.real(np.sum(g * g.conj()))) for g in gens)
        step = 1.0 / max(L, 1e-30)
        for _ in range(iters):
            grad = np.array([-2.0 * trace_inner(D, g) for g in gens])
            if f <= tol * tol or np.linalg.norm(grad) * step < 1e-16:
                break
            s = step
            while True:
                mu_new = np.maximum(mu - s * grad, 0.0)
                f_new, R_new, D_new = objective(mu_new)
                if f_new <= f or s < 1e-18:
                    break
                s /= 2.0
            if f_new >= f - 1e-18 * max(1.0, f):
                mu, f, R, D = mu_new, f_new, R_new, D_new
                break
            mu, f, R, D = mu_new, f_new, R_new, D_new

    residual = float(np.sqrt(max(f, 0.0)))
    if residual <= tol:
        psd_part = None
        if include_psd:
            vals, vecs = np.linalg.eigh(R)
            psd_part = (vecs * np.maximum(vals, 0.0)) @ vecs.conj().T
        return ConicCertificate(mu, psd_part, residual)
    return Infeasible(residual)


def min_over_spectrahedron(
    x,
    halfspaces=(),
    iters: int = 400,
    restarts: int = 8,
    penalty: float | None = None,
    tol: float = 1e-9,
    seed: int = 0,
):
    """Heuristic minimum of ``<x, y>`` over trace-1 PSD ``y`` meeting
    ``<y, h> >= 0`` for every halfspace ``h``.

    Frank-Wolfe on the spectrahedron with a hinge penalty for halfspace
    violation.  A negative value at a feasible argmin is a valid witness
    that ``x`` is outside the dual of ``PSD intersect halfspaces``;
    nonnegative values are inconclusive evidence only.
    """
    x = ensure_herm(x)
    d = x.shape[0]
    hs = [ensure_herm(h) for h in halfspaces]
    if penalty is None:
        penalty = 10.0 * max(1.0, float(np.linalg.norm(x)))
    rng = np.random.default_rng(seed)

    def run(y):
        for k in range(iters):
            grad = x.copy()
            for h in hs:
                if trace_inner(y, h) < 0.0:
                    grad -= penalty * h
            vals, vecs = np.linalg.eigh(grad)
            v = vecs[:, 0]
            target = np.outer(v, v.conj())
            y = y + (2.0 / (k + 2.0)) * (target - y)
        return y

    def cleanup(y):
        # Alternating projections to repair small halfspace violations left
        # by the finite Frank-Wolfe run; feasibility is rechecked after, so
        # this only ever helps.
        for _ in range(200):
            moved = False
            for h in hs:
                v = trace_inner(y, h)
                if v < -tol:
                    y = y - (v / trace_inner(h, h)) * h
                    moved = True
            vals, vecs = np.linalg.eigh(ensure_herm(y, repair=True))
            clipped = np.maximum(vals, 0.0)
            total = float(np.sum(clipped))
            if total <= tol:
                break
            y = (vecs * (clipped / total)) @ vecs.conj().T
            if not moved:
                break
        return y

    best_val, best_y = np.inf, None
    starts = [np.eye(d, dtype=complex) / d]
    vals, vecs = np.linalg.eigh(x)
    v = vecs[:, 0]
    starts.append(np.outer(v, v.conj()))
    for _ in range(max(0, restarts - len(starts))):
        starts.append(random_pure_state(d, rng))
    for y0 in starts:
        y = cleanup(run(y0))
        feasible = all(trace_inner(y, h) >= -tol for h in hs)
        val = trace_inner(x, y)
        if feasible and val < best_val:
            best_val, best_y = val, y
    if best_y is None:
        # No feasible run; fall back to the maximally mixed point, which is
        # feasible whenever the halfspaces admit the identity direction.
        best_y = np.eye(d, dtype=complex) / d
        best_val = trace_inner(x, best_y)
    return best_val, best_y


@dataclass
class DualIdentityReport:
    """Sampled check of ``(C1 + C2)* = C1* intersect C2*``."""

    samples: int
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def dual_identity_check(g1, g2, samples: int = 1000, tol: float = 1e-9,
                        seed: int = 0) -> DualIdentityReport:
    """Membership in dual(g1 u g2) must equal dual(g1) AND dual(g2)."""
    from .sampling import random_herm

    g1 = [ensure_herm(g) for g in g1]
    g2 = [ensure_herm(g) for g in g2]
    d = g1[0].shape[0] if g1 else g2[0].shape[0]
    rng = np.random.default_rng(seed)
    report = DualIdentityReport(samples=samples)
    for k in range(samples):
        xs = random_herm(d, rng)
        lhs = dual_membership(g1 + g2, xs, tol).status == IN
        rhs = (dual_membership(g1, xs, tol).status == IN
               and dual_membership(g2, xs, tol).status == IN)
        if lhs != rhs:
            report.disagreements.append((k, lhs, rhs))
    return report
