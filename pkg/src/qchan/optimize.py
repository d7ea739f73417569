"""Output-entropy minimization over pure states by projected gradient descent.

The search space is the unit sphere (concavity of the entropy puts the infimum
over all states on pure ones).  Each restart runs Armijo-backtracked descent
with the normalize retraction; restarts draw independent substreams from
(seed, restart index), so results are deterministic and schedule-independent.
The spectrum is floored at GRAD_FLOOR inside the gradient's logarithm; reported
values are recomputed with the clamped entropy, without the floor.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channels import KrausChannel
from .entropy import entropy_of_spectrum
from .errors import UsageError
from .rng import substream, worker_count
from .states import PureState, random_pure_from

GRAD_FLOOR = 1e-14
ARMIJO_C = 1e-4
BACKTRACK = 0.5
INITIAL_STEP = 1.0
MIN_STEP = 1e-18
# Stop a restart after this many consecutive steps that each improve the
# objective by less than STALL_RTOL relative: the iterate is at float
# resolution of its basin, far below any reported tolerance.
STALL_STEPS = 10
STALL_RTOL = 1e-14

DEFAULT_RESTARTS = 20
DEFAULT_MAX_ITER = 500
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class OptimizationResult:
    """Best restart of a sphere optimization."""

    value: float
    argmin: PureState
    restarts_used: int
    iterations: int
    converged: bool
    gradient_norm_final: float


def output_entropy(c: KrausChannel, psi: PureState) -> float:
    """S(c(|psi><psi|)) in nats."""
    return entropy_of_spectrum(np.linalg.eigvalsh(c.apply_pure(psi)))


def _entropy_objective(c: KrausChannel):
    """(value, value_and_grad) pair for psi -> S(c(psi psi*))."""

    def value(amps: np.ndarray) -> float:
        v = c.ops @ amps
        rho = np.einsum("ka,kb->ab", v, v.conj())
        return entropy_of_spectrum(np.linalg.eigvalsh(rho))

    def value_and_grad(amps: np.ndarray) -> tuple[float, np.ndarray]:
        v = c.ops @ amps
        rho = np.einsum("ka,kb->ab", v, v.conj())
        vals, vecs = np.linalg.eigh(rho)
        f = entropy_of_spectrum(vals)
        log_floored = np.log(np.maximum(vals, GRAD_FLOOR))
        l_mat = (vecs * (log_floored + 1.0)) @ vecs.conj().T
        m = c.adjoint_apply(l_mat)
        mpsi = m @ amps
        grad = -2.0 * (mpsi - np.vdot(amps, mpsi).real * amps)
        return f, grad

    return value, value_and_grad


def _purity_objective(c: KrausChannel, p: float):
    """Objectives for maximizing Tr(c(psi psi*)^p), phrased as minimization of its negative."""

    def value(amps: np.ndarray) -> float:
        v = c.ops @ amps
        rho = np.einsum("ka,kb->ab", v, v.conj())
        vals = np.maximum(np.linalg.eigvalsh(rho), 0.0)
        return -float((vals ** p).sum())

    def value_and_grad(amps: np.ndarray) -> tuple[float, np.ndarray]:
        v = c.ops @ amps
        rho = np.einsum("ka,kb->ab", v, v.conj())
        vals, vecs = np.linalg.eigh(rho)
        vals = np.maximum(vals, 0.0)
        f = -float((vals ** p).sum())
        power = (vecs * (vals ** (p - 1.0))) @ vecs.conj().T
        m = c.adjoint_apply(power)
        mpsi = m @ amps
        grad = -2.0 * p * (mpsi - np.vdot(amps, mpsi).real * amps)
        return f, grad

    return value, value_and_grad


def entropy_gradient(c: KrausChannel, psi: PureState) -> np.ndarray:
    """Riemannian gradient of psi -> S(c(psi psi*)) on the unit sphere.

    Equals -2 (I - psi psi*) c_adj(log c(rho) + I) psi with the output spectrum
    floored at GRAD_FLOOR inside the logarithm.
    """
    if psi.dim != c.dim:
        raise UsageError(f"state dimension {psi.dim} != channel dimension {c.dim}")
    _, value_and_grad = _entropy_objective(c)
    return value_and_grad(psi.amplitudes)[1]


@dataclass(frozen=True)
class _RestartOutcome:
    value: float
    amps: np.ndarray
    iterations: int
    converged: bool
    gradient_norm: float


def _descend(
    value: Callable[[np.ndarray], float],
    value_and_grad: Callable[[np.ndarray], tuple[float, np.ndarray]],
    start: np.ndarray,
    max_iter: int,
    tol: float,
) -> _RestartOutcome:
    amps = start / np.linalg.norm(start)
    f, grad = value_and_grad(amps)
    gnorm = float(np.linalg.norm(grad))
    iterations = 0
    stalled_steps = 0
    for _ in range(max_iter):
        if gnorm < tol:
            break
        step = INITIAL_STEP
        accepted = False
        while step >= MIN_STEP:
            cand = amps - step * grad
            cand = cand / np.linalg.norm(cand)
            f_cand = value(cand)
            if f_cand <= f - ARMIJO_C * step * gnorm * gnorm:
                accepted = True
                break
            step *= BACKTRACK
        if not accepted:
            break  # line search stalled: gradient no longer descends at float precision
        amps = cand
        f_prev = f
        f, grad = value_and_grad(amps)
        gnorm = float(np.linalg.norm(grad))
        iterations += 1
        if f_prev - f < STALL_RTOL * max(1.0, abs(f_prev)):
            stalled_steps += 1
            if stalled_steps >= STALL_STEPS:
                break
        else:
            stalled_steps = 0
    return _RestartOutcome(
        value=f, amps=amps, iterations=iterations, converged=gnorm < tol, gradient_norm=gnorm
    )


def _optimize_on_sphere(
    value: Callable[[np.ndarray], float],
    value_and_grad: Callable[[np.ndarray], tuple[float, np.ndarray]],
    dim: int,
    restarts: int,
    max_iter: int,
    tol: float,
    seed: int,
    initial_states: tuple[PureState, ...] = (),
    seed_path: tuple[int, ...] = (),
) -> OptimizationResult:
    if restarts < 1:
        raise UsageError(f"restarts must be >= 1, got {restarts}")

    def run(r: int) -> _RestartOutcome:
        if r < len(initial_states):
            start = initial_states[r].amplitudes.astype(complex)
        else:
            start = random_pure_from(substream(seed, *seed_path, r), dim).amplitudes
        return _descend(value, value_and_grad, start, max_iter, tol)

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(restarts)))
    else:
        outcomes = [run(r) for r in range(restarts)]
    best_index = min(range(restarts), key=lambda r: (outcomes[r].value, r))
    best = outcomes[best_index]
    return OptimizationResult(
        value=best.value,
        argmin=PureState(best.amps),
        restarts_used=restarts,
        iterations=best.iterations,
        converged=best.converged,
        gradient_norm_final=best.gradient_norm,
    )


def min_output_entropy(
    c: KrausChannel,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    initial_states: tuple[PureState, ...] = (),
    seed_path: tuple[int, ...] = (),
) -> OptimizationResult:
    """Best output entropy over restarted descent; deterministic per seed."""
    value, value_and_grad = _entropy_objective(c)
    return _optimize_on_sphere(
        value, value_and_grad, c.dim, restarts, max_iter, tol, seed, initial_states, seed_path
    )


def max_output_purity(
    c: KrausChannel,
    p: float,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    initial_states: tuple[PureState, ...] = (),
    seed_path: tuple[int, ...] = (),
) -> OptimizationResult:
    """Maximize Tr(c(psi psi*)^p); the result's value is the attained maximum."""
    if p <= 1.0:
        raise UsageError(f"norm index must satisfy p > 1, got {p}")
    value, value_and_grad = _purity_objective(c, p)
    res = _optimize_on_sphere(
        value, value_and_grad, c.dim, restarts, max_iter, tol, seed, initial_states, seed_path
    )
    return OptimizationResult(
        value=-res.value,
        argmin=res.argmin,
        restarts_used=res.restarts_used,
        iterations=res.iterations,
        converged=res.converged,
        gradient_norm_final=res.gradient_norm_final,
    )


def finite_difference_gradient(
    c: KrausChannel, psi: PureState, h: float = 1e-5
) -> np.ndarray:
    """Central-difference estimate of the Riemannian entropy gradient.

    Differentiates along an orthonormal real basis of the sphere's tangent
    space at psi and reassembles the vector.
    """
    value, _ = _entropy_objective(c)
    d = psi.dim
    base = np.concatenate([psi.amplitudes.real, psi.amplitudes.imag])
    # QR with the sphere normal first puts the 2d-1 tangent directions after it.
    q, _ = np.linalg.qr(np.concatenate([base[:, None], np.eye(2 * d)[:, : 2 * d - 1]], axis=1))
    tangent = q[:, 1:]
    grad_real = np.zeros(2 * d)
    for i in range(tangent.shape[1]):
        w = tangent[:, i]
        v = w[:d] + 1j * w[d:]
        plus = psi.amplitudes + h * v
        minus = psi.amplitudes - h * v
        fd = (value(plus / np.linalg.norm(plus)) - value(minus / np.linalg.norm(minus))) / (2 * h)
        grad_real += fd * w
    return grad_real[:d] + 1j * grad_real[d:]


def gradient_fd_error(c: KrausChannel, psi: PureState, h: float = 1e-5) -> float:
    """Relative disagreement between the analytic and finite-difference gradients."""
    g = entropy_gradient(c, psi)
    g_fd = finite_difference_gradient(c, psi, h)
    denom = max(float(np.linalg.norm(g)), float(np.linalg.norm(g_fd)), 1e-300)
    return float(np.linalg.norm(g - g_fd)) / denom
