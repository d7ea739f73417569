"""Validated quantum states and reproducible random sampling.

Samplers are deterministic per seed (PCG64 streams, see :mod:`qchan.rng`);
the ``*_from`` variants take an explicit generator so batch drivers can derive
independent substreams per task.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import UsageError, ValidationError
from .linalg import EIG_CLAMP_TOL, SIMPLEX_TOL, TRACE_TOL, UNIT_NORM_TOL, dagger, frozen
from .rng import substream


@dataclass(frozen=True)
class DensityMatrix:
    """A state: Hermitian, positive semidefinite, unit trace."""

    matrix: np.ndarray
    dim: int
    note: str | None = None

    def eigenvalues(self) -> np.ndarray:
        return linalg.hermitian_eig(self.matrix).values


@dataclass(frozen=True)
class PureState:
    """A unit vector of amplitudes."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise ValidationError("pure state needs at least one amplitude")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValidationError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValidationError(f"state vector norm {norm} differs from 1 by more than {UNIT_NORM_TOL:.1e}")
        object.__setattr__(self, "amplitudes", frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class StateEnsemble:
    """Probability weights over equal-dimension states."""

    probabilities: tuple[float, ...]
    states: tuple[DensityMatrix, ...] = field(default_factory=tuple)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        if len(probs) != len(self.states) or not probs:
            raise ValidationError("ensemble needs matching, nonempty probability and state lists")
        if min(probs) < 0.0:
            raise ValidationError(f"negative ensemble probability {min(probs)}")
        if abs(sum(probs) - 1.0) > SIMPLEX_TOL:
            raise ValidationError(f"ensemble probabilities sum to {sum(probs)}, not 1")
        dims = {s.dim for s in self.states}
        if len(dims) != 1:
            raise ValidationError(f"ensemble states have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "probabilities", probs)

    @property
    def dim(self) -> int:
        return self.states[0].dim


def density_from_matrix(m: np.ndarray) -> DensityMatrix:
    """Validate ``m`` as a density matrix, clamping roundoff-negative eigenvalues.

    Eigenvalues in [-1e-10, 0) are clamped to zero and the trace renormalized;
    the adjustment is recorded in the returned value's note.
    """
    m = linalg.as_complex_matrix(m)
    values, vectors = linalg.hermitian_eig(m)
    clamped = linalg.clamp_spectrum(values, EIG_CLAMP_TOL)
    trace = float(values.sum())
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValidationError(f"trace {trace} differs from 1 by more than {TRACE_TOL:.1e}")
    note = None
    if np.any(values < 0.0):
        n_clamped = int(np.count_nonzero(values < 0.0))
        rebuilt = (vectors * clamped) @ dagger(vectors)
        rebuilt /= float(clamped.sum())
        note = f"clamped {n_clamped} eigenvalue(s) in [-{EIG_CLAMP_TOL:.0e}, 0) and renormalized"
        m = rebuilt
    else:
        m = (m + dagger(m)) / 2
    return DensityMatrix(matrix=frozen(m), dim=m.shape[0], note=note)


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(matrix=frozen(np.eye(dim, dtype=complex) / dim), dim=dim)


def basis_state(dim: int, index: int) -> PureState:
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return PureState(amps)


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Rank-one projection |psi><psi|."""
    m = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(matrix=frozen(m), dim=psi.dim)


def random_pure_from(rng: np.random.Generator, dim: int) -> PureState:
    """Haar-distributed pure state: normalized standard complex Gaussian vector."""
    if dim < 1:
        raise UsageError(f"dimension must be >= 1, got {dim}")
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(v / np.linalg.norm(v))


def random_pure(dim: int, seed: int) -> PureState:
    return random_pure_from(substream(seed), dim)


def random_density_from(rng: np.random.Generator, dim: int, rank: int) -> DensityMatrix:
    """Gaussian-induced random state G G* / Tr(G G*) with G of shape dim x rank."""
    if not 1 <= rank <= dim:
        raise UsageError(f"rank must lie in [1, {dim}], got {rank}")
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ dagger(g)
    m /= float(np.trace(m).real)
    return density_from_matrix(m)


def random_density(dim: int, rank: int, seed: int) -> DensityMatrix:
    return random_density_from(substream(seed), dim, rank)


def random_unitary_from(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    return random_unitary_from(substream(seed), dim)
