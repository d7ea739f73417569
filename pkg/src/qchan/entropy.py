"""Entropy functionals and one-shot capacity quantities.

All internal computation is in nats; the ``base`` argument ("e" or "2")
converts at the reporting boundary.  Inequality and additivity claims are
base-invariant, so the choice only affects units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel
from .errors import UsageError, ValidationError
from .linalg import EIG_CLAMP_TOL, clamp_spectrum, hermitian_eig
from .states import DensityMatrix, PureState, StateEnsemble

#: Eigenvalues of the second argument below this bound count as its kernel.
KERNEL_TOL = 1e-10

_LOG_BASES = ("e", "2")


def _check_base(base: str) -> None:
    if base not in _LOG_BASES:
        raise UsageError(f"log base must be one of {_LOG_BASES}, got {base!r}")


def _convert(nats: float, base: str) -> float:
    _check_base(base)
    return nats if base == "e" else nats / math.log(2.0)


@dataclass(frozen=True)
class EntropyValue:
    """An entropy with its logarithm base ("e" for nats, "2" for bits)."""

    value: float
    log_base: str = "e"

    def in_base(self, base: str) -> "EntropyValue":
        _check_base(base)
        if base == self.log_base:
            return self
        factor = math.log(2.0)
        value = self.value / factor if base == "2" else self.value * factor
        return EntropyValue(value=value, log_base=base)


def entropy_of_spectrum(values: np.ndarray) -> float:
    """-Sum p log p in nats with 0 log 0 = 0; clamps roundoff negatives."""
    p = clamp_spectrum(np.asarray(values, dtype=float))
    mask = p > 0.0
    return float(-(p[mask] * np.log(p[mask])).sum())


def vn_nats(matrix: np.ndarray) -> float:
    """Von Neumann entropy of a (nominally PSD) matrix, in nats."""
    return entropy_of_spectrum(hermitian_eig(matrix).values)


def von_neumann(rho: DensityMatrix, base: str = "e") -> EntropyValue:
    """S(rho) = -Tr rho log rho."""
    return EntropyValue(value=_convert(vn_nats(rho.matrix), base), log_base=base)


def subnormalized_entropy(y: np.ndarray, trace_tol: float = 1e-10) -> float:
    """-Tr(y log y) in nats for PSD y with Tr(y) <= 1, same clamping convention."""
    values = clamp_spectrum(hermitian_eig(y).values)
    total = float(values.sum())
    if total > 1.0 + trace_tol:
        raise ValidationError(f"subnormalized entropy needs Tr(y) <= 1, got {total}")
    mask = values > 0.0
    return float(-(values[mask] * np.log(values[mask])).sum())


def relative_entropy_nats(rho: np.ndarray, sigma: np.ndarray) -> float:
    """S(rho, sigma) = Tr rho log rho - Tr rho log sigma in nats; +inf off-support.

    The kernel of sigma is its eigenvalues below KERNEL_TOL; rho carrying more
    than KERNEL_TOL of mass on that kernel makes the value infinite.
    """
    p_vals, p_vecs = hermitian_eig(rho)
    s_vals, s_vecs = hermitian_eig(sigma)
    p_vals = clamp_spectrum(p_vals)
    s_vals = clamp_spectrum(s_vals)
    overlap = np.abs(p_vecs.conj().T @ s_vecs) ** 2  # overlap[i, j] = |<p_i|s_j>|^2
    weights = p_vals @ overlap  # mass of rho on each sigma eigenvector
    kernel = s_vals <= KERNEL_TOL
    if float(weights[kernel].sum()) > KERNEL_TOL:
        return math.inf
    plogp = float((p_vals[p_vals > 0.0] * np.log(p_vals[p_vals > 0.0])).sum())
    support = ~kernel
    plogs = float((weights[support] * np.log(s_vals[support])).sum())
    return plogp - plogs


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, base: str = "e") -> EntropyValue:
    """Relative entropy between two states; infinite when supports are incompatible."""
    if rho.dim != sigma.dim:
        raise UsageError(f"states have different dimensions {rho.dim}, {sigma.dim}")
    nats = relative_entropy_nats(rho.matrix, sigma.matrix)
    value = math.inf if math.isinf(nats) else _convert(nats, base)
    _check_base(base)
    return EntropyValue(value=value, log_base=base)


def holevo_chi(c: KrausChannel, ensemble: StateEnsemble, base: str = "e") -> float:
    """S(Sum pi_j c(x_j)) - Sum pi_j S(c(x_j)) for the given ensemble."""
    if ensemble.dim != c.dim:
        raise UsageError(f"ensemble dimension {ensemble.dim} != channel dimension {c.dim}")
    outputs = [c.apply_matrix(s.matrix) for s in ensemble.states]
    average = sum(p * out for p, out in zip(ensemble.probabilities, outputs))
    chi = vn_nats(average) - sum(p * vn_nats(out) for p, out in zip(ensemble.probabilities, outputs))
    return _convert(chi, base)


@dataclass(frozen=True)
class CapacityBound:
    """One-shot capacity figure log(dim) - s_min, tagged equality or upper bound."""

    value: float
    log_base: str
    equality: bool


def c1_upper_bound(c: KrausChannel, s_min: float, base: str = "e") -> CapacityBound:
    """Upper bound log(dim) - s_min; ``s_min`` is given in the same base."""
    _check_base(base)
    log_dim = _convert(math.log(c.dim), base)
    return CapacityBound(value=log_dim - s_min, log_base=base, equality=False)


def covariant_c1(c: KrausChannel, s_min: float, base: str = "e") -> CapacityBound:
    """log(dim) - s_min as an equality; the caller asserts channel covariance."""
    bound = c1_upper_bound(c, s_min, base)
    return CapacityBound(value=bound.value, log_base=base, equality=True)


def output_p_norm_value(c: KrausChannel, psi: PureState, p: float) -> float:
    """Tr(c(|psi><psi|)^p), the inner objective of the output p-norm."""
    if p <= 1.0:
        raise UsageError(f"norm index must satisfy p > 1, got {p}")
    values = clamp_spectrum(hermitian_eig(c.apply_pure(psi)).values, EIG_CLAMP_TOL)
    return float((values ** p).sum())
