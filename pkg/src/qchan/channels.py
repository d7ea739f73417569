"""Quantum channels in Kraus form: algebra, constructors, structural checks.

Channel equality is decided by Choi-matrix distance (Frobenius); the Choi
matrix uses the unnormalized maximally entangled reference, so Tr(choi) = dim
and complete positivity means choi eigenvalues >= -CP_EIG_TOL.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import weyl as weyl_mod
from .errors import (
    CapacityError,
    NotCompletelyPositiveError,
    UsageError,
    ValidationError,
)
from .linalg import (
    DIM_CAP,
    SIMPLEX_TOL,
    as_complex_matrix,
    dagger,
    frobenius,
    frozen,
    hermitian_eig,
)
from .rng import substream
from .states import DensityMatrix, PureState, density_from_matrix

# Trace-preservation / unitality residual limit, scaled by dim.
TP_TOL = 1e-10
# Unitarity tolerance for mixture constituents, scaled by dim.
UNITARY_TOL = 1e-10
# Choi eigenvalues above this are accepted as CP.
CP_EIG_TOL = 1e-10
# Channels whose Choi matrices are closer than this are considered equal.
CHOI_EQ_TOL = 1e-11


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map as a stack of Kraus operators."""

    ops: np.ndarray  # shape (m, dim, dim), read-only
    dim: int
    choi: np.ndarray  # shape (dim^2, dim^2), cached eagerly, read-only

    @property
    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        return tuple(self.ops[k] for k in range(self.ops.shape[0]))

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        """Sum_k K_k x K_k* on an arbitrary operator."""
        x = as_complex_matrix(x)
        if x.shape[0] != self.dim:
            raise UsageError(f"operator dimension {x.shape[0]} != channel dimension {self.dim}")
        return np.einsum("kij,jl,kml->im", self.ops, x, self.ops.conj())

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        """Apply to a state; the output is validated as a state."""
        if rho.dim != self.dim:
            raise UsageError(f"state dimension {rho.dim} != channel dimension {self.dim}")
        return density_from_matrix(self.apply_matrix(rho.matrix))

    def apply_pure(self, psi: PureState) -> np.ndarray:
        """Output density matrix for a pure input (fast path, not revalidated)."""
        if psi.dim != self.dim:
            raise UsageError(f"state dimension {psi.dim} != channel dimension {self.dim}")
        v = self.ops @ psi.amplitudes
        return np.einsum("ka,kb->ab", v, v.conj())

    def adjoint_apply(self, y: np.ndarray) -> np.ndarray:
        """Heisenberg-picture action Sum_k K_k* y K_k."""
        y = as_complex_matrix(y)
        return np.einsum("kji,jl,klm->im", self.ops.conj(), y, self.ops)

    def compose(self, other: KrausChannel) -> KrausChannel:
        """self after other: Kraus set {A_i B_j}."""
        if self.dim != other.dim:
            raise UsageError(f"cannot compose channels of dimensions {self.dim} and {other.dim}")
        prod = np.einsum("aij,bjk->abik", self.ops, other.ops)
        return kraus_channel(prod.reshape(-1, self.dim, self.dim))

    def tensor(self, other: KrausChannel, dim_cap: int = DIM_CAP) -> KrausChannel:
        """Tensor product channel: Kraus set {A_i (x) B_j}."""
        composite = self.dim * other.dim
        if composite > dim_cap:
            raise CapacityError(f"composite dimension {composite} exceeds cap {dim_cap}")
        ops = [np.kron(a, b) for a in self.ops for b in other.ops]
        return kraus_channel(np.array(ops))

    def tensor_power(self, n: int, dim_cap: int = DIM_CAP) -> KrausChannel:
        out = self
        for _ in range(n - 1):
            out = out.tensor(self, dim_cap=dim_cap)
        return out

    def reduced(self) -> KrausChannel:
        """Equivalent channel with at most dim^2 Kraus operators.

        Rebuilt from the Choi eigendecomposition; composing and tensoring
        multiply operator counts, and this trims the redundancy (Choi distance
        to the original is float noise).  The eigenvalue cutoff stays well
        inside the trace-preservation budget.
        """
        if self.ops.shape[0] <= self.dim * self.dim:
            return self
        values, vectors = hermitian_eig(self.choi)
        ops = [
            math.sqrt(g) * v.reshape(self.dim, self.dim)
            for g, v in zip(values, vectors.T)
            if g > 1e-12 * self.dim
        ]
        return kraus_channel(np.array(ops))


def kraus_channel(ops) -> KrausChannel:
    """Validate a Kraus operator list/stack and build the channel (Choi cached)."""
    arr = np.asarray(ops, dtype=complex)
    if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] != arr.shape[2]:
        raise ValidationError(f"expected a nonempty stack of square Kraus operators, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError("Kraus operators must have finite entries")
    dim = arr.shape[1]
    gram = np.einsum("kji,kjl->il", arr.conj(), arr)
    tp_residual = frobenius(gram - np.eye(dim))
    if tp_residual > TP_TOL * dim:
        raise ValidationError(
            f"trace preservation violated: ||Sum K*K - I||_F = {tp_residual:.3e} "
            f"exceeds {TP_TOL:.0e} * dim"
        )
    vecs = arr.reshape(arr.shape[0], dim * dim)
    choi = np.einsum("ka,kb->ab", vecs, vecs.conj())
    return KrausChannel(ops=frozen(arr), dim=dim, choi=frozen(choi))


def choi_distance(a: KrausChannel, b: KrausChannel) -> float:
    """Frobenius distance between Choi matrices; the channel equality metric."""
    if a.dim != b.dim:
        raise UsageError(f"cannot compare channels of dimensions {a.dim} and {b.dim}")
    return frobenius(a.choi - b.choi)


def channels_equal(a: KrausChannel, b: KrausChannel, tol: float = CHOI_EQ_TOL) -> bool:
    return choi_distance(a, b) <= tol


@dataclass(frozen=True)
class ChannelChecks:
    """Structural report: residuals with their pass/fail verdicts."""

    tp_residual: float
    unitality_residual: float
    choi_min_eigenvalue: float
    trace_preserving: bool
    unital: bool
    completely_positive: bool


def structural_checks(c) -> ChannelChecks:
    """Trace preservation, unitality and CP margins.

    Accepts a KrausChannel or a raw operator stack, so invalid Kraus sets
    (which the constructor refuses) can still be diagnosed.
    """
    if isinstance(c, KrausChannel):
        ops, dim, choi = c.ops, c.dim, c.choi
    else:
        ops = np.asarray(c, dtype=complex)
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise ValidationError(f"expected a stack of square operators, got shape {ops.shape}")
        dim = ops.shape[1]
        vecs = ops.reshape(ops.shape[0], dim * dim)
        choi = np.einsum("ka,kb->ab", vecs, vecs.conj())
    eye = np.eye(dim)
    tp = frobenius(np.einsum("kji,kjl->il", ops.conj(), ops) - eye)
    unital = frobenius(np.einsum("kij,klj->il", ops, ops.conj()) - eye)
    choi_min = float(hermitian_eig(choi).values[0])
    return ChannelChecks(
        tp_residual=tp,
        unitality_residual=unital,
        choi_min_eigenvalue=choi_min,
        trace_preserving=tp <= TP_TOL * dim,
        unital=unital <= TP_TOL * dim,
        completely_positive=choi_min >= -CP_EIG_TOL,
    )


def identity_channel(dim: int) -> KrausChannel:
    return kraus_channel(np.eye(dim, dtype=complex)[None, :, :])


# ---------------------------------------------------------------------------
# Depolarizing channel


@dataclass(frozen=True)
class DepolarizingParams:
    """Mixing strength p with (1-p) x + (p/l) Tr(x) I; CP for p <= l^2/(l^2-1).

    p = 0 (the identity channel) is admitted as the degenerate limit so that
    qubit factorization covers lambda_3 = 1.
    """

    l: int
    p: float

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 2:
            raise UsageError(f"dimension l must be an integer >= 2, got {self.l}")
        bound = self.l * self.l / (self.l * self.l - 1)
        if not 0.0 <= self.p <= bound:
            raise UsageError(f"depolarizing p must lie in [0, {bound}], got {self.p}")


def depolarizing(l: int, p: float) -> KrausChannel:
    """Depolarizing channel in Kraus form via its Weyl mixture representation.

    Weight 1 - (l^2-1) p / l^2 on the identity and p / l^2 on each of the
    l^2 - 1 nonidentity Weyl unitaries.
    """
    params = DepolarizingParams(l=l, p=p)
    system = weyl_mod.weyl_system(params.l)
    mu_e = 1.0 - (l * l - 1) * p / (l * l)
    mu_g = p / (l * l)
    if mu_e < -1e-12:
        raise UsageError(f"depolarizing p={p} gives negative identity weight {mu_e}")
    mu_e = max(mu_e, 0.0)
    ops = []
    for g in system.elements:
        w = mu_e if g == system.identity else mu_g
        if w > 0.0:
            ops.append(math.sqrt(w) * system.unitary(g))
    return kraus_channel(np.array(ops))


# ---------------------------------------------------------------------------
# Phase damping (Schur multiplier) channel


@dataclass(frozen=True)
class PhaseDampingParams:
    """Damping coefficients q_1..q_{l-1}, each in [0, 1]; q_0 = 1 implicit.

    The multiplier scales entry (s, j) by q_|s-j| for |s-j| < l-1 and the
    two corner entries (1, l), (l, 1) by q_1, so q_{l-1} never enters the map.
    """

    l: int
    q: tuple[float, ...]

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 2:
            raise UsageError(f"dimension l must be an integer >= 2, got {self.l}")
        q = tuple(float(v) for v in self.q)
        if len(q) != self.l - 1:
            raise UsageError(f"phase damping needs {self.l - 1} coefficients q_1..q_{self.l - 1}, got {len(q)}")
        for j, v in enumerate(q, start=1):
            if not 0.0 <= v <= 1.0:
                raise UsageError(f"phase damping coefficient q_{j} = {v} outside [0, 1]")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class SchurReport:
    """Multiplier coefficient matrix with its CP certificate eigenvalue."""

    matrix: np.ndarray
    min_eigenvalue: float


def schur_matrix(params: PhaseDampingParams) -> SchurReport:
    """Coefficient matrix C of the damping multiplier; C PSD iff the map is CP."""
    l = params.l
    c = np.ones((l, l))
    for s in range(l):
        for j in range(l):
            d = abs(s - j)
            if d == 0:
                continue
            c[s, j] = params.q[0] if d == l - 1 else params.q[d - 1]
    min_eig = float(np.linalg.eigvalsh(c)[0])
    return SchurReport(matrix=frozen(c), min_eigenvalue=min_eig)


def phase_damping(l: int, q) -> KrausChannel:
    """Schur-multiplier channel fixing every basis projection.

    Kraus operators are sqrt(gamma_i) diag(v_i) from the eigendecomposition of
    the coefficient matrix; a matrix that is not PSD is rejected as not CP.
    """
    params = q if isinstance(q, PhaseDampingParams) else PhaseDampingParams(l=l, q=tuple(np.atleast_1d(q)))
    report = schur_matrix(params)
    if report.min_eigenvalue < -CP_EIG_TOL:
        raise NotCompletelyPositiveError(
            f"phase damping multiplier is not PSD: min eigenvalue {report.min_eigenvalue:.6e}",
            report.min_eigenvalue,
        )
    gammas, vectors = np.linalg.eigh(report.matrix)
    ops = []
    for gamma, v in zip(gammas, vectors.T):
        if gamma > 0.0:
            ops.append(math.sqrt(gamma) * np.diag(v.astype(complex)))
    return kraus_channel(np.array(ops))


# ---------------------------------------------------------------------------
# Bistochastic qubit (Pauli mixture) channel

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class PauliQubitParams:
    """Bloch contraction factors (lambda_1, lambda_2, lambda_3) of a Pauli mixture."""

    lambda1: float
    lambda2: float
    lambda3: float

    def mixing_weights(self) -> tuple[float, float, float, float]:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        return (
            (1 + l1 + l2 + l3) / 4,
            (1 + l1 - l2 - l3) / 4,
            (1 - l1 + l2 - l3) / 4,
            (1 - l1 - l2 + l3) / 4,
        )


def pauli_qubit(lambda1: float, lambda2: float, lambda3: float) -> KrausChannel:
    """Mixture of I, X, Y, Z scaling the Bloch components by the given factors."""
    params = PauliQubitParams(lambda1, lambda2, lambda3)
    weights = np.array(params.mixing_weights())
    if weights.min() < -1e-12:
        raise NotCompletelyPositiveError(
            f"Pauli mixture weight {weights.min():.6e} is negative; map is not CP",
            float(weights.min()),
        )
    weights = np.maximum(weights, 0.0)
    weights /= weights.sum()
    ops = []
    for w, sigma in zip(weights, (np.eye(2, dtype=complex), PAULI_X, PAULI_Y, PAULI_Z)):
        if w > 0.0:
            ops.append(math.sqrt(w) * sigma)
    return kraus_channel(np.array(ops))


def qubit_factorize(lambda1: float, lambda3: float) -> tuple[PhaseDampingParams, DepolarizingParams]:
    """Split a (l1, l1, l3) qubit channel into phase damping after depolarizing.

    Returns q_1 = lambda1/lambda3 and 1 - p = lambda3; requires
    |lambda1| <= lambda3 and 0 < lambda3 <= 1.  Negative lambda1 yields q_1
    outside [0, 1] and is rejected by the damping parameter range.
    """
    if not 0.0 < lambda3 <= 1.0:
        raise UsageError(f"factorization needs 0 < lambda3 <= 1, got {lambda3}")
    if abs(lambda1) > lambda3:
        raise UsageError(f"factorization needs |lambda1| <= lambda3, got {lambda1}, {lambda3}")
    damping = PhaseDampingParams(l=2, q=(lambda1 / lambda3,))
    depo = DepolarizingParams(l=2, p=1.0 - lambda3)
    return damping, depo


# ---------------------------------------------------------------------------
# Mixtures of unitaries and conditional expectations


@dataclass(frozen=True)
class MixtureWeights:
    """A probability vector over unitaries."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        if not w:
            raise ValidationError("mixture needs at least one weight")
        if min(w) < 0.0:
            raise ValidationError(f"negative mixture weight {min(w)}")
        if abs(sum(w) - 1.0) > SIMPLEX_TOL:
            raise ValidationError(f"mixture weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "weights", w)


def mixture_of_unitaries(weights, unitaries) -> KrausChannel:
    """Channel Sum_g mu_g U_g x U_g*; unital by construction."""
    mix = weights if isinstance(weights, MixtureWeights) else MixtureWeights(tuple(weights))
    mats = [as_complex_matrix(u) for u in unitaries]
    if len(mats) != len(mix.weights):
        raise UsageError(f"{len(mix.weights)} weights vs {len(mats)} unitaries")
    dim = mats[0].shape[0]
    for i, u in enumerate(mats):
        if u.shape[0] != dim:
            raise UsageError("all mixture unitaries must share one dimension")
        if frobenius(dagger(u) @ u - np.eye(dim)) > UNITARY_TOL * dim:
            raise ValidationError(f"matrix {i} is not unitary within tolerance")
    ops = [math.sqrt(w) * u for w, u in zip(mix.weights, mats) if w > 0.0]
    return kraus_channel(np.array(ops))


def conditional_expectation(family: weyl_mod.SubgroupFamily) -> KrausChannel:
    """Uniform average over the family's conjugations; projects onto its fixed algebra."""
    l = family.system.l
    return mixture_of_unitaries([1.0 / l] * l, family.unitaries())


def random_channel_from(rng: np.random.Generator, dim: int, kraus_count: int) -> KrausChannel:
    """Random channel: Gaussian Kraus stack renormalized to trace preservation."""
    if kraus_count < 1:
        raise UsageError(f"kraus_count must be >= 1, got {kraus_count}")
    g = rng.standard_normal((kraus_count, dim, dim)) + 1j * rng.standard_normal((kraus_count, dim, dim))
    gram = np.einsum("kji,kjl->il", g.conj(), g)
    values, vectors = hermitian_eig(gram)
    inv_sqrt = (vectors / np.sqrt(values)) @ dagger(vectors)
    return kraus_channel(np.einsum("kij,jl->kil", g, inv_sqrt))


def random_channel(dim: int, kraus_count: int, seed: int) -> KrausChannel:
    return random_channel_from(substream(seed), dim, kraus_count)


# ---------------------------------------------------------------------------
# Coset decomposition of the depolarizing channel


@dataclass(frozen=True)
class Eq9Decomposition:
    """Depolarizing channel rebuilt from subgroup mixtures and phase conjugations.

    reconstruction = c0 * Sum_k Phi_k + c1 * Sum_k Sum_{s>=1} U_(0,s) Phi_k(.) U_(0,s)*
    with Phi_k the lambda-mixture over the subgroup G0k.
    """

    l: int
    p: float
    c0: float
    c1: float
    lam: tuple[float, ...]
    subgroup_channels: tuple[KrausChannel, ...]
    reconstruction: KrausChannel
    choi_distance_to_depolarizing: float


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def eq9_decomposition(l: int, p: float) -> Eq9Decomposition:
    """Build and verify the coset decomposition; defined for prime l only.

    For composite l the subgroups G0k and G1 do not cover the group (for l = 4
    the element (2, 1) lies in none of them), so the decomposition's bookkeeping
    breaks down and the request is refused.
    """
    DepolarizingParams(l=l, p=p)
    if not _is_prime(l):
        system = weyl_mod.weyl_system(l)
        gap = weyl_mod.covering_report(system)
        raise UsageError(
            f"coset decomposition needs prime l; for l={l} the order-l subgroups "
            f"miss elements {list(gap.missing)[:4]}{'...' if len(gap.missing) > 4 else ''}"
        )
    system = weyl_mod.weyl_system(l)
    lam0 = 1.0 - (l - 1) * p / l
    lam = (lam0,) + ((p / l),) * (l - 1)
    c0 = (1.0 / l) * (1.0 - (l * l - 1) * p / (l * l)) / lam0
    c1 = (1.0 / l) * (p / (l * l)) / lam0
    subgroup_channels = []
    ops = []
    for k in range(l):
        family = weyl_mod.diagonal_subgroup(system, k)
        members = [system.unitary(g) for g in family.elements]
        subgroup_channels.append(mixture_of_unitaries(lam, members))
        for s, u in zip(lam, members):
            w = c0 * s
            if w > 0.0:
                ops.append(math.sqrt(w) * u)
        for sp in range(1, l):
            phase_u = system.unitary((0, sp))
            for s, u in zip(lam, members):
                w = c1 * s
                if w > 0.0:
                    ops.append(math.sqrt(w) * (phase_u @ u))
    reconstruction = kraus_channel(np.array(ops))
    dist = choi_distance(reconstruction, depolarizing(l, p))
    return Eq9Decomposition(
        l=l,
        p=p,
        c0=c0,
        c1=c1,
        lam=lam,
        subgroup_channels=tuple(subgroup_channels),
        reconstruction=reconstruction,
        choi_distance_to_depolarizing=dist,
    )


# ---------------------------------------------------------------------------
# Diagnostic reconstruction of the damping map from difference conjugations


@dataclass(frozen=True)
class Eq12Report:
    """Residual of the difference-projection representation of phase damping.

    The represented map is q_bar x + Sum_{s=1}^{l-2} Sum_{|r-j|=s, r<j}
    (q_bar - q_s) D_rj x D_rj + (q_bar - q_1) D_1l x D_1l with
    D_rj = |e_r><e_r| - |e_j><e_j| and q_bar = (1 + Sum_{j<=l-2} q_j)/(l-1).
    The residual against the damping map is reported, not asserted zero: the
    representation does not reproduce the diagonal action in general.
    """

    l: int
    q_bar: float
    reconstruction_residual: float
    entry_residuals: np.ndarray


def eq12_representation(params: PhaseDampingParams) -> Eq12Report:
    """Evaluate the difference-projection map on all matrix units and report residuals."""
    l = params.l
    q = params.q
    q_bar = (1.0 + sum(q[: l - 2])) / (l - 1)

    def diff_proj(r: int, j: int) -> np.ndarray:
        d = np.zeros((l, l), dtype=complex)
        d[r, r] = 1.0
        d[j, j] = -1.0
        return d

    terms = []
    for s in range(1, l - 1):
        for r in range(l):
            j = r + s
            if j < l:
                terms.append((q_bar - q[s - 1], diff_proj(r, j)))
    terms.append((q_bar - q[0], diff_proj(0, l - 1)))

    damping_coeff = schur_matrix(params).matrix
    entry = np.zeros((l, l))
    for a in range(l):
        for b in range(l):
            unit = np.zeros((l, l), dtype=complex)
            unit[a, b] = 1.0
            out = q_bar * unit
            for coeff, d in terms:
                out = out + coeff * (d @ unit @ d)
            entry[a, b] = frobenius(out - damping_coeff[a, b] * unit)
    residual = float(np.sqrt((entry ** 2).sum()))
    return Eq12Report(l=l, q_bar=q_bar, reconstruction_residual=residual, entry_residuals=frozen(entry))
