"""Verification harness: structural identities, propositions, additivity.

Every check returns a structured report; batch checks report the worst
instance.  Tolerance ledger: exact algebraic identities 1e-10..1e-12,
inequality claims -1e-9 (arithmetic-limited), optimizer-backed equalities
1e-5..1e-6 (restart-limited).
"""
from __future__ import annotations

import math

import numpy as np

from . import weyl as weyl_mod
from .channels import (
    KrausChannel,
    PhaseDampingParams,
    depolarizing,
    eq9_decomposition,
    eq12_representation,
    phase_damping,
    random_channel_from,
    schur_matrix,
)
from .entropy import entropy_of_spectrum, relative_entropy_nats, subnormalized_entropy, vn_nats
from .errors import UsageError
from .linalg import dagger, frobenius, hermitian_eig, partial_trace
from .optimize import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    entropy_gradient,
    gradient_fd_error,
    max_output_purity,
    min_output_entropy,
)
from .reporting import (
    AdditivityReport,
    MultiplicativityReport,
    Prop4Report,
    Prop4Violation,
    PropositionReport,
    SuiteReport,
    TheoremReport,
    proposition_report,
)
from .rng import substream
from .states import (
    DensityMatrix,
    PureState,
    basis_state,
    density_from_matrix,
    pure_to_density,
    random_density_from,
    random_pure_from,
    random_unitary_from,
)

RESIDUAL_TOL = 1e-11
INEQ_TOL = 1e-9
EQ9_TOL = 1e-10
SMIN_EQ_TOL = 1e-6
ADDITIVITY_TOL = 1e-5
MULTIPLICATIVITY_TOL = 1e-5
BASIS_PROJ_TOL = 1e-11
GRADIENT_TOL = 1e-5
MARGINAL_TOL = 1e-8


def _lift(u: np.ndarray, dim_k: int) -> np.ndarray:
    return np.kron(u, np.eye(dim_k))


def _family_average(family: weyl_mod.SubgroupFamily, x: np.ndarray, dim_k: int = 1) -> np.ndarray:
    """Uniform conjugation average over the family, tensored with identity on K."""
    acc = np.zeros_like(x)
    for g in family.elements:
        u = family.system.unitary(g) if dim_k == 1 else _lift(family.system.unitary(g), dim_k)
        acc = acc + u @ x @ dagger(u)
    return acc / len(family.elements)


def _family_mixture(
    family: weyl_mod.SubgroupFamily, weights, x: np.ndarray, dim_k: int = 1
) -> np.ndarray:
    acc = np.zeros_like(x)
    for w, g in zip(weights, family.elements):
        u = family.system.unitary(g) if dim_k == 1 else _lift(family.system.unitary(g), dim_k)
        acc = acc + w * (u @ x @ dagger(u))
    return acc


# ---------------------------------------------------------------------------
# Resolution-of-identity and intertwining residuals (claims eq3, eq5)


def resolution_residual(
    system: weyl_mod.WeylSystem, x: DensityMatrix, transversal: str = "shift"
) -> float:
    """||Sum_k U_{g_k} E(x) U_{g_k}* - I||_F for the chosen transversal.

    E averages over the subgroup complementary to the transversal (the pairing
    that makes the resolution exact for an irreducible system); the
    representative set is configuration-exposed via ``transversal``.
    """
    if x.dim != system.l:
        raise UsageError(f"state dimension {x.dim} != system dimension {system.l}")
    reps = weyl_mod.transversal(system, transversal)
    subgroup = weyl_mod.complementary_subgroup(system, transversal)
    if not weyl_mod.is_transversal(system, reps, subgroup):
        raise UsageError(f"{transversal!r} representatives do not cut the cosets exactly once")
    averaged = _family_average(subgroup, x.matrix)
    total = np.zeros_like(averaged)
    for g in reps:
        u = system.unitary(g)
        total = total + u @ averaged @ dagger(u)
    return frobenius(total - np.eye(system.l))


def resolution_of_identity_check(
    l: int, x: DensityMatrix, transversal: str = "shift", seed: int | None = None
) -> PropositionReport:
    system = weyl_mod.weyl_system(l)
    residual = resolution_residual(system, x, transversal)
    return proposition_report(
        "eq3", lhs=0.0, rhs=residual, tolerance=RESIDUAL_TOL,
        witness={"transversal": transversal}, seed=seed,
    )


def check_eq3(l: int, samples: int = 100, seed: int = 0, transversal: str = "shift") -> PropositionReport:
    """Worst resolution residual over random mixed and pure states."""
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    system = weyl_mod.weyl_system(l)
    worst = -1.0
    worst_index = 0
    for i in range(samples):
        rng = substream(seed, i)
        rank = int(rng.integers(1, l + 1))
        x = random_density_from(rng, l, rank)
        residual = resolution_residual(system, x, transversal)
        if residual > worst:
            worst, worst_index = residual, i
    return proposition_report(
        "eq3", lhs=0.0, rhs=worst, tolerance=RESIDUAL_TOL,
        witness={"transversal": transversal, "samples": samples, "worst_index": worst_index},
        seed=seed,
    )


def intertwining_residuals(
    family: weyl_mod.SubgroupFamily, weights, x: DensityMatrix
) -> tuple[float, float]:
    """(||E(Phi(x)) - E(x)||_F, ||Phi(E(x)) - E(x)||_F) for the family mixture Phi."""
    ex = _family_average(family, x.matrix)
    phix = _family_mixture(family, weights, x.matrix)
    r1 = frobenius(_family_average(family, phix) - ex)
    r2 = frobenius(_family_mixture(family, weights, ex) - ex)
    return r1, r2


def intertwining_check(
    family: weyl_mod.SubgroupFamily, weights, x: DensityMatrix, seed: int | None = None
) -> PropositionReport:
    r1, r2 = intertwining_residuals(family, weights, x)
    return proposition_report(
        "eq5", lhs=0.0, rhs=max(r1, r2), tolerance=RESIDUAL_TOL,
        witness={"family": family.label, "residual_e_phi": r1, "residual_phi_e": r2},
        seed=seed,
    )


def check_eq5(l: int, samples: int = 100, seed: int = 0) -> PropositionReport:
    """Worst intertwining residual over families, random weights and states."""
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    system = weyl_mod.weyl_system(l)
    families = weyl_mod.all_order_l_subgroups(system)
    worst = -1.0
    worst_witness: dict = {}
    for i in range(samples):
        rng = substream(seed, i)
        family = families[i % len(families)]
        weights = rng.dirichlet(np.ones(l))
        x = random_density_from(rng, l, int(rng.integers(1, l + 1)))
        r1, r2 = intertwining_residuals(family, weights, x)
        if max(r1, r2) > worst:
            worst = max(r1, r2)
            worst_witness = {"family": family.label, "index": i,
                             "residual_e_phi": r1, "residual_phi_e": r2}
    worst_witness["samples"] = samples
    return proposition_report(
        "eq5", lhs=0.0, rhs=worst, tolerance=RESIDUAL_TOL, witness=worst_witness, seed=seed
    )


def check_eq9(l: int, p: float) -> PropositionReport:
    """Choi distance between the coset decomposition and the depolarizing channel."""
    dec = eq9_decomposition(l, p)
    normalization = abs(dec.c0 + (l - 1) * dec.c1 - 1.0 / l)
    return proposition_report(
        "eq9", lhs=0.0, rhs=dec.choi_distance_to_depolarizing, tolerance=EQ9_TOL,
        witness={"c0": dec.c0, "c1": dec.c1, "normalization_residual": normalization,
                 "l": l, "p": p},
    )


def check_eq12(l: int, q) -> PropositionReport:
    """Diagnostic reconstruction residual; reported, never asserted (open question)."""
    params = q if isinstance(q, PhaseDampingParams) else PhaseDampingParams(l=l, q=tuple(np.atleast_1d(q)))
    report = eq12_representation(params)
    worst = np.unravel_index(int(np.argmax(report.entry_residuals)), report.entry_residuals.shape)
    return proposition_report(
        "eq12", lhs=0.0, rhs=report.reconstruction_residual, tolerance=math.inf,
        witness={
            "q_bar": report.q_bar,
            "q": list(params.q),
            "max_entry_residual": float(report.entry_residuals.max()),
            "max_entry": [int(worst[0]), int(worst[1])],
            "diagnostic_only": True,
        },
    )


# ---------------------------------------------------------------------------
# prop1: coset coarse-graining decreases output entropy


def prop1_report(
    system: weyl_mod.WeylSystem,
    lam,
    eps,
    x: DensityMatrix,
    dim_k: int,
    seed: int | None = None,
) -> PropositionReport:
    """S((Phi (x) Id)(x)) >= S(coset mixture) for product weights mu = lam * eps.

    ``lam`` weighs the phase transversal {(0, k)}, ``eps`` the shift subgroup
    {(t, 0)}; their product populates the whole group.
    """
    l = system.l
    if x.dim != l * dim_k:
        raise UsageError(f"state dimension {x.dim} != {l} * {dim_k}")
    lam = np.asarray(lam, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if lam.shape != (l,) or eps.shape != (l,):
        raise UsageError(f"need {l} coset weights and {l} subgroup weights")
    for name, w in (("lambda", lam), ("epsilon", eps)):
        if w.min() < 0 or abs(w.sum() - 1.0) > 1e-12:
            raise UsageError(f"{name} weights must form a probability vector")
    lhs_mat = np.zeros_like(x.matrix)
    for k in range(l):
        for t in range(l):
            u = _lift(system.unitary((t, k)), dim_k)
            lhs_mat = lhs_mat + lam[k] * eps[t] * (u @ x.matrix @ dagger(u))
    rhs_mat = np.zeros_like(x.matrix)
    for k in range(l):
        u = _lift(system.unitary((0, k)), dim_k)
        rhs_mat = rhs_mat + lam[k] * (u @ x.matrix @ dagger(u))
    lhs = vn_nats(lhs_mat)
    rhs = vn_nats(rhs_mat)
    return proposition_report(
        "prop1", lhs=lhs, rhs=rhs, tolerance=INEQ_TOL,
        witness={"lambda": lam.tolist(), "epsilon": eps.tolist(), "dim_k": dim_k},
        seed=seed,
    )


def verify_prop1(l: int, samples: int = 200, seed: int = 0, dim_k: int | None = None) -> PropositionReport:
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    dim_k = l if dim_k is None else dim_k
    system = weyl_mod.weyl_system(l)
    worst: PropositionReport | None = None
    for i in range(samples):
        rng = substream(seed, i)
        lam = rng.dirichlet(np.ones(l))
        eps = rng.dirichlet(np.ones(l))
        x = random_density_from(rng, l * dim_k, int(rng.integers(1, l * dim_k + 1)))
        rep = prop1_report(system, lam, eps, x, dim_k)
        if worst is None or rep.margin < worst.margin:
            worst = PropositionReport(
                claim_id=rep.claim_id, lhs=rep.lhs, rhs=rep.rhs, margin=rep.margin,
                tolerance=rep.tolerance, passed=rep.passed,
                witness={**(rep.witness or {}), "worst_index": i, "samples": samples},
                seed=seed,
            )
    return worst


# ---------------------------------------------------------------------------
# prop2: entropy bound through the fixed-point resolution


def prop2_report(
    family: weyl_mod.SubgroupFamily,
    lam,
    x: DensityMatrix,
    dim_k: int,
    seed: int | None = None,
) -> PropositionReport:
    """S((Phi (x) Id)(x)) >= H(lam) + Sum_k S_sub(Tr_H((P_k (x) I) E(x))) - log l."""
    system = family.system
    l = system.l
    if x.dim != l * dim_k:
        raise UsageError(f"state dimension {x.dim} != {l} * {dim_k}")
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (l,) or lam.min() < 0 or abs(lam.sum() - 1.0) > 1e-12:
        raise UsageError(f"need a probability vector of {l} mixture weights")
    resolution = weyl_mod.fixed_point_resolution(family)
    phix = _family_mixture(family, lam, x.matrix, dim_k)
    ex = _family_average(family, x.matrix, dim_k)
    lhs = vn_nats(phix)
    middle = 0.0
    for proj in resolution.projections:
        block = partial_trace(_lift(proj, dim_k) @ ex, l, dim_k, side="left")
        middle += subnormalized_entropy(block)
    rhs = entropy_of_spectrum(lam) + middle - math.log(l)
    return proposition_report(
        "prop2", lhs=lhs, rhs=rhs, tolerance=INEQ_TOL,
        witness={"family": family.label, "lambda": lam.tolist(), "dim_k": dim_k},
        seed=seed,
    )


def verify_prop2(l: int, samples: int = 200, seed: int = 0, dim_k: int | None = None) -> PropositionReport:
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    dim_k = l if dim_k is None else dim_k
    system = weyl_mod.weyl_system(l)
    families = weyl_mod.all_order_l_subgroups(system)
    worst: PropositionReport | None = None
    for i in range(samples):
        rng = substream(seed, i)
        family = families[i % len(families)]
        lam = rng.dirichlet(np.ones(l))
        x = random_density_from(rng, l * dim_k, int(rng.integers(1, l * dim_k + 1)))
        rep = prop2_report(family, lam, x, dim_k)
        if worst is None or rep.margin < worst.margin:
            worst = PropositionReport(
                claim_id=rep.claim_id, lhs=rep.lhs, rhs=rep.rhs, margin=rep.margin,
                tolerance=rep.tolerance, passed=rep.passed,
                witness={**(rep.witness or {}), "worst_index": i, "samples": samples},
                seed=seed,
            )
    return worst


# ---------------------------------------------------------------------------
# prop3: depolarizing entropy bound with a witness projection


def depolarizing_entropy_constant(l: int, p: float) -> float:
    """-(1-(l-1)p/l) log(1-(l-1)p/l) - (l-1)(p/l) log(p/l), the weight entropy."""
    lam0 = 1.0 - (l - 1) * p / l
    return entropy_of_spectrum(np.array([lam0] + [p / l] * (l - 1)))


def _prop3_lhs(l: int, p: float, x: DensityMatrix, dim_k: int) -> float:
    phi = depolarizing(l, p)
    lifted = np.array([_lift(k, dim_k) for k in phi.ops])
    out = np.einsum("kij,jl,kml->im", lifted, x.matrix, lifted.conj())
    return vn_nats(out)


def prop3_report(
    l: int,
    p: float,
    x: DensityMatrix,
    dim_k: int,
    mode: str = "constructive",
    search_count: int = 200,
    seed: int | None = None,
) -> PropositionReport:
    """S((Phi (x) Id)(x)) >= h(p, l) + S(rho) with rho = l Tr_H((P (x) I) x).

    Constructive mode follows the proof and needs Tr_K(x) = I/l within 1e-8;
    search mode scans marginal eigenprojections plus random rank-one
    projections, keeping the best margin among candidates whose overlap
    Tr((P (x) I) x) is within 1e-8 of 1/l.
    """
    if x.dim != l * dim_k:
        raise UsageError(f"state dimension {x.dim} != {l} * {dim_k}")
    system = weyl_mod.weyl_system(l)
    marginal = partial_trace(x.matrix, l, dim_k, side="right")
    lhs = _prop3_lhs(l, p, x, dim_k)
    h_const = depolarizing_entropy_constant(l, p)

    if mode == "constructive":
        deviation = frobenius(marginal - np.eye(l) / l)
        if deviation > MARGINAL_TOL:
            raise UsageError(
                f"constructive mode needs Tr_K(x) = I/l within {MARGINAL_TOL:.0e} "
                f"(deviation {deviation:.3e}); use search mode"
            )
        _, vectors = hermitian_eig(marginal)
        w = dagger(vectors)  # W Tr_K(x) W* is diagonal, approximately I/l
        wx = _lift(w, dim_k) @ x.matrix @ dagger(_lift(w, dim_k))
        best_entropy = math.inf
        best = (0, 0)
        trace_dev = 0.0
        for k in range(l):
            family = weyl_mod.diagonal_subgroup(system, k)
            resolution = weyl_mod.fixed_point_resolution(family)
            for j, proj in enumerate(resolution.projections):
                block = partial_trace(_lift(proj, dim_k) @ wx, l, dim_k, side="left")
                tr = float(np.trace(block).real)
                entr = vn_nats(block / tr)
                if entr < best_entropy:
                    best_entropy = entr
                    best = (k, j)
                    trace_dev = abs(tr - 1.0 / l)
        rhs = h_const + best_entropy
        witness = {
            "mode": mode, "subgroup": best[0], "projection": best[1],
            "trace_deviation": trace_dev, "marginal_deviation": deviation,
            "h_constant": h_const, "state_entropy": best_entropy,
        }
    elif mode == "search":
        rng = substream(seed if seed is not None else 0, 999)
        _, m_vecs = hermitian_eig(marginal)
        candidates = [m_vecs[:, i] for i in range(l)]
        for _ in range(search_count):
            candidates.append(random_pure_from(rng, l).amplitudes)
        best_margin = -math.inf
        kept = 0
        best_entropy = math.nan
        for v in candidates:
            overlap = float(np.real(np.vdot(v, marginal @ v)))
            if abs(overlap - 1.0 / l) > MARGINAL_TOL:
                continue
            kept += 1
            proj = np.outer(v, v.conj())
            block = partial_trace(_lift(proj, dim_k) @ x.matrix, l, dim_k, side="left")
            entr = vn_nats(block / float(np.trace(block).real))
            margin = lhs - (h_const + entr)
            if margin > best_margin:
                best_margin = margin
                best_entropy = entr
        if kept == 0:
            return proposition_report(
                "prop3", lhs=lhs, rhs=math.inf, tolerance=INEQ_TOL,
                witness={"mode": mode, "candidates_kept": 0,
                         "note": "no projection matched the 1/l overlap requirement"},
                seed=seed,
            )
        rhs = lhs - best_margin
        witness = {"mode": mode, "candidates_kept": kept,
                   "h_constant": h_const, "state_entropy": best_entropy}
    else:
        raise UsageError(f"mode must be 'constructive' or 'search', got {mode!r}")

    return proposition_report("prop3", lhs=lhs, rhs=rhs, tolerance=INEQ_TOL,
                              witness=witness, seed=seed)


def random_mixed_marginal_state(rng: np.random.Generator, l: int, dim_k: int, max_terms: int = 3) -> DensityMatrix:
    """Random state on H (x) K whose H marginal is exactly maximally mixed.

    Mixture of locally rotated maximally entangled states; needs dim_k >= l.
    """
    if dim_k < l:
        raise UsageError(f"need dim_k >= {l} to build a maximally mixed marginal, got {dim_k}")
    omega = np.zeros((l * dim_k,), dtype=complex)
    for i in range(l):
        omega[i * dim_k + i] = 1.0 / math.sqrt(l)
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    x = np.zeros((l * dim_k, l * dim_k), dtype=complex)
    for w in weights:
        u = np.kron(random_unitary_from(rng, l), random_unitary_from(rng, dim_k))
        v = u @ omega
        x = x + w * np.outer(v, v.conj())
    return density_from_matrix(x)


def verify_prop3(
    l: int,
    p: float,
    samples: int = 200,
    seed: int = 0,
    dim_k: int | None = None,
    mode: str = "constructive",
    search_count: int = 200,
) -> PropositionReport:
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    dim_k = l if dim_k is None else dim_k
    worst: PropositionReport | None = None
    for i in range(samples):
        rng = substream(seed, i)
        x = random_mixed_marginal_state(rng, l, dim_k)
        rep = prop3_report(l, p, x, dim_k, mode=mode, search_count=search_count, seed=seed)
        if worst is None or rep.margin < worst.margin:
            worst = PropositionReport(
                claim_id=rep.claim_id, lhs=rep.lhs, rhs=rep.rhs, margin=rep.margin,
                tolerance=rep.tolerance, passed=rep.passed,
                witness={**(rep.witness or {}), "worst_index": i, "samples": samples, "p": p},
                seed=seed,
            )
    return worst


# ---------------------------------------------------------------------------
# prop4: averaging condition versus the exact CP certificate


def verify_prop4(l: int, samples: int = 1000, seed: int = 0) -> Prop4Report:
    """Test the averaging condition against Schur-matrix positivity.

    Samples q uniformly from [0,1]^(l-1), keeps the vectors satisfying
    q_j <= (1 + Sum_{j<=l-2} q_j)/(l-1) for 1 <= j <= l-2, and records the
    minimum Schur eigenvalue.  Counterexamples are reported with their
    certificate eigenvalue, not suppressed.  The constant-Q family
    Q in {0, 0.1, .., 1} is always run explicitly.
    """
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    if l < 2:
        raise UsageError(f"dimension l must be >= 2, got {l}")
    violations: list[Prop4Violation] = []
    min_margin = math.inf
    hits = 0
    for i in range(samples):
        rng = substream(seed, i)
        q = rng.uniform(size=l - 1)
        q_bar = (1.0 + float(q[: l - 2].sum())) / (l - 1)
        if not np.all(q[: l - 2] <= q_bar):
            continue
        hits += 1
        report = schur_matrix(PhaseDampingParams(l=l, q=tuple(q)))
        margin = report.min_eigenvalue
        min_margin = min(min_margin, margin)
        if margin < -1e-10:
            violations.append(Prop4Violation(q=tuple(float(v) for v in q), min_eigenvalue=margin))
    remark = []
    remark_ok = True
    for step in range(11):
        big_q = step / 10.0
        report = schur_matrix(PhaseDampingParams(l=l, q=(big_q,) * (l - 1)))
        remark.append((big_q, report.min_eigenvalue))
        remark_ok = remark_ok and report.min_eigenvalue >= -1e-10
    return Prop4Report(
        l=l,
        samples=samples,
        seed=seed,
        condition_hits=hits,
        min_margin=min_margin if hits else math.inf,
        violations=tuple(violations),
        remark_margins=tuple(remark),
        remark_passed=remark_ok,
        sampled_passed=not violations,
    )


# ---------------------------------------------------------------------------
# Additivity / multiplicativity via restarted optimization


def check_additivity(
    a: KrausChannel,
    b: KrausChannel,
    restarts: int = 40,
    seed: int = 0,
    tolerance: float = ADDITIVITY_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    grad_tol: float = DEFAULT_TOL,
) -> AdditivityReport:
    """Compare the joint output-entropy infimum with the sum of the parts.

    The first joint restart starts from the product of the single-channel
    minimizers, so the reported gap can only exceed -(optimizer tolerance).
    """
    res_a = min_output_entropy(a, restarts, max_iter, grad_tol, seed, seed_path=(1,))
    res_b = min_output_entropy(b, restarts, max_iter, grad_tol, seed, seed_path=(2,))
    joint = a.tensor(b).reduced()
    product = PureState(np.kron(res_a.argmin.amplitudes, res_b.argmin.amplitudes))
    res_joint = min_output_entropy(
        joint, restarts, max_iter, grad_tol, seed, initial_states=(product,), seed_path=(3,)
    )
    gap = res_joint.value - (res_a.value + res_b.value)
    schmidt = np.linalg.svd(
        res_joint.argmin.amplitudes.reshape(a.dim, b.dim), compute_uv=False
    )
    return AdditivityReport(
        s_min_a=res_a.value,
        s_min_b=res_b.value,
        s_min_joint=res_joint.value,
        gap=gap,
        schmidt_coefficients=tuple(float(s) for s in schmidt),
        restarts=restarts,
        seed=seed,
        tolerance=tolerance,
        passed=abs(gap) <= tolerance,
        converged_a=res_a.converged,
        converged_b=res_b.converged,
        converged_joint=res_joint.converged,
    )


def check_multiplicativity(
    a: KrausChannel,
    b: KrausChannel,
    p: float,
    restarts: int = 40,
    seed: int = 0,
    tolerance: float = MULTIPLICATIVITY_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    grad_tol: float = DEFAULT_TOL,
) -> MultiplicativityReport:
    """Compare ||a (x) b||_p with ||a||_p ||b||_p via the same restart optimizer."""
    res_a = max_output_purity(a, p, restarts, max_iter, grad_tol, seed, seed_path=(1,))
    res_b = max_output_purity(b, p, restarts, max_iter, grad_tol, seed, seed_path=(2,))
    joint = a.tensor(b).reduced()
    product = PureState(np.kron(res_a.argmin.amplitudes, res_b.argmin.amplitudes))
    res_joint = max_output_purity(
        joint, p, restarts, max_iter, grad_tol, seed, initial_states=(product,), seed_path=(3,)
    )
    norm_a = res_a.value ** (1.0 / p)
    norm_b = res_b.value ** (1.0 / p)
    norm_joint = res_joint.value ** (1.0 / p)
    deviation = norm_joint - norm_a * norm_b
    return MultiplicativityReport(
        p=p,
        norm_a=norm_a,
        norm_b=norm_b,
        norm_joint=norm_joint,
        deviation=deviation,
        restarts=restarts,
        seed=seed,
        tolerance=tolerance,
        passed=abs(deviation) <= tolerance,
    )


# ---------------------------------------------------------------------------
# Relative entropy monotonicity and bistochastic entropy increase


def monotonicity_suite(c: KrausChannel, pairs: int = 1000, seed: int = 0) -> SuiteReport:
    """min over pairs of S(rho1, rho2) - S(c(rho1), c(rho2)); infinite lhs passes."""
    if pairs < 1:
        raise UsageError(f"pairs must be >= 1, got {pairs}")
    min_margin = math.inf
    worst = 0
    infinite = 0
    for i in range(pairs):
        rng = substream(seed, i)
        rho1 = random_density_from(rng, c.dim, int(rng.integers(1, c.dim + 1)))
        rho2 = random_density_from(rng, c.dim, int(rng.integers(1, c.dim + 1)))
        before = relative_entropy_nats(rho1.matrix, rho2.matrix)
        if math.isinf(before):
            infinite += 1
            continue
        after = relative_entropy_nats(c.apply_matrix(rho1.matrix), c.apply_matrix(rho2.matrix))
        margin = before - after  # after is finite when before is, up to the kernel cutoff
        if margin < min_margin:
            min_margin, worst = margin, i
    return SuiteReport(
        claim_id="monotonicity", samples=pairs, seed=seed, min_margin=min_margin,
        tolerance=INEQ_TOL, passed=min_margin >= -INEQ_TOL, worst_index=worst,
        infinite_count=infinite,
    )


def entropy_increase_suite(c: KrausChannel, samples: int = 1000, seed: int = 0) -> SuiteReport:
    """min over states of S(c(rho)) - S(rho); nonnegative for bistochastic channels."""
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    min_margin = math.inf
    worst = 0
    for i in range(samples):
        rng = substream(seed, i)
        rho = random_density_from(rng, c.dim, int(rng.integers(1, c.dim + 1)))
        margin = vn_nats(c.apply_matrix(rho.matrix)) - vn_nats(rho.matrix)
        if margin < min_margin:
            min_margin, worst = margin, i
    return SuiteReport(
        claim_id="entropy_increase", samples=samples, seed=seed, min_margin=min_margin,
        tolerance=INEQ_TOL, passed=min_margin >= -INEQ_TOL, worst_index=worst,
    )


# ---------------------------------------------------------------------------
# The composed-channel additivity theorem


def verify_theorem(
    l: int,
    p: float,
    q,
    restarts: int = 20,
    seed: int = 0,
    eq13_samples: int = 20,
    max_iter: int = DEFAULT_MAX_ITER,
    grad_tol: float = DEFAULT_TOL,
) -> TheoremReport:
    """Verify additivity for damping-after-depolarizing compositions.

    Sub-checks: (i) the composition preserves the output entropy of every
    basis projection; (ii) its output-entropy infimum equals the depolarizing
    one; (iii) the composed tensor power never lowers entropy below the
    depolarizing tensor power (n = 1, 2); (iv) the additivity gap of the
    composition with itself vanishes within optimizer tolerance.
    """
    phi = depolarizing(l, p)
    psi = phase_damping(l, q)
    xi = psi.compose(phi).reduced()

    worst_diff = -1.0
    worst_j = 0
    for j in range(l):
        proj = pure_to_density(basis_state(l, j))
        diff = abs(vn_nats(xi.apply_matrix(proj.matrix)) - vn_nats(phi.apply_matrix(proj.matrix)))
        if diff > worst_diff:
            worst_diff, worst_j = diff, j
    basis_rep = proposition_report(
        "theorem.basis_projection", lhs=0.0, rhs=worst_diff, tolerance=BASIS_PROJ_TOL,
        witness={"worst_projection": worst_j}, seed=seed,
    )

    res_xi = min_output_entropy(xi, restarts, max_iter, grad_tol, seed, seed_path=(10,))
    res_phi = min_output_entropy(phi, restarts, max_iter, grad_tol, seed, seed_path=(11,))
    smin_rep = proposition_report(
        "theorem.s_min_equality", lhs=0.0, rhs=abs(res_xi.value - res_phi.value),
        tolerance=SMIN_EQ_TOL,
        witness={"s_min_composed": res_xi.value, "s_min_depolarizing": res_phi.value,
                 "closed_form": depolarizing_entropy_constant(l, p)},
        seed=seed,
    )

    eq13_reports = []
    for n in (1, 2):
        xin = xi.tensor_power(n)
        phin = phi.tensor_power(n)
        min_margin = math.inf
        worst_lhs = worst_rhs = 0.0
        worst_i = 0
        for i in range(eq13_samples):
            rng = substream(seed, 100 + n, i)
            x = random_density_from(rng, l ** n, int(rng.integers(1, l ** n + 1)))
            lhs = vn_nats(xin.apply_matrix(x.matrix))
            rhs = vn_nats(phin.apply_matrix(x.matrix))
            if lhs - rhs < min_margin:
                min_margin = lhs - rhs
                worst_lhs, worst_rhs, worst_i = lhs, rhs, i
        eq13_reports.append(
            proposition_report(
                f"theorem.eq13_n{n}", lhs=worst_lhs, rhs=worst_rhs, tolerance=INEQ_TOL,
                witness={"samples": eq13_samples, "worst_index": worst_i}, seed=seed,
            )
        )

    additivity = check_additivity(
        xi, xi, restarts=restarts, seed=seed, tolerance=ADDITIVITY_TOL,
        max_iter=max_iter, grad_tol=grad_tol,
    )

    passed = (
        basis_rep.passed
        and smin_rep.passed
        and all(r.passed for r in eq13_reports)
        and additivity.passed
    )
    return TheoremReport(
        basis_projection=basis_rep,
        s_min_equality=smin_rep,
        eq13=tuple(eq13_reports),
        additivity=additivity,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# Gradient correctness against finite differences


def gradient_suite(samples: int = 100, seed: int = 0, dims: tuple[int, ...] = (2, 3, 4)) -> SuiteReport:
    """Max relative disagreement between analytic and finite-difference gradients.

    States whose gradient is numerically null (flat directions) are redrawn,
    since a finite-difference quotient of a constant carries no signal.
    """
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    max_err = -math.inf
    worst = 0
    for i in range(samples):
        rng = substream(seed, i)
        dim = dims[i % len(dims)]
        c = random_channel_from(rng, dim, int(rng.integers(2, 5)))
        psi = random_pure_from(rng, dim)
        for _ in range(10):
            if float(np.linalg.norm(entropy_gradient(c, psi))) > 1e-7:
                break
            psi = random_pure_from(rng, dim)
        err = gradient_fd_error(c, psi)
        if err > max_err:
            max_err, worst = err, i
    return SuiteReport(
        claim_id="gradient_fd", samples=samples, seed=seed, min_margin=-max_err,
        tolerance=GRADIENT_TOL, passed=max_err <= GRADIENT_TOL, worst_index=worst,
    )
