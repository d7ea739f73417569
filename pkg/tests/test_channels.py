import math

import numpy as np
import pytest

from qchan import weyl
from qchan.channels import (
    PhaseDampingParams,
    choi_distance,
    conditional_expectation,
    depolarizing,
    eq9_decomposition,
    eq12_representation,
    identity_channel,
    kraus_channel,
    mixture_of_unitaries,
    pauli_qubit,
    phase_damping,
    qubit_factorize,
    random_channel,
    schur_matrix,
    structural_checks,
)
from qchan.entropy import vn_nats
from qchan.errors import (
    CapacityError,
    NotCompletelyPositiveError,
    UsageError,
    ValidationError,
)
from qchan.states import (
    basis_state,
    maximally_mixed,
    pure_to_density,
    random_density,
    random_pure,
    random_unitary,
)

rng = np.random.default_rng(42)


def matrix_units(l):
    for a in range(l):
        for b in range(l):
            unit = np.zeros((l, l), dtype=complex)
            unit[a, b] = 1.0
            yield unit


# ---------------------------------------------------------------------- apply


def test_apply_identity():
    rho = random_density(3, 2, seed=1)
    out = identity_channel(3).apply(rho)
    assert np.abs(out.matrix - rho.matrix).max() < 1e-14


def test_apply_full_depolarization():
    rho = random_density(2, 2, seed=2)
    out = depolarizing(2, 1.0).apply(rho)
    assert np.abs(out.matrix - np.eye(2) / 2).max() < 1e-12


def test_apply_depolarizing_closed_form():
    out = depolarizing(2, 0.5).apply(pure_to_density(basis_state(2, 0)))
    assert np.abs(out.matrix - np.diag([0.75, 0.25])).max() < 1e-12


def test_apply_dimension_mismatch():
    with pytest.raises(UsageError):
        depolarizing(2, 0.5).apply(random_density(3, 1, seed=0))


# -------------------------------------------------------------------- compose


def test_compose_with_identity():
    phi = depolarizing(2, 0.5)
    assert choi_distance(identity_channel(2).compose(phi), phi) < 1e-12


def test_compose_depolarizing_parameter_oracle():
    p1, p2 = 0.3, 0.6
    composed = depolarizing(2, p1).compose(depolarizing(2, p2))
    merged = depolarizing(2, 1.0 - (1.0 - p1) * (1.0 - p2))
    assert choi_distance(composed, merged) < 1e-12


def test_compose_matches_sequential_application():
    a = random_channel(3, 2, seed=3)
    b = random_channel(3, 3, seed=4)
    composed = a.compose(b)
    for unit in matrix_units(3):
        direct = a.apply_matrix(b.apply_matrix(unit))
        assert np.abs(composed.apply_matrix(unit) - direct).max() < 1e-12


def test_composed_damping_depolarizing_fixes_projection_outputs():
    # the damping map leaves each depolarized basis projection untouched
    phi = depolarizing(3, 0.3)
    psi = phase_damping(3, (0.5, 0.5))
    xi = psi.compose(phi)
    for j in range(3):
        proj = pure_to_density(basis_state(3, j)).matrix
        assert np.abs(xi.apply_matrix(proj) - phi.apply_matrix(proj)).max() < 1e-12


# --------------------------------------------------------------------- tensor


def test_tensor_identity_channels():
    assert choi_distance(identity_channel(2).tensor(identity_channel(2)),
                         identity_channel(4)) < 1e-12


def test_tensor_acts_factorwise():
    a = depolarizing(2, 0.5)
    b = random_channel(2, 2, seed=6)
    joint = a.tensor(b)
    rho = random_density(2, 2, seed=7)
    sigma = random_density(2, 1, seed=8)
    lhs = joint.apply_matrix(np.kron(rho.matrix, sigma.matrix))
    rhs = np.kron(a.apply_matrix(rho.matrix), b.apply_matrix(sigma.matrix))
    assert np.abs(lhs - rhs).max() < 1e-12


def test_tensor_of_depolarizing_is_unital():
    checks = structural_checks(depolarizing(2, 0.5).tensor(depolarizing(2, 0.5)))
    assert checks.unital and checks.trace_preserving


def test_tensor_capacity_error():
    with pytest.raises(CapacityError):
        identity_channel(3).tensor(identity_channel(3), dim_cap=8)


def test_compose_tensor_exchange():
    a, b = random_channel(2, 2, seed=10), random_channel(2, 3, seed=11)
    c, d = random_channel(2, 2, seed=12), random_channel(2, 2, seed=13)
    lhs = (a.compose(b)).tensor(c.compose(d))
    rhs = (a.tensor(c)).compose(b.tensor(d))
    assert choi_distance(lhs, rhs) < 1e-11


# ----------------------------------------------------------------------- choi


def test_choi_identity():
    c = identity_channel(2)
    omega = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            omega[i * 2 + i, j * 2 + j] = 1.0
    assert np.abs(c.choi - omega).max() < 1e-14
    values = np.linalg.eigvalsh(c.choi)
    assert abs(values[-1] - 2.0) < 1e-12 and abs(values[:-1]).max() < 1e-12


def test_choi_trace_equals_dim():
    for c in (depolarizing(3, 0.4), phase_damping(3, (0.3, 0.9))):
        assert abs(np.trace(c.choi).real - 3.0) < 1e-10


def test_choi_cp_boundary():
    c = depolarizing(2, 4.0 / 3.0)
    assert abs(np.linalg.eigvalsh(c.choi).min()) < 1e-10


def test_choi_random_mixture_psd():
    us = [random_unitary(3, seed=s) for s in range(4)]
    c = mixture_of_unitaries([0.4, 0.3, 0.2, 0.1], us)
    assert np.linalg.eigvalsh(c.choi).min() > -1e-12


# ---------------------------------------------------------------- structural


def test_structural_checks_constructors_pass():
    for c in (depolarizing(2, 0.5), depolarizing(3, 1.0), phase_damping(2, (0.4,)),
              phase_damping(4, (0.6, 0.3, 0.9)), pauli_qubit(0.5, 0.3, 0.2)):
        checks = structural_checks(c)
        assert checks.trace_preserving and checks.unital and checks.completely_positive


def test_structural_checks_flags_broken_kraus():
    bad = np.array([[[1.0, 0.0], [0.0, 0.5]]], dtype=complex)
    checks = structural_checks(bad)
    assert not checks.trace_preserving
    with pytest.raises(ValidationError, match="[Tt]race preservation"):
        kraus_channel(bad)


# --------------------------------------------------------------- depolarizing


def test_depolarizing_parameter_range():
    depolarizing(2, 1e-15)
    depolarizing(2, 0.0)
    with pytest.raises(UsageError):
        depolarizing(2, -1e-15)
    with pytest.raises(UsageError):
        depolarizing(2, 4.0 / 3.0 + 1e-9)
    with pytest.raises(UsageError):
        depolarizing(1, 0.5)


def test_depolarizing_near_identity():
    assert choi_distance(depolarizing(2, 1e-12), identity_channel(2)) <= 1e-11


def test_depolarizing_fixes_maximally_mixed():
    out = depolarizing(2, 0.5).apply(maximally_mixed(2))
    assert np.abs(out.matrix - np.eye(2) / 2).max() < 1e-13


def test_depolarizing_output_spectrum():
    out = depolarizing(3, 0.3).apply(pure_to_density(random_pure(3, seed=14)))
    values = np.sort(np.linalg.eigvalsh(out.matrix))
    assert np.allclose(values, [0.1, 0.1, 0.8], atol=1e-12)


def test_depolarizing_action_matches_affine_form():
    l, p = 3, 0.7
    c = depolarizing(l, p)
    for unit in matrix_units(l):
        want = (1 - p) * unit + (p / l) * np.trace(unit) * np.eye(l)
        assert np.abs(c.apply_matrix(unit) - want).max() < 1e-12


def test_depolarizing_covariance():
    c = depolarizing(3, 0.6)
    x = random_density(3, 2, seed=15).matrix
    for s in range(50):
        u = random_unitary(3, seed=100 + s)
        lhs = u @ c.apply_matrix(x) @ u.conj().T
        rhs = c.apply_matrix(u @ x @ u.conj().T)
        assert np.linalg.norm(lhs - rhs) <= 1e-11


# -------------------------------------------------------------- phase damping


def test_phase_damping_all_ones_is_identity():
    assert choi_distance(phase_damping(3, (1.0, 1.0)), identity_channel(3)) <= 1e-12


def test_phase_damping_all_zero_dephases():
    c = phase_damping(3, (0.0, 0.0))
    x = random_density(3, 3, seed=16).matrix
    out = c.apply_matrix(x)
    off = out - np.diag(np.diag(out))
    assert np.abs(off).max() < 1e-12
    assert np.abs(np.diag(out) - np.diag(x)).max() < 1e-12


def test_phase_damping_corner_rule():
    c = phase_damping(3, (0.5, 0.9))
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    out = c.apply_matrix(x)
    assert abs(out[0, 2] - 0.5 * x[0, 2]) < 1e-12  # corner uses q_1, not q_2
    assert abs(out[0, 1] - 0.5 * x[0, 1]) < 1e-12
    assert abs(out[2, 0] - 0.5 * x[2, 0]) < 1e-12


def test_phase_damping_fixes_basis_projections():
    c = phase_damping(4, (0.3, 0.2, 0.8))
    for j in range(4):
        proj = pure_to_density(basis_state(4, j)).matrix
        assert np.abs(c.apply_matrix(proj) - proj).max() <= 1e-12


def test_phase_damping_rejects_non_psd():
    with pytest.raises(NotCompletelyPositiveError) as err:
        phase_damping(4, (1.0, 0.0, 0.0))
    assert err.value.eigenvalue < -1e-10


def test_phase_damping_param_range():
    with pytest.raises(UsageError):
        phase_damping(3, (0.5, 1.2))
    with pytest.raises(UsageError):
        phase_damping(3, (-0.1, 0.5))
    with pytest.raises(UsageError):
        phase_damping(3, (0.5,))


# --------------------------------------------------------------- schur matrix


def test_schur_matrix_qubit():
    report = schur_matrix(PhaseDampingParams(l=2, q=(0.5,)))
    assert np.allclose(report.matrix, [[1.0, 0.5], [0.5, 1.0]])
    assert abs(report.min_eigenvalue - 0.5) < 1e-12


def test_schur_matrix_constant_q():
    for big_q in np.linspace(0.0, 1.0, 6):
        report = schur_matrix(PhaseDampingParams(l=4, q=(big_q,) * 3))
        want = (1 - big_q) * np.eye(4) + big_q * np.ones((4, 4))
        assert np.abs(report.matrix - want).max() < 1e-14
        assert abs(report.min_eigenvalue - (1 - big_q)) < 1e-12


def test_schur_matrix_sign_determines_cp():
    report = schur_matrix(PhaseDampingParams(l=4, q=(1.0, 0.0, 0.0)))
    # circulant with first row (1, 1, 0, 1): eigenvalues 3, 1, -1, 1
    assert abs(report.min_eigenvalue + 1.0) < 1e-12


# ---------------------------------------------------------------- pauli qubit


def test_pauli_identity():
    assert choi_distance(pauli_qubit(1.0, 1.0, 1.0), identity_channel(2)) < 1e-12


def test_pauli_matches_depolarizing():
    p = 0.4
    lam = 1.0 - p
    assert choi_distance(pauli_qubit(lam, lam, lam), depolarizing(2, p)) <= 1e-12


def test_pauli_complete_dephasing():
    assert choi_distance(pauli_qubit(0.0, 0.0, 1.0), phase_damping(2, (0.0,))) < 1e-12


def test_pauli_action_matches_displayed_matrix():
    l1, l2, l3 = 0.5, 0.3, 0.7
    c = pauli_qubit(l1, l2, l3)
    for _ in range(10):
        a, b, cc, d = rng.standard_normal(4)
        x = np.array([[a, b + 1j * cc], [b - 1j * cc, d]])
        want = np.array([
            [(1 + l3) / 2 * a + (1 - l3) / 2 * d, l1 * b + 1j * l2 * cc],
            [l1 * b - 1j * l2 * cc, (1 - l3) / 2 * a + (1 + l3) / 2 * d],
        ])
        assert np.abs(c.apply_matrix(x) - want).max() < 1e-12


def test_pauli_rejects_non_cp():
    with pytest.raises(NotCompletelyPositiveError):
        pauli_qubit(1.0, 1.0, -1.0)


# ------------------------------------------------------------- factorization


def test_qubit_factorize_identity_case():
    damping, depo = qubit_factorize(1.0, 1.0)
    composed = phase_damping(2, damping).compose(depolarizing(depo.l, depo.p))
    assert choi_distance(composed, identity_channel(2)) < 1e-12


def test_qubit_factorize_oracle():
    damping, depo = qubit_factorize(0.3, 0.6)
    assert damping.q[0] == pytest.approx(0.5)
    assert depo.p == pytest.approx(0.4)
    composed = phase_damping(2, damping).compose(depolarizing(depo.l, depo.p))
    assert choi_distance(composed, pauli_qubit(0.3, 0.3, 0.6)) <= 1e-12


def test_qubit_factorize_negative_lambda1_rejected():
    # q_1 = -1 falls outside the damping coefficient range [0, 1]
    with pytest.raises(UsageError):
        qubit_factorize(-0.6, 0.6)


def test_qubit_factorize_preconditions():
    with pytest.raises(UsageError):
        qubit_factorize(0.8, 0.6)
    with pytest.raises(UsageError):
        qubit_factorize(0.0, 0.0)
    with pytest.raises(UsageError):
        qubit_factorize(0.5, 1.1)


# ------------------------------------------------------ mixtures of unitaries


def test_single_unitary_mixture_preserves_entropy():
    u = random_unitary(3, seed=21)
    c = mixture_of_unitaries([1.0], [u])
    rho = random_density(3, 2, seed=22)
    assert abs(vn_nats(c.apply_matrix(rho.matrix)) - vn_nats(rho.matrix)) < 1e-11


def test_uniform_weyl_mixture_fully_depolarizes():
    system = weyl.weyl_system(3)
    us = [system.unitary(g) for g in system.elements]
    c = mixture_of_unitaries([1.0 / 9.0] * 9, us)
    rho = random_density(3, 3, seed=23)
    assert np.abs(c.apply_matrix(rho.matrix) - np.eye(3) / 3).max() < 1e-12


def test_depolarizing_equals_weyl_mixture():
    l, p = 3, 0.8
    system = weyl.weyl_system(l)
    weights, us = [], []
    for g in system.elements:
        us.append(system.unitary(g))
        weights.append(1 - (l * l - 1) * p / (l * l) if g == (0, 0) else p / (l * l))
    c = mixture_of_unitaries(weights, us)
    assert choi_distance(c, depolarizing(l, p)) < 1e-12


def test_mixture_rejects_non_unitary():
    with pytest.raises(ValidationError):
        mixture_of_unitaries([1.0], [np.array([[1.0, 0.0], [0.0, 0.5]])])


def test_mixture_weight_validation():
    u = np.eye(2)
    with pytest.raises(ValidationError):
        mixture_of_unitaries([0.5, 0.6], [u, u])
    with pytest.raises(ValidationError):
        mixture_of_unitaries([1.5, -0.5], [u, u])


def test_mixture_is_unital():
    us = [random_unitary(2, seed=s) for s in range(3)]
    checks = structural_checks(mixture_of_unitaries([0.2, 0.3, 0.5], us))
    assert checks.unital


# ------------------------------------------------------ conditional expectation


def test_conditional_expectation_phases_extracts_diagonal():
    system = weyl.weyl_system(3)
    e = conditional_expectation(weyl.phase_subgroup(system))
    x = random_density(3, 3, seed=24).matrix
    assert np.abs(e.apply_matrix(x) - np.diag(np.diag(x))).max() < 1e-12


def test_conditional_expectation_shifts_circulant():
    system = weyl.weyl_system(2)
    e = conditional_expectation(weyl.diagonal_subgroup(system, 0))
    out = e.apply_matrix(np.diag([1.0, 0.0]).astype(complex))
    assert np.abs(out - np.eye(2) / 2).max() < 1e-13


def test_conditional_expectation_idempotent():
    system = weyl.weyl_system(3)
    for family in weyl.all_order_l_subgroups(system):
        e = conditional_expectation(family)
        assert choi_distance(e, e.compose(e)) <= 1e-11
        checks = structural_checks(e)
        assert checks.unital and checks.trace_preserving


# ------------------------------------------------------------------ eq9 / eq12


@pytest.mark.parametrize("l,p", [(2, 0.5), (3, 1.0), (5, 0.4), (2, 4.0 / 3.0)])
def test_eq9_reconstruction(l, p):
    dec = eq9_decomposition(l, p)
    assert dec.choi_distance_to_depolarizing <= 1e-10
    assert abs(dec.c0 + (l - 1) * dec.c1 - 1.0 / l) <= 1e-12
    assert len(dec.subgroup_channels) == l


def test_eq9_composite_rejected():
    with pytest.raises(UsageError, match="prime"):
        eq9_decomposition(4, 0.5)


def test_eq12_qubit_residual():
    # diagonal units pick up coefficient (2 - q1) instead of 1
    q1 = 0.5
    report = eq12_representation(PhaseDampingParams(l=2, q=(q1,)))
    assert report.q_bar == pytest.approx(1.0)
    assert report.entry_residuals[0, 0] == pytest.approx(1.0 - q1)
    assert report.entry_residuals[0, 1] == pytest.approx(0.0, abs=1e-14)
    assert report.reconstruction_residual == pytest.approx(math.sqrt(2 * (1 - q1) ** 2))


def test_eq12_identity_case():
    report = eq12_representation(PhaseDampingParams(l=3, q=(1.0, 0.3)))
    assert report.reconstruction_residual <= 1e-12


def test_eq12_nonzero_for_general_coefficients():
    report = eq12_representation(PhaseDampingParams(l=5, q=(0.5, 0.5, 0.5, 0.5)))
    assert report.reconstruction_residual > 1e-3
    assert report.entry_residuals.shape == (5, 5)


# ------------------------------------------------------------------ invariants


def test_constructor_invariants_sweep():
    candidates = [
        depolarizing(2, 0.5), depolarizing(3, 4.0 * 9 / 8 / 4), depolarizing(5, 1.0),
        phase_damping(2, (0.0,)), phase_damping(5, (0.5, 0.5, 0.5, 0.5)),
        pauli_qubit(0.2, -0.2, 0.6), identity_channel(4),
        random_channel(3, 4, seed=30),
    ]
    for c in candidates:
        checks = structural_checks(c)
        assert checks.tp_residual <= 1e-10 * c.dim
        assert checks.choi_min_eigenvalue >= -1e-10


def test_channel_immutable():
    c = depolarizing(2, 0.5)
    with pytest.raises(ValueError):
        c.ops[0][0, 0] = 5.0
    with pytest.raises(ValueError):
        c.choi[0, 0] = 5.0


def test_conditional_expectation_shift_average_is_circulant():
    system = weyl.weyl_system(3)
    e = conditional_expectation(weyl.diagonal_subgroup(system, 0))
    x = random_density(3, 3, seed=25).matrix
    out = e.apply_matrix(x)
    for d in range(3):
        diag = [out[j, (j + d) % 3] for j in range(3)]
        assert max(abs(v - diag[0]) for v in diag) < 1e-12


def test_reduced_is_equivalent_and_small():
    xi = phase_damping(3, (0.5, 0.5)).compose(depolarizing(3, 0.3))
    assert xi.ops.shape[0] > 9
    small = xi.reduced()
    assert small.ops.shape[0] <= 9
    assert choi_distance(small, xi) < 1e-12
    for unit in matrix_units(3):
        assert np.abs(small.apply_matrix(unit) - xi.apply_matrix(unit)).max() < 1e-12


def test_reduced_noop_when_already_small():
    c = depolarizing(2, 0.5)
    assert c.reduced() is c
