"""One-shot verification suite for every identity the package rests on.

Each check reports its worst residual against a pinned tolerance; the
text and JSON renderings are deterministic functions of the results, so
a fixed seed yields byte-identical reports across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from cosmopair import fock
from cosmopair.bogoliubov import (
    DOWN,
    UP,
    BogolyubovCoefficients,
    DensityParameters,
    Scenario,
    cross_term_identity,
    determinant_combination,
    expected_pair_mixing,
    from_density,
    mu_nu_from_theta,
    random_coefficients,
    squeezing_angle,
    theta_from_coefficients,
    validate,
)
from cosmopair.entanglement import (
    entropy_excited_closed_form,
    entropy_numeric,
    entropy_vacuum_closed_form,
    spin_spinless_relation,
)
from cosmopair.expansions import cataloged_occupations, closed_form_expansion
from cosmopair.squeezing import (
    apply_decoupled,
    build_generator,
    conjugate_mode,
    in_state_expansion,
    pair_creation_sum,
    unitary_dense,
    unitary_for,
)

__all__ = ["CheckResult", "DEFAULT_SEED", "render_json", "render_text", "run_all"]

DEFAULT_SEED = 7
SCHEMA_VERSION = 1

_N_GRID = [0.25 * k for k in range(17)]           # 0 .. 4
_LAMBDA_GRID = [0.1 * k for k in range(11)]       # 0 .. 1
_ENTROPY_GRID = [0.1 * k for k in range(41)]      # 0 .. 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


def _result(name: str, residual: float, tolerance: float, detail: str = "",
            passed: bool | None = None) -> CheckResult:
    ok = residual <= tolerance if passed is None else passed
    return CheckResult(name=name, residual=float(residual), tolerance=float(tolerance),
                       passed=bool(ok), detail=detail)


def _grid_sets(scenario: Scenario) -> list[BogolyubovCoefficients]:
    sets = []
    phases = (0.3, -0.8, 1.7, 0.4)
    for n_raw in _N_GRID:
        n = n_raw * scenario.n_max / 4.0
        if scenario is Scenario.CHARGE_ONLY:
            for lam in _LAMBDA_GRID:
                sets.append(from_density(DensityParameters(n=n, lam=lam, phases=phases),
                                         scenario))
        else:
            sets.append(from_density(DensityParameters(n=n, phases=phases), scenario))
    return sets


def _check_anticommutators(n_modes: int) -> CheckResult:
    lowering, raising = fock.ladder_operators(n_modes)
    eye = np.eye(fock.dimension(n_modes))
    worst = 0.0
    for i in range(n_modes):
        for j in range(n_modes):
            mixed = lowering[i] @ raising[j] + raising[j] @ lowering[i]
            target = eye if i == j else 0.0
            worst = max(worst, float(np.max(np.abs(mixed - target))))
            same = lowering[i] @ lowering[j] + lowering[j] @ lowering[i]
            worst = max(worst, float(np.max(np.abs(same))))
    return _result(f"ladder_anticommutators_{n_modes}_modes", worst, 1e-14)


def _check_constraints() -> list[CheckResult]:
    results = []
    worst_norm = 0.0
    for scenario in Scenario:
        for coeffs in _grid_sets(scenario):
            worst_norm = max(worst_norm, validate(coeffs).worst)
    results.append(_result("coefficient_constraints_grid", worst_norm, 1e-12,
                           detail="normalization, orthogonality and sparsity over the "
                                  "(n, lambda) grid, all scenarios"))
    worst_cross = 0.0
    worst_det = 0.0
    skipped = 0
    for coeffs in _grid_sets(Scenario.CHARGE_ONLY):
        first, second = cross_term_identity(coeffs)
        worst_cross = max(worst_cross, abs(first), abs(second))
        b = coeffs.beta
        if abs(b[UP, UP]) == 0.0 or abs(b[DOWN, UP]) == 0.0:
            skipped += 1
        combo = determinant_combination(coeffs)
        target = abs(b[UP, DOWN]) ** 2 + abs(b[UP, UP]) ** 2
        worst_det = max(worst_det, abs(abs(combo) - target))
    results.append(_result("reduced_coherence_cross_terms", worst_cross, 1e-12))
    results.append(_result(
        "determinant_combination_modulus", worst_det, 1e-12,
        detail=f"phase left free; {skipped} grid points with a vanishing channel "
               "hold trivially"))
    return results


def _check_generator_structure() -> list[CheckResult]:
    worst_radius = 0.0
    worst_pattern = 0.0
    worst_mixing = 0.0
    worst_algebra = 0.0
    for scenario in Scenario:
        eye = np.eye(scenario.n_modes)
        for coeffs in _grid_sets(scenario):
            theta = theta_from_coefficients(coeffs)
            radius = squeezing_angle(theta)
            worst_radius = max(worst_radius, abs(radius - math.acos(min(coeffs.a, 1.0))))
            if scenario is not Scenario.SPINLESS:
                pattern = float(np.max(np.abs(theta[np.ix_([0, 1], [0, 1])]))
                                + np.max(np.abs(theta[np.ix_([2, 3], [2, 3])])))
                if scenario is Scenario.CHARGE_AND_ANGULAR_MOMENTUM:
                    pattern += abs(theta[0, 2]) + abs(theta[1, 3])
                worst_pattern = max(worst_pattern, pattern)
            mu, nu = mu_nu_from_theta(theta)
            mu_ref, nu_ref = expected_pair_mixing(coeffs)
            worst_mixing = max(worst_mixing,
                               float(np.max(np.abs(mu - mu_ref))),
                               float(np.max(np.abs(nu - nu_ref))))
            worst_algebra = max(
                worst_algebra,
                float(np.max(np.abs(mu @ mu.conj().T + nu @ nu.conj().T - eye))),
                float(np.max(np.abs(mu @ nu.T + nu @ mu.T))))
    return [
        _result("generator_scalar_modulus", worst_radius, 1e-12,
                detail="|theta| = arccos(a) * identity on the grid"),
        _result("generator_block_sparsity", worst_pattern, 1e-14),
        _result("mixing_matrix_reconstruction", worst_mixing, 1e-12),
        _result("mixing_matrix_algebra", worst_algebra, 1e-12),
    ]


def _check_factorization(seed: int, batch: int) -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(seed)
    worst_unitarity = 0.0
    worst_conjugation = 0.0
    for scenario in Scenario:
        dim = fock.dimension(scenario.n_modes)
        eye = np.eye(dim)
        worst = 0.0
        for _ in range(batch):
            coeffs = random_coefficients(scenario, rng)
            theta = theta_from_coefficients(coeffs)
            unitary = unitary_dense(build_generator(theta))
            worst_unitarity = max(worst_unitarity, float(np.max(np.abs(
                unitary @ unitary.conj().T - eye))))
            for occupation in range(dim):
                direct = apply_decoupled(theta, fock.basis_state(occupation,
                                                                 scenario.n_modes))
                worst = max(worst, float(np.max(np.abs(direct - unitary[:, occupation]))))
            mu_ref, nu_ref = expected_pair_mixing(coeffs)
            for mode in range(scenario.n_modes):
                mu_row, nu_row = conjugate_mode(unitary, mode)
                worst_conjugation = max(
                    worst_conjugation,
                    float(np.max(np.abs(mu_row - mu_ref[mode]))),
                    float(np.max(np.abs(nu_row - nu_ref[mode]))))
        results.append(_result(f"factorized_vs_dense_{scenario.value}", worst, 1e-10,
                               detail=f"{batch} seeded draws x {dim} basis inputs"))
    results.append(_result("unitarity_random_batch", worst_unitarity, 1e-12))
    results.append(_result("ladder_conjugation_recovery", worst_conjugation, 1e-10))
    return results


def _check_nilpotency(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for scenario in Scenario:
        coeffs = random_coefficients(scenario, rng)
        theta = theta_from_coefficients(coeffs)
        creation = pair_creation_sum(theta)
        cubed = creation @ creation @ creation
        worst = max(worst, float(np.max(np.abs(cubed))))
        if scenario is not Scenario.SPINLESS:
            squared = creation @ creation
            fully_occupied = fock.dimension(4) - 1
            target = 2.0 * (theta[0, 3] * theta[1, 2] - theta[0, 2] * theta[1, 3])
            worst = max(worst, abs(squared[fully_occupied, 0] - target))
    return _result("pair_sum_nilpotency", worst, 1e-14,
                   detail="cube vanishes exactly; square's top coefficient matches")


def _check_expansions(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 2)
    results = []
    for scenario in Scenario:
        worst_vac = 0.0
        worst_exc = 0.0
        for _ in range(25):
            coeffs = random_coefficients(scenario, rng)
            for occupation in cataloged_occupations(scenario):
                expansion = in_state_expansion(coeffs, occupation)
                reference = closed_form_expansion(coeffs, occupation)
                vec = np.zeros_like(expansion.amplitudes)
                for bits, amp in reference.items():
                    vec[bits] = amp
                err = float(np.max(np.abs(expansion.amplitudes - vec)))
                if occupation == 0:
                    worst_vac = max(worst_vac, err)
                else:
                    worst_exc = max(worst_exc, err)
        results.append(_result(
            f"vacuum_expansion_{scenario.value}", worst_vac, 1e-10,
            detail="single-pair amplitudes carry -a conj(beta); the opposite sign "
                   "variant is the momentum-reflected convention"))
        results.append(_result(f"excited_expansions_{scenario.value}", worst_exc, 1e-10))
    return results


def _check_entropy_curves() -> list[CheckResult]:
    results = []
    for scenario in Scenario:
        worst = 0.0
        for n_raw in _ENTROPY_GRID:
            n = n_raw * scenario.n_max / 4.0
            coeffs = from_density(DensityParameters(n=n, lam=0.5), scenario)
            numeric = entropy_numeric(coeffs, occupation=0)
            closed = entropy_vacuum_closed_form(n, scenario)
            worst = max(worst, abs(numeric - closed))
        results.append(_result(f"vacuum_entropy_curve_{scenario.value}", worst, 1e-10,
                               detail="41-point density grid"))
    worst_lam = 0.0
    for n in (0.5, 1.0, 2.0, 3.0, 3.5):
        values = [entropy_numeric(from_density(DensityParameters(n=n, lam=lam),
                                               Scenario.CHARGE_ONLY), 0)
                  for lam in (0.0, 0.25, 0.5, 0.75, 1.0)]
        worst_lam = max(worst_lam, max(values) - min(values))
    results.append(_result("vacuum_entropy_lambda_independence", worst_lam, 1e-10))
    worst_rel = max(spin_spinless_relation(n)[2] for n in _ENTROPY_GRID)
    results.append(_result("spinful_spinless_scaling", worst_rel, 1e-12))
    return results


def _check_excited_catalogue() -> list[CheckResult]:
    results = []
    for scenario in Scenario:
        worst = 0.0
        lambdas = (0.1, 0.5, 0.9) if scenario is Scenario.CHARGE_ONLY else (1.0,)
        densities = [0.0, 0.5, 1.0, 2.0, 3.0, scenario.n_max]
        densities = [d for d in densities if d <= scenario.n_max]
        for occupation in range(fock.dimension(scenario.n_modes)):
            for n in densities:
                for lam in lambdas:
                    coeffs = from_density(DensityParameters(n=n, lam=lam), scenario)
                    numeric = entropy_numeric(coeffs, occupation)
                    closed = entropy_excited_closed_form(occupation, n, lam, scenario)
                    worst = max(worst, abs(numeric - closed))
        results.append(_result(f"excited_entropy_catalogue_{scenario.value}", worst, 1e-10,
                               detail="every occupation, numeric route authoritative"))
    return results


def _check_conservation() -> list[CheckResult]:
    results = []
    worst_charge = 0.0
    for scenario in Scenario:
        charge = fock.charge_operator(scenario.n_modes)
        for n in (0.5, 1.5, 2.5):
            n_scaled = n * scenario.n_max / 4.0
            coeffs = from_density(DensityParameters(n=n_scaled, lam=0.4,
                                                    phases=(0.2, 1.0, -0.5, 0.0)), scenario)
            unitary = unitary_for(coeffs)
            worst_charge = max(worst_charge, float(np.max(np.abs(
                unitary @ charge - charge @ unitary))))
    results.append(_result("charge_commutation", worst_charge, 1e-12,
                           detail="all scenarios"))
    jz = fock.spin_z_operator()
    cam = from_density(DensityParameters(n=2.0), Scenario.CHARGE_AND_ANGULAR_MOMENTUM)
    u_cam = unitary_for(cam)
    residual_cam = float(np.max(np.abs(u_cam @ jz - jz @ u_cam)))
    witness_set = from_density(DensityParameters(n=2.0, lam=0.2),
                               Scenario.CHARGE_ONLY)
    u_witness = unitary_for(witness_set)
    witness = float(np.max(np.abs(u_witness @ jz - jz @ u_witness)))
    ok = residual_cam <= 1e-12 and witness > 1e-3
    results.append(_result(
        "angular_momentum_commutation", residual_cam, 1e-12, passed=ok,
        detail=f"conserving scenario commutes; spin-preserving channel witness "
               f"violation {witness:.3e} > 1e-3"))
    return results


def _check_concavity() -> CheckResult:
    worst = 0.0
    for scenario in (Scenario.CHARGE_ONLY, Scenario.SPINLESS):
        grid = [k * scenario.n_max / 40.0 for k in range(41)]
        values = [entropy_vacuum_closed_form(n, scenario) for n in grid]
        second = [values[k - 1] - 2.0 * values[k] + values[k + 1]
                  for k in range(1, len(values) - 1)]
        worst = max(worst, max(second))
    return _result("closed_form_concavity", max(worst, 0.0), 1e-12,
                   detail="second differences nonpositive on the interior grid")


def _check_complementary_reductions(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 3)
    worst = 0.0
    for scenario in Scenario:
        for _ in range(10):
            coeffs = random_coefficients(scenario, rng)
            unitary = unitary_for(coeffs)
            occupation = int(rng.integers(fock.dimension(scenario.n_modes)))
            rho = fock.outer_product(unitary[:, occupation])
            s_particle = fock.von_neumann_entropy(fock.partial_trace(
                rho, scenario.particle_modes, scenario.n_modes))
            s_anti = fock.von_neumann_entropy(fock.partial_trace(
                rho, scenario.antiparticle_modes, scenario.n_modes))
            worst = max(worst, abs(s_particle - s_anti))
    return _result("complementary_reduction_entropy", worst, 1e-10)


def run_all(seed: int = DEFAULT_SEED, batch: int = 100) -> list[CheckResult]:
    """Run the full identity suite; deterministic for a fixed seed."""
    results: list[CheckResult] = []
    results.append(_check_anticommutators(4))
    results.append(_check_anticommutators(2))
    results.extend(_check_constraints())
    results.extend(_check_generator_structure())
    results.extend(_check_factorization(seed, batch))
    results.append(_check_nilpotency(seed))
    results.extend(_check_expansions(seed))
    results.extend(_check_entropy_curves())
    results.extend(_check_excited_catalogue())
    results.extend(_check_conservation())
    results.append(_check_concavity())
    results.append(_check_complementary_reductions(seed))
    return results


def render_text(results: list[CheckResult], seed: int = DEFAULT_SEED) -> str:
    lines = [f"verification report (seed {seed})"]
    name_width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<{name_width}}  residual {r.residual:.6e}"
                     f"  tolerance {r.tolerance:.1e}")
        if r.detail:
            lines.append(f"      {r.detail}")
    n_failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"


def render_json(results: list[CheckResult], seed: int = DEFAULT_SEED) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "report": "verification",
        "seed": seed,
        "all_passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
    return json.dumps(payload, indent=2) + "\n"
