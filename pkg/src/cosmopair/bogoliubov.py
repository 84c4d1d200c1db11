"""Bogoliubov coefficient sets and their antisymmetric generator matrices.

A transformation mixing in/out fermion ladder operators at fixed momentum
is described by a real amplitude ``a`` and a 2x2 complex matrix ``beta``
whose rows/columns are indexed by spin (up, down).  Canonical
anticommutation forces the normalization and orthogonality constraints
checked by :func:`validate`; three sparsity patterns of ``beta``
correspond to the three conservation scenarios.

The generator matrix theta is antisymmetric with zero diagonal and pairs
particle modes with antiparticle modes.  For every valid coefficient set
its polar modulus |theta| = sqrt(theta^dag theta) is a multiple r of the
identity with cos r = a, which is what makes the closed-form
factorization of the squeezing unitary possible.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BogolyubovCoefficients",
    "DensityParameters",
    "Scenario",
    "ValidationReport",
    "cross_term_identity",
    "determinant_combination",
    "expected_pair_mixing",
    "from_density",
    "mu_nu_from_theta",
    "random_coefficients",
    "squeezing_angle",
    "theta_from_coefficients",
    "validate",
]

CONSTRAINT_TOLERANCE = 1e-12

UP, DOWN = 0, 1


class Scenario(enum.Enum):
    """Conservation scenario selecting mode count and beta sparsity."""

    CHARGE_ONLY = "charge"
    CHARGE_AND_ANGULAR_MOMENTUM = "spin-am"
    SPINLESS = "spinless"

    @property
    def n_modes(self) -> int:
        return 2 if self is Scenario.SPINLESS else 4

    @property
    def n_max(self) -> float:
        """Largest total created-particle density (particles + antiparticles)."""
        return float(self.n_modes)

    @property
    def particle_modes(self) -> tuple[int, ...]:
        return (0,) if self is Scenario.SPINLESS else (0, 1)

    @property
    def antiparticle_modes(self) -> tuple[int, ...]:
        return (1,) if self is Scenario.SPINLESS else (2, 3)

    @classmethod
    def from_token(cls, token: str) -> "Scenario":
        for member in cls:
            if member.value == token:
                return member
        tokens = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown scenario {token!r} (expected one of: {tokens})")


@dataclass(frozen=True)
class DensityParameters:
    """Parameters generating a coefficient set from a target density.

    n is the total created-particle density in [0, n_max]; lam in [0, 1]
    splits pair creation between the spin-preserving and spin-flip
    channels (charge-only scenario); phases supplies four angles, three
    free entry phases plus one overall phase (see ``from_density``).
    """

    n: float
    lam: float = 0.5
    phases: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class BogolyubovCoefficients:
    """Real amplitude ``a`` plus the 2x2 spin matrix ``beta``.

    The spinless case stores its single coefficient in the (up, down)
    entry with all other entries zero.
    """

    scenario: Scenario
    a: float
    beta: np.ndarray = field(repr=False)

    def __post_init__(self):
        beta = np.array(self.beta, dtype=complex)
        if beta.shape != (2, 2):
            raise ValueError(f"beta must be 2x2, got {beta.shape}")
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)
        if not 0.0 <= self.a <= 1.0 + 1e-12:
            raise ValueError(f"amplitude a={self.a} outside [0, 1]")

    @property
    def n_modes(self) -> int:
        return self.scenario.n_modes


@dataclass(frozen=True)
class ValidationReport:
    """Named constraint residuals; passes iff all are within tolerance."""

    residuals: dict[str, float]
    tolerance: float = CONSTRAINT_TOLERANCE

    @property
    def passed(self) -> bool:
        return all(r <= self.tolerance for r in self.residuals.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values())

    def failing(self) -> list[str]:
        return [name for name, r in self.residuals.items() if r > self.tolerance]


def from_density(params: DensityParameters, scenario: Scenario) -> BogolyubovCoefficients:
    """Coefficient set realizing a given created-particle density.

    a**2 = (n_max - n)/n_max in every scenario.  Charge-only splits the
    per-channel moduli as |beta_uu|**2 = |beta_dd|**2 = (1-lam) n/4 and
    |beta_ud|**2 = |beta_du|**2 = lam n/4; the up-up, up-down and
    down-down phases come from ``params.phases[:3]`` (all shifted by the
    overall ``phases[3]``) and the down-up phase is solved from the
    orthogonality constraint.  When a channel modulus vanishes the same
    formula is kept, which satisfies the then-vacuous constraint.
    """
    n_max = scenario.n_max
    n = float(params.n)
    lam = float(params.lam)
    if not 0.0 <= n <= n_max:
        raise ValueError(f"density n={n} outside [0, {n_max}] for {scenario.value}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    if len(params.phases) != 4:
        raise ValueError("phases must supply four angles")
    p1, p2, p3, p4 = (float(p) for p in params.phases)
    a = math.sqrt((n_max - n) / n_max)
    beta = np.zeros((2, 2), dtype=complex)
    if scenario is Scenario.CHARGE_ONLY:
        diag = math.sqrt((1.0 - lam) * n / 4.0)
        off = math.sqrt(lam * n / 4.0)
        beta[UP, UP] = diag * np.exp(1j * (p1 + p4))
        beta[UP, DOWN] = off * np.exp(1j * (p2 + p4))
        beta[DOWN, DOWN] = diag * np.exp(1j * (p3 + p4))
        beta[DOWN, UP] = off * np.exp(1j * (p1 - p2 + p3 + math.pi + p4))
    elif scenario is Scenario.CHARGE_AND_ANGULAR_MOMENTUM:
        off = math.sqrt(n / 4.0)
        beta[UP, DOWN] = off * np.exp(1j * (p2 + p4))
        beta[DOWN, UP] = off * np.exp(1j * (p3 + p4))
    else:
        beta[UP, DOWN] = math.sqrt(n / 2.0) * np.exp(1j * (p1 + p4))
    return BogolyubovCoefficients(scenario=scenario, a=a, beta=beta)


def validate(coeffs: BogolyubovCoefficients,
             tolerance: float = CONSTRAINT_TOLERANCE) -> ValidationReport:
    """Residuals of every algebraic constraint on a coefficient set."""
    a2 = coeffs.a ** 2
    b = coeffs.beta
    residuals: dict[str, float] = {}
    if coeffs.scenario is Scenario.SPINLESS:
        residuals["normalization"] = abs(a2 + abs(b[UP, DOWN]) ** 2 - 1.0)
        residuals["sparsity"] = float(
            abs(b[UP, UP]) + abs(b[DOWN, UP]) + abs(b[DOWN, DOWN]))
        return ValidationReport(residuals, tolerance)
    residuals["norm_column_up"] = abs(a2 + abs(b[UP, UP]) ** 2 + abs(b[DOWN, UP]) ** 2 - 1.0)
    residuals["norm_column_down"] = abs(a2 + abs(b[UP, DOWN]) ** 2 + abs(b[DOWN, DOWN]) ** 2 - 1.0)
    residuals["norm_row_up"] = abs(a2 + abs(b[UP, UP]) ** 2 + abs(b[UP, DOWN]) ** 2 - 1.0)
    residuals["norm_row_down"] = abs(a2 + abs(b[DOWN, DOWN]) ** 2 + abs(b[DOWN, UP]) ** 2 - 1.0)
    residuals["modulus_pair_diagonal"] = abs(abs(b[UP, UP]) - abs(b[DOWN, DOWN]))
    residuals["modulus_pair_offdiagonal"] = abs(abs(b[UP, DOWN]) - abs(b[DOWN, UP]))
    residuals["orthogonality_rows"] = abs(
        b[UP, UP] * np.conj(b[UP, DOWN]) + b[DOWN, UP] * np.conj(b[DOWN, DOWN]))
    residuals["orthogonality_columns"] = abs(
        b[UP, UP] * np.conj(b[DOWN, UP]) + b[UP, DOWN] * np.conj(b[DOWN, DOWN]))
    if coeffs.scenario is Scenario.CHARGE_AND_ANGULAR_MOMENTUM:
        residuals["sparsity"] = float(abs(b[UP, UP]) + abs(b[DOWN, DOWN]))
    return ValidationReport(residuals, tolerance)


def cross_term_identity(coeffs: BogolyubovCoefficients) -> tuple[complex, complex]:
    """The two conjugate cross sums that kill the off-diagonal reduced terms.

    Both must vanish for any valid charge-only coefficient set; they are
    the combinations multiplying the spin-coherence entries of the
    reduced particle operator.
    """
    if coeffs.scenario is not Scenario.CHARGE_ONLY:
        raise ValueError("cross_term_identity applies to the charge-only scenario")
    b = coeffs.beta
    first = np.conj(b[UP, UP]) * b[DOWN, UP] + np.conj(b[UP, DOWN]) * b[DOWN, DOWN]
    second = np.conj(b[DOWN, UP]) * b[UP, UP] + b[UP, DOWN] * np.conj(b[DOWN, DOWN])
    return complex(first), complex(second)


def determinant_combination(coeffs: BogolyubovCoefficients) -> complex:
    """Conjugated determinant-like combination of the beta entries.

    For valid charge-only coefficients its modulus equals
    |beta_ud|**2 + |beta_uu|**2; the overall phase is free and therefore
    returned, never assumed.
    """
    if coeffs.scenario is not Scenario.CHARGE_ONLY:
        raise ValueError("determinant_combination applies to the charge-only scenario")
    b = coeffs.beta
    return complex(np.conj(b[DOWN, UP]) * np.conj(b[UP, DOWN])
                   - np.conj(b[DOWN, DOWN]) * np.conj(b[UP, UP]))


def _angle_over_sine(a: float) -> float:
    # arccos(a)/sin(arccos(a)); -> 1 as a -> 1, pi/2 at a = 0
    if a >= 1.0 - 1e-9:
        return 1.0 + (1.0 - a) / 3.0
    return math.acos(a) / math.sqrt(1.0 - a * a)


def theta_from_coefficients(coeffs: BogolyubovCoefficients,
                            check_tolerance: float = 1e-6) -> np.ndarray:
    """Antisymmetric generator matrix of the squeezing unitary.

    Entry (i, j) couples modes i and j through a pair-creation term; the
    block pattern links each particle mode to both antiparticle modes
    with amplitudes -arccos(a)/sin(arccos(a)) times conj(beta) entries.
    The default validation gate is loose so that numerically dressed
    coefficient sets (constraints satisfied to integration accuracy)
    are accepted; exact sets pass the tight check in :func:`validate`.
    """
    if coeffs.a < 0.0:
        raise ValueError("amplitude a must be nonnegative")
    report = validate(coeffs, tolerance=check_tolerance)
    if not report.passed:
        raise ValueError(f"invalid coefficients, failing constraints: {report.failing()}")
    phi = _angle_over_sine(min(coeffs.a, 1.0))
    b = coeffs.beta
    if coeffs.scenario is Scenario.SPINLESS:
        th = -phi * np.conj(b[UP, DOWN])
        return np.array([[0.0, th], [-th, 0.0]], dtype=complex)
    t_uu = -phi * np.conj(b[UP, UP])
    t_ud = -phi * np.conj(b[UP, DOWN])
    t_dd = -phi * np.conj(b[DOWN, DOWN])
    t_du = -phi * np.conj(b[DOWN, UP])
    theta = np.zeros((4, 4), dtype=complex)
    theta[0, 2], theta[0, 3] = t_uu, t_ud
    theta[1, 2], theta[1, 3] = t_du, t_dd
    theta[2, 0], theta[2, 1] = -t_uu, -t_du
    theta[3, 0], theta[3, 1] = -t_ud, -t_dd
    return theta


def squeezing_angle(theta: np.ndarray, tolerance: float = 1e-10) -> float:
    """Scalar polar radius r with |theta| = r * identity.

    Raises if theta^dag theta is not a multiple of the identity, which
    would invalidate the closed-form factorization downstream.
    """
    theta = np.asarray(theta, dtype=complex)
    gram = theta.conj().T @ theta
    r2 = float(np.mean(np.diag(gram).real))
    deviation = float(np.max(np.abs(gram - r2 * np.eye(theta.shape[0]))))
    if deviation > tolerance * max(1.0, r2):
        raise ValueError(f"|theta| is not scalar: deviation {deviation}")
    return math.sqrt(max(r2, 0.0))


def mu_nu_from_theta(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ladder-mixing matrices (mu, nu) generated by theta.

    mu = cos|theta| and nu = -sin|theta| |theta|^-1 theta, evaluated
    through the Hermitian eigendecomposition of theta^dag theta; the
    sin(x)/x factor extends analytically through singular |theta|.
    """
    theta = np.asarray(theta, dtype=complex)
    n = theta.shape[0]
    if theta.shape != (n, n):
        raise ValueError("theta must be square")
    asym = float(np.max(np.abs(theta + theta.T)))
    scale = max(1.0, float(np.max(np.abs(theta))))
    if asym > 1e-12 * scale:
        raise ValueError(f"theta is not antisymmetric: residual {asym}")
    gram = theta.conj().T @ theta
    eigs, vecs = np.linalg.eigh(gram)
    radii = np.sqrt(np.clip(eigs, 0.0, None))
    mu = (vecs * np.cos(radii)) @ vecs.conj().T
    sinc = np.sinc(radii / math.pi)  # sin(r)/r with the r = 0 limit built in
    nu = -((vecs * sinc) @ vecs.conj().T) @ theta
    return mu, nu


def expected_pair_mixing(coeffs: BogolyubovCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form (mu, nu) pair for a coefficient set.

    mu is a times the identity; nu carries conj(beta) in the
    particle-antiparticle block and minus its transpose below.
    """
    n = coeffs.n_modes
    mu = coeffs.a * np.eye(n, dtype=complex)
    nu = np.zeros((n, n), dtype=complex)
    b = coeffs.beta
    if coeffs.scenario is Scenario.SPINLESS:
        nu[0, 1] = np.conj(b[UP, DOWN])
        nu[1, 0] = -np.conj(b[UP, DOWN])
        return mu, nu
    block = np.conj(b)
    nu[0:2, 2:4] = block
    nu[2:4, 0:2] = -block.T
    return mu, nu


def random_coefficients(scenario: Scenario, rng: np.random.Generator,
                        n_fraction_max: float = 0.995) -> BogolyubovCoefficients:
    """Random valid coefficient set for property and oracle tests.

    The density stays below n_fraction_max * n_max so the amplitude a is
    bounded away from zero and the factorized application remains well
    conditioned.
    """
    n = float(rng.uniform(0.0, n_fraction_max * scenario.n_max))
    lam = float(rng.uniform(0.0, 1.0))
    phases = tuple(float(p) for p in rng.uniform(0.0, 2.0 * math.pi, size=4))
    return from_density(DensityParameters(n=n, lam=lam, phases=phases), scenario)
