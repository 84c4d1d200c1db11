"""Mode-equation dynamics: from a scale-factor profile to coefficients.

Each momentum mode obeys the second-order complex equation

    f'' + (|p|**2 + M(tau)**2 - i M'(tau)) f = 0,     M(tau) = m a(tau),

for the branch that feeds the scalar mixing amplitudes; the opposite
imaginary sign belongs to the conjugate branch, whose complex conjugate
solves the same equation and supplies the Wronskian check.  Positive
frequency at early times fixes f = exp(-i E_in tau).  Matching the late
solution onto A exp(-i E_out tau) + B exp(+i E_out tau) yields the
scalar amplitudes, which are dressed into a full coefficient set with
the flat-spinor contraction and kinematic square roots; the identity
a**2 + sum |beta|**2 = 1 then holds to integration accuracy, which is
the end-to-end correctness monitor.

Gamma-matrix representation: gamma0 = -i diag(1, 1, -1, -1) and spatial
gammas off-diagonal Pauli blocks, so the positive/negative energy flat
spinors are the first/last two coordinate vectors and the contraction
v+ (gamma . p) u reduces to the transposed Pauli matrix sigma . p.  Any
other representation changes beta by a spin rotation that entropies
cannot see; the row-norm identity |row|**2 = |p|**2 is the
representation-independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from cosmopair.bogoliubov import (
    DOWN,
    UP,
    BogolyubovCoefficients,
    Scenario,
    validate,
)

__all__ = [
    "DressingResult",
    "IntegrationError",
    "ModeParameters",
    "ModeSolution",
    "ScalarBogolyubov",
    "ScaleFactorProfile",
    "asymptotic_energies",
    "default_tau_span",
    "dress_coefficients",
    "extract_scalar_coefficients",
    "integrate_mode",
    "momentum_point",
    "MomentumPointResult",
    "particle_density",
    "spinor_contraction",
]

TOL_MIN, TOL_MAX = 1e-12, 1e-6


class IntegrationError(RuntimeError):
    """The mode integration failed or left its validity domain."""


@dataclass(frozen=True)
class ScaleFactorProfile:
    """Conformal scale factor with flat asymptotics.

    The smooth-step family has a(tau)**2 = 1 + epsilon (1 + tanh(rho
    tau)), interpolating between 1 and 1 + 2 epsilon; the constant
    family a(tau) = a0 is the no-creation control.
    """

    kind: str
    a0: float = 1.0
    epsilon: float = 1.0
    rho: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "tanh"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "constant" and self.a0 <= 0:
            raise ValueError("constant profile needs a0 > 0")
        if self.kind == "tanh" and (self.epsilon <= 0 or self.rho <= 0):
            raise ValueError("tanh profile needs epsilon > 0 and rho > 0")

    @classmethod
    def constant(cls, a0: float = 1.0) -> "ScaleFactorProfile":
        return cls(kind="constant", a0=a0)

    @classmethod
    def smooth_step(cls, epsilon: float, rho: float) -> "ScaleFactorProfile":
        return cls(kind="tanh", epsilon=epsilon, rho=rho)

    def a_squared(self, tau):
        if self.kind == "constant":
            return self.a0 ** 2 * np.ones_like(np.asarray(tau, dtype=float))
        return 1.0 + self.epsilon * (1.0 + np.tanh(self.rho * np.asarray(tau, dtype=float)))

    def a(self, tau):
        return np.sqrt(self.a_squared(tau))

    @property
    def a_in(self) -> float:
        return self.a0 if self.kind == "constant" else 1.0

    @property
    def a_out(self) -> float:
        return self.a0 if self.kind == "constant" else math.sqrt(1.0 + 2.0 * self.epsilon)

    def mass(self, tau, m: float):
        return m * self.a(tau)

    def mass_dot(self, tau, m: float):
        """d(m a)/dtau, overflow-safe for large |rho tau|."""
        if self.kind == "constant":
            return np.zeros_like(np.asarray(tau, dtype=float))
        x = self.rho * np.asarray(tau, dtype=float)
        expo = np.exp(-2.0 * np.abs(x))
        sech2 = 4.0 * expo / (1.0 + expo) ** 2
        return m * self.epsilon * self.rho * sech2 / (2.0 * self.a(tau))


@dataclass(frozen=True)
class ModeParameters:
    """Momentum vector (conformal units) and mass of one field mode."""

    p_vec: tuple[float, float, float]
    m: float

    def __post_init__(self):
        vec = tuple(float(c) for c in self.p_vec)
        if len(vec) != 3:
            raise ValueError("p_vec must have three components")
        object.__setattr__(self, "p_vec", vec)
        if self.m < 0:
            raise ValueError("mass must be nonnegative")

    @property
    def p(self) -> float:
        return math.sqrt(sum(c * c for c in self.p_vec))


@dataclass(frozen=True)
class AsymptoticEnergies:
    m_in: float
    m_out: float
    e_in: float
    e_out: float


def asymptotic_energies(params: ModeParameters, profile: ScaleFactorProfile) -> AsymptoticEnergies:
    m_in = params.m * profile.a_in
    m_out = params.m * profile.a_out
    p2 = params.p ** 2
    return AsymptoticEnergies(m_in=m_in, m_out=m_out,
                              e_in=math.sqrt(p2 + m_in ** 2),
                              e_out=math.sqrt(p2 + m_out ** 2))


def default_tau_span(profile: ScaleFactorProfile, tol: float) -> tuple[float, float]:
    """Span wide enough that the profile sits within tol of its limits."""
    if profile.kind == "constant":
        return (-10.0, 10.0)
    # a - a_limit ~ epsilon exp(-2 rho |tau|); the +4 margin buys ~55x.
    half_width = (math.log(profile.epsilon / tol) + 4.0) / (2.0 * profile.rho)
    half_width = max(half_width, 4.0 / profile.rho)
    return (-half_width, half_width)


@dataclass(frozen=True, eq=False)
class ModeSolution:
    """Sampled mode function, its conjugate-branch partner and metadata.

    ``f``/``f_dot`` hold the positive-frequency branch, ``g``/``g_dot``
    the solution of the same equation with reversed-frequency initial
    data (the conjugate of the opposite-sign branch); their Wronskian
    f g' - f' g is exactly conserved by the equation and monitors the
    integrator.
    """

    tau: np.ndarray
    f: np.ndarray
    f_dot: np.ndarray
    g: np.ndarray
    g_dot: np.ndarray
    params: ModeParameters
    profile: ScaleFactorProfile
    tol: float
    tau_span: tuple[float, float]
    n_rhs_evaluations: int
    dense: Callable[[float], np.ndarray]

    def wronskian(self) -> np.ndarray:
        return self.f * self.g_dot - self.f_dot * self.g

    def wronskian_drift(self) -> float:
        w = self.wronskian()
        w0 = w[0]
        return float(np.max(np.abs(w - w0)) / max(abs(w0), 1e-300))

    def amplitude_bound_excess(self) -> float:
        """max |f|^2 above the conserved-quantity bound (should be ~0)."""
        en = asymptotic_energies(self.params, self.profile)
        p = self.params.p
        if p == 0.0:
            return 0.0
        bound = 1.0 + (en.e_in + en.m_in) ** 2 / p ** 2
        return float(max(np.max(np.abs(self.f) ** 2) - bound, 0.0))


def integrate_mode(params: ModeParameters, profile: ScaleFactorProfile,
                   tau_span: tuple[float, float] | None = None,
                   tol: float = 1e-9, n_samples: int = 241) -> ModeSolution:
    """Integrate the mode equation across the expansion epoch.

    Initial data is exactly positive frequency at tau_span[0].  Raises a
    configuration error when the span does not reach the flat
    asymptotics to within tol on the scale factor.
    """
    if not TOL_MIN <= tol <= TOL_MAX:
        raise ValueError(f"tol {tol} outside [{TOL_MIN}, {TOL_MAX}]")
    if tau_span is None:
        tau_span = default_tau_span(profile, tol)
    tau0, tau1 = float(tau_span[0]), float(tau_span[1])
    if not tau0 < tau1:
        raise ValueError("tau_span must be increasing")
    if abs(float(profile.a(tau0)) - profile.a_in) > tol:
        raise ValueError(f"tau_span start {tau0} does not reach the early flat region")
    if abs(float(profile.a(tau1)) - profile.a_out) > tol:
        raise ValueError(f"tau_span end {tau1} does not reach the late flat region")
    en = asymptotic_energies(params, profile)
    p2 = params.p ** 2
    m = params.m

    def rhs(tau, y):
        coeff = p2 + profile.mass(tau, m) ** 2 - 1j * profile.mass_dot(tau, m)
        return [y[1], -coeff * y[0], y[3], -coeff * y[2]]

    f0 = np.exp(-1j * en.e_in * tau0)
    g0 = np.exp(+1j * en.e_in * tau0)
    y0 = np.array([f0, -1j * en.e_in * f0, g0, +1j * en.e_in * g0], dtype=complex)
    grid = np.linspace(tau0, tau1, n_samples)
    sol = solve_ivp(rhs, (tau0, tau1), y0, method="DOP853", rtol=tol,
                    atol=tol * 1e-2, t_eval=grid, dense_output=True)
    if not sol.success:
        raise IntegrationError(f"mode integration failed: {sol.message}")
    return ModeSolution(tau=sol.t, f=sol.y[0], f_dot=sol.y[1], g=sol.y[2],
                        g_dot=sol.y[3], params=params, profile=profile, tol=tol,
                        tau_span=(tau0, tau1), n_rhs_evaluations=int(sol.nfev),
                        dense=sol.sol)


@dataclass(frozen=True)
class ScalarBogolyubov:
    """Scalar mixing amplitudes of one mode plus a stability diagnostic.

    ``shift_residual`` is the change in (a_minus, b_minus) when the
    matching time moves back by one oscillation period; it should stay
    within a small multiple of the integration tolerance.
    """

    a_minus: complex
    b_minus: complex
    shift_residual: float


def _match_plane_waves(f: complex, f_dot: complex, e_out: float,
                       tau: float) -> tuple[complex, complex]:
    a = 0.5 * (f + 1j * f_dot / e_out) * np.exp(1j * e_out * tau)
    b = 0.5 * (f - 1j * f_dot / e_out) * np.exp(-1j * e_out * tau)
    return complex(a), complex(b)


def extract_scalar_coefficients(sol: ModeSolution,
                                params: ModeParameters | None = None) -> ScalarBogolyubov:
    """Match the late-time solution onto in/out plane waves."""
    params = params or sol.params
    en = asymptotic_energies(params, sol.profile)
    if en.e_out < 1e-9:
        raise IntegrationError("degenerate mode: out-region energy is zero")
    tau_end = float(sol.tau[-1])
    a, b = _match_plane_waves(sol.f[-1], sol.f_dot[-1], en.e_out, tau_end)
    period = 2.0 * math.pi / en.e_out
    tau_shift = tau_end - period
    if tau_shift > sol.tau_span[0]:
        y = sol.dense(tau_shift)
        a2, b2 = _match_plane_waves(y[0], y[1], en.e_out, tau_shift)
        shift_residual = max(abs(a - a2), abs(b - b2))
    else:
        shift_residual = math.nan
    return ScalarBogolyubov(a_minus=a, b_minus=b, shift_residual=shift_residual)


def spinor_contraction(p_vec) -> tuple[np.ndarray, bool]:
    """Flat-spinor matrix element matrix C[d, d'] and a zero-momentum flag.

    C equals the transpose of sigma . p in the fixed representation, so
    each row has squared norm |p|**2 and C is odd under p -> -p.  At
    p = 0 the matrix vanishes identically (no creation channel) and the
    flag is set.
    """
    px, py, pz = (float(c) for c in p_vec)
    contraction = np.array([[pz, px + 1j * py],
                            [px - 1j * py, -pz]], dtype=complex)
    is_zero = (px == 0.0 and py == 0.0 and pz == 0.0)
    return contraction, is_zero


@dataclass(frozen=True, eq=False)
class DressingResult:
    """Coefficient set from dynamics plus the bookkeeping around it."""

    coefficients: BogolyubovCoefficients
    stripped_phase: complex
    lambda_effective: float
    normalization_residual: float


def dress_coefficients(scalar: ScalarBogolyubov, params: ModeParameters,
                       contraction: np.ndarray, profile: ScaleFactorProfile,
                       tol: float = 1e-9) -> DressingResult:
    """Dress scalar amplitudes into a validated coefficient set.

    The amplitude is made real by stripping (and recording) its global
    phase, which rotates operator phases but none of the mixing moduli.
    Raises when the resulting set violates the normalization constraints
    beyond 10 * tol, signalling an integration or matching bug.
    """
    en = asymptotic_energies(params, profile)
    raw_a = math.sqrt(en.e_out / en.e_in * (en.e_out + en.m_out) / (en.e_in + en.m_in)) \
        * scalar.a_minus
    magnitude = abs(raw_a)
    phase = raw_a / magnitude if magnitude > 0 else complex(1.0)
    denom = math.sqrt((en.e_in / en.e_out) * (en.e_out + en.m_out) * (en.e_in + en.m_in))
    beta = -1j * np.asarray(contraction, dtype=complex) * scalar.b_minus / denom
    coeffs = BogolyubovCoefficients(scenario=Scenario.CHARGE_ONLY,
                                    a=min(magnitude, 1.0), beta=beta)
    report = validate(coeffs, tolerance=10.0 * tol)
    if not report.passed:
        raise IntegrationError(
            f"dressed coefficients violate constraints beyond {10 * tol}: "
            f"{report.failing()} (worst {report.worst:.3e})")
    flip2 = abs(beta[UP, DOWN]) ** 2
    keep2 = abs(beta[UP, UP]) ** 2
    denom_lambda = abs(contraction[UP, DOWN]) ** 2 + abs(contraction[UP, UP]) ** 2
    if denom_lambda > 0:
        lambda_eff = abs(contraction[UP, DOWN]) ** 2 / denom_lambda
    elif flip2 + keep2 > 0:
        lambda_eff = flip2 / (flip2 + keep2)
    else:
        lambda_eff = 0.0
    return DressingResult(coefficients=coeffs, stripped_phase=phase,
                          lambda_effective=float(lambda_eff),
                          normalization_residual=report.worst)


def particle_density(coeffs: BogolyubovCoefficients) -> float:
    """Total created density: particles plus antiparticles over all spins.

    Per-spin particle densities are the row sums of |beta|**2 and
    antiparticle densities the column sums, so the total is twice the
    full sum; the spinless case (one stored entry) reduces to 2|beta|**2.
    """
    return float(2.0 * np.sum(np.abs(coeffs.beta) ** 2))


@dataclass(frozen=True, eq=False)
class MomentumPointResult:
    """Full pipeline output at one momentum point."""

    p_vec: tuple[float, float, float]
    p: float
    a: float
    beta_moduli: tuple[float, float, float, float]
    n_created: float
    lambda_effective: float
    s_numeric: float
    s_closed: float
    normalization_residual: float
    self_convergence: float


def momentum_point(p_vec, m: float, profile: ScaleFactorProfile,
                   tol: float = 1e-9) -> MomentumPointResult:
    """Integrate, dress and score one momentum point.

    Runs the integration at tol and tol/2 over a common span (sized for
    the finer tolerance) and reports the coefficient difference as the
    self-convergence diagnostic.
    """
    from cosmopair.entanglement import entropy_numeric, entropy_vacuum_closed_form

    params = ModeParameters(p_vec=tuple(p_vec), m=m)
    contraction, _ = spinor_contraction(params.p_vec)
    span = default_tau_span(profile, tol / 2.0)

    def run(run_tol: float) -> ScalarBogolyubov:
        sol = integrate_mode(params, profile, tau_span=span, tol=run_tol)
        return extract_scalar_coefficients(sol)

    scalar = run(tol)
    scalar_fine = run(tol / 2.0)
    self_conv = max(abs(scalar.a_minus - scalar_fine.a_minus),
                    abs(scalar.b_minus - scalar_fine.b_minus))
    dressed = dress_coefficients(scalar, params, contraction, profile, tol=tol)
    coeffs = dressed.coefficients
    n_created = particle_density(coeffs)
    s_num = entropy_numeric(coeffs, occupation=0)
    s_closed = entropy_vacuum_closed_form(min(n_created, 4.0), Scenario.CHARGE_ONLY)
    b = np.abs(coeffs.beta)
    return MomentumPointResult(
        p_vec=params.p_vec, p=params.p, a=coeffs.a,
        beta_moduli=(float(b[UP, UP]), float(b[UP, DOWN]),
                     float(b[DOWN, UP]), float(b[DOWN, DOWN])),
        n_created=n_created, lambda_effective=dressed.lambda_effective,
        s_numeric=s_num, s_closed=s_closed,
        normalization_residual=dressed.normalization_residual,
        self_convergence=self_conv)
