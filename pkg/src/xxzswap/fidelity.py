"""Gate fidelity of the swap action under Gaussian phase fluctuations.

The closed-form fidelity of the evolved gate against the ideal swap is

    F(phi_x, phi_z, phi_h) = 1/5 + (8/15) sin^2(phi_x / 2)
                                 + (4/15) sin(phi_x / 2) sin(phi_z / 2 + phi_h),

which equals 1 exactly on the swap conditions and never falls below 1/6 (the
minimum sits at |sin(phi_x / 2)| = 1/4). Averaging F over independent
Gaussian phases centered on any swap point gives

    F_avg = 7/15 + (4/15) [exp(-lx^2 / 2) + exp(-(lx^2 + lz^2 + 4 lh^2) / 8)],

with limit 7/15 as the deviations grow. A seeded Monte Carlo estimator
cross-checks the average, and a product-state ensemble estimator probes the
state-averaging measure behind the closed form (the two do not agree away
from swap points; see ``state_ensemble_fidelity``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import PhaseTriple, propagator_matrix
from .errors import ValidationError
from .seeding import DEFAULT_SEED, stream
from .swaps import SWAP_MATRIX, is_swap_point

#: Swap-point phases used as the default fluctuation mean: the (m, n) = (2, 1)
#: solution (anisotropy 3).
SWAP_POINT = PhaseTriple(math.pi, 3.0 * math.pi, math.pi)

#: Default Monte Carlo sample count.
DEFAULT_SAMPLES = 10**6

#: Samples per random stream; fixed so estimates are reproducible no matter
#: how the chunks are evaluated.
CHUNK_SAMPLES = 1 << 16

ENSEMBLE_MEASURES = ("haar_product", "uniform_angles")


@dataclass(frozen=True)
class FluctuationSpec:
    """Standard deviations of independent Gaussian phase fluctuations.

    The mean defaults to the (m, n) = (2, 1) swap point; the closed-form
    average requires the mean to sit on some swap point, the Monte Carlo
    estimator does not.
    """

    lambda_x: float
    lambda_z: float
    lambda_h: float
    mean_phases: PhaseTriple = field(default=SWAP_POINT)

    def __post_init__(self) -> None:
        for name in ("lambda_x", "lambda_z", "lambda_h"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value >= 0.0):
                raise ValidationError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class McEstimate:
    """Seeded Monte Carlo average with its standard error."""

    mean: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.samples <= 0:
            raise ValidationError("sample count must be positive")
        if self.std_error < 0.0:
            raise ValidationError("standard error cannot be negative")


def gate_fidelity(phases: PhaseTriple) -> float:
    """Closed-form swap-gate fidelity at the given accumulated phases."""
    s = math.sin(0.5 * phases.phi_x)
    return 1 / 5 + (8 / 15) * s * s + (4 / 15) * s * math.sin(0.5 * phases.phi_z + phases.phi_h)


def _fidelity_values(phi_x: np.ndarray, phi_z: np.ndarray, phi_h: np.ndarray) -> np.ndarray:
    s = np.sin(0.5 * phi_x)
    return 1 / 5 + (8 / 15) * s * s + (4 / 15) * s * np.sin(0.5 * phi_z + phi_h)


def average_fidelity_analytic(spec: FluctuationSpec) -> float:
    """Gaussian-averaged gate fidelity around a swap point, in closed form.

    Only valid when the mean phases solve the swap conditions (the closed
    form needs the mean sines at their extrema); other means raise, use
    :func:`average_fidelity_mc` for them.
    """
    if not is_swap_point(spec.mean_phases):
        raise ValidationError(
            "mean phases must sit on a swap point (phi_x = d*pi with d odd, "
            "phi_h = n*pi, phi_z = (2n + d)*pi); the closed-form average only "
            "holds there"
        )
    lx2 = spec.lambda_x**2
    lz2 = spec.lambda_z**2
    lh2 = spec.lambda_h**2
    return 7 / 15 + (4 / 15) * (math.exp(-lx2 / 2) + math.exp(-(lx2 + lz2 + 4 * lh2) / 8))


def _phase_chunk_stats(spec: FluctuationSpec, samples: int, seed: int, index: int):
    """Sum and sum of squares of the fidelity over one sample chunk.

    Chunk contents depend only on (seed, index), so chunks may be evaluated
    in any order, or in parallel, and reduced by index.
    """
    start = index * CHUNK_SAMPLES
    n = min(CHUNK_SAMPLES, samples - start)
    z = stream(seed, index).standard_normal((3, n))
    f = _fidelity_values(
        spec.mean_phases.phi_x + spec.lambda_x * z[0],
        spec.mean_phases.phi_z + spec.lambda_z * z[1],
        spec.mean_phases.phi_h + spec.lambda_h * z[2],
    )
    return float(np.sum(f)), float(np.sum(f * f)), n


def average_fidelity_mc(
    spec: FluctuationSpec,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> McEstimate:
    """Monte Carlo estimate of the Gaussian-averaged gate fidelity.

    Draws the three phases independently from their Gaussians, averages the
    closed-form fidelity, and reports the standard error of the mean.
    Bitwise reproducible for fixed (seed, samples) regardless of how the
    fixed-size chunks are scheduled.
    """
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    total = total_sq = 0.0
    for index in range(_n_chunks(samples)):
        s, s2, _ = _phase_chunk_stats(spec, samples, seed, index)
        total += s
        total_sq += s2
    return _finish_estimate(total, total_sq, samples, seed)


def state_ensemble_fidelity(
    phases: PhaseTriple,
    measure: str,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> McEstimate:
    """Average overlap fidelity over random initial product states.

    Draws product states from ``measure``, evolves them at the given phases,
    and averages |<psi| SWAP V |psi>|^2 against the ideal swap. Measures:

    - ``haar_product``: each qubit uniform on the Bloch sphere
      (cos(theta) uniform on [-1, 1], azimuth uniform on [0, 2 pi));
    - ``uniform_angles``: polar angle theta uniform on [0, pi] instead.

    This estimator probes the state-averaging measure behind the closed-form
    :func:`gate_fidelity`, and deliberately does not match it away from swap
    points: at the identity (all phases zero) the Haar-product average is
    1/3 while the closed form gives 1/5. Report both values side by side
    rather than forcing agreement.
    """
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    if measure not in ENSEMBLE_MEASURES:
        raise ValidationError(
            f"unknown measure {measure!r}; expected one of {ENSEMBLE_MEASURES}"
        )
    overlap_op = SWAP_MATRIX @ propagator_matrix(phases)
    total = total_sq = 0.0
    for index in range(_n_chunks(samples)):
        start = index * CHUNK_SAMPLES
        n = min(CHUNK_SAMPLES, samples - start)
        u = stream(seed, index).random((4, n))
        if measure == "haar_product":
            theta_i = np.arccos(1.0 - 2.0 * u[0])
            theta_j = np.arccos(1.0 - 2.0 * u[1])
        else:
            theta_i = np.pi * u[0]
            theta_j = np.pi * u[1]
        a0, a1 = np.cos(theta_i / 2), np.exp(2j * np.pi * u[2]) * np.sin(theta_i / 2)
        b0, b1 = np.cos(theta_j / 2), np.exp(2j * np.pi * u[3]) * np.sin(theta_j / 2)
        psi = np.array([a0 * b0, a0 * b1, a1 * b0, a1 * b1])
        amp = np.sum(np.conj(psi) * (overlap_op @ psi), axis=0)
        f = np.abs(amp) ** 2
        total += float(np.sum(f))
        total_sq += float(np.sum(f * f))
    return _finish_estimate(total, total_sq, samples, seed)


@dataclass(frozen=True)
class FidelityGridRow:
    """One grid point of the tied-axes fidelity surface."""

    lambda_x: float
    lambda_z: float
    lambda_h: float
    f_analytic: float
    f_mc: float
    f_mc_stderr: float
    samples: int
    seed: int


GRID_COLUMNS = (
    "lambda_x",
    "lambda_z",
    "lambda_h",
    "f_analytic",
    "f_mc",
    "f_mc_stderr",
    "samples",
    "seed",
)


def fidelity_grid(
    xz_values,
    h_values,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    mean_phases: PhaseTriple = SWAP_POINT,
) -> list[FidelityGridRow]:
    """Tied-axes fidelity surface: lambda_x = lambda_z on the first axis,
    lambda_h on the second.

    Each row carries the closed-form average next to its Monte Carlo
    estimate, suitable for surface plots or regression against the closed
    form. Axis grids must be nonempty, nonnegative, and nondecreasing.
    """
    xz = [float(v) for v in xz_values]
    h = [float(v) for v in h_values]
    for name, axis in (("xz_values", xz), ("h_values", h)):
        if not axis:
            raise ValidationError(f"{name} must be nonempty")
        if any(v < 0.0 or not math.isfinite(v) for v in axis):
            raise ValidationError(f"{name} must be finite and nonnegative")
        if any(b < a for a, b in zip(axis, axis[1:])):
            raise ValidationError(f"{name} must be nondecreasing")
    rows = []
    for lam_xz in xz:
        for lam_h in h:
            spec = FluctuationSpec(lam_xz, lam_xz, lam_h, mean_phases)
            estimate = average_fidelity_mc(spec, samples=samples, seed=seed)
            rows.append(
                FidelityGridRow(
                    lambda_x=lam_xz,
                    lambda_z=lam_xz,
                    lambda_h=lam_h,
                    f_analytic=average_fidelity_analytic(spec),
                    f_mc=estimate.mean,
                    f_mc_stderr=estimate.std_error,
                    samples=samples,
                    seed=seed,
                )
            )
    return rows


def _n_chunks(samples: int) -> int:
    return (samples + CHUNK_SAMPLES - 1) // CHUNK_SAMPLES


def _finish_estimate(total: float, total_sq: float, samples: int, seed: int) -> McEstimate:
    mean = total / samples
    if samples > 1:
        # sample variance; the max() guards the degenerate all-equal case
        variance = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    else:
        variance = 0.0
    return McEstimate(mean, math.sqrt(variance / samples), samples, seed)
