"""Exact impedances for purely specular (q = 1) and purely diffuse (q = 0) walls.

In reduced units

    zeta_ref = -2 int_0^inf dk / L(k)
    zeta_dif = -pi**2 / int_0^inf ln(L(k) / k**2) dk

The diffuse normalisation is the one for which both coincide in the local
limit, where int_0^inf ln(1 + kappa**2 / k**2) dk = pi kappa.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .errors import BranchDiscontinuityError, InvalidParameterError, QuadratureError
from .kinetic import (
    SQRT_PI,
    PlasmaParams,
    characteristic_scales,
    dispersion_L,
    dispersion_L_derivative,
    grid_spec_for,
    lambda_form,
)
from .log import get_logger
from .quadrature import SpectralGrid, build_grid, integrate_semi_infinite
from .specfun import scaled_erfc

logger = get_logger(__name__)

MAX_PHASE_STEP = 0.5 * math.pi
BRANCH_REFINEMENTS = 2
SPECULAR_FORMS = ("tau", "k")


def impedance_specular(
    params: PlasmaParams, tol: float = 1e-11, form: str = "tau"
) -> complex:
    """zeta_ref by adaptive quadrature, in the tau = 1/k variable by default."""
    if form not in SPECULAR_FORMS:
        raise InvalidParameterError(f"form must be one of {SPECULAR_FORMS}")
    scales = characteristic_scales(params)
    if form == "tau":
        result = integrate_semi_infinite(
            lambda t: 1.0 / complex(lambda_form(t, params)),
            tol=tol,
            split=1.0 / min(scales),
        )
    else:
        result = integrate_semi_infinite(
            lambda k: 1.0 / complex(dispersion_L(k, params)),
            tol=tol,
            split=max(scales),
        )
    zeta = -2.0 * result.value
    if not result.converged:
        raise QuadratureError(
            f"specular impedance did not converge at alpha={params.alpha:.4g}",
            estimate=zeta,
        )
    return zeta


@dataclass(frozen=True, eq=False)
class BranchTracker:
    """Continuous argument of L(k) / k**2 on an increasing set of wavenumbers."""

    k_samples: NDArray[np.float64]
    phase: NDArray[np.float64]

    @classmethod
    def track(
        cls, params: PlasmaParams, k_samples: NDArray[np.float64]
    ) -> "BranchTracker":
        ks = np.asarray(k_samples, dtype=np.float64)
        if ks.ndim != 1 or ks.size < 2 or not np.all(np.diff(ks) > 0) or ks[0] <= 0:
            raise InvalidParameterError(
                "branch samples must be positive and increasing"
            )
        principal = np.log1p(_excess(ks, params)).imag
        # unwrap from the large-k end, where the argument tends to 0
        phase = np.unwrap(principal[::-1])[::-1]
        step = float(np.max(np.abs(np.diff(phase))))
        if step > MAX_PHASE_STEP:
            raise BranchDiscontinuityError(
                f"phase of L/k^2 jumps by {step:.3f} rad between samples "
                f"(alpha={params.alpha:.4g}); the grid is too coarse"
            )
        return cls(ks, phase)

    @property
    def max_step(self) -> float:
        return float(np.max(np.abs(np.diff(self.phase))))


def _excess(k: NDArray[np.float64], params: PlasmaParams) -> NDArray[np.complex128]:
    # L / k**2 - 1 without forming the difference
    s = np.asarray(scaled_erfc(params.z0 / k), dtype=np.complex128)
    return -1j * params.alpha * SQRT_PI * s / k**3


def _log_integral_on(params: PlasmaParams, grid: SpectralGrid) -> complex:
    k = grid.nodes
    tracker = BranchTracker.track(params, k)
    values = np.log1p(_excess(k, params)).real + 1j * tracker.phase
    # ln|L/k^2| = ln|L| - 2 ln k; the logarithm is integrated exactly on the
    # first panel and the smooth remainder by the grid rule
    a = grid.panel_map.first_panel_end
    first = k < a
    values[first] = np.log(np.abs(np.asarray(dispersion_L(k[first], params)))) + (
        1j * tracker.phase[first]
    )
    return grid.integrate(values) - 2.0 * (a * math.log(a) - a)


def log_integral(
    params: PlasmaParams,
    grid: Optional[SpectralGrid] = None,
    refinements: int = BRANCH_REFINEMENTS,
) -> complex:
    """int_0^inf ln(L(k) / k**2) dk on the continuous branch, ln(1) = 0 at k = inf."""
    grid = grid or build_grid(grid_spec_for(params))
    for attempt in range(refinements + 1):
        try:
            return _log_integral_on(params, grid)
        except BranchDiscontinuityError:
            if attempt == refinements:
                raise
            logger.warning(
                "refining grid for branch tracking (attempt %d, alpha=%.4g)",
                attempt + 1,
                params.alpha,
            )
            grid = grid.refined()
    raise AssertionError("unreachable")


def log_integral_by_parts(params: PlasmaParams, tol: float = 1e-11) -> complex:
    """Branch-free form -int_0^inf (k L'(k) / L(k) - 2) dk of the same integral."""

    def integrand(k: float) -> complex:
        if k == 0.0:
            return -2.0
        value = complex(dispersion_L(k, params))
        return k * complex(dispersion_L_derivative(k, params)) / value - 2.0

    result = integrate_semi_infinite(
        integrand, tol=tol, split=max(characteristic_scales(params))
    )
    if not result.converged:
        raise QuadratureError(
            "integrated-by-parts log integral did not converge", estimate=-result.value
        )
    return -result.value


def impedance_diffuse(
    params: PlasmaParams, grid: Optional[SpectralGrid] = None
) -> complex:
    integral = log_integral(params, grid)
    if integral == 0:
        raise QuadratureError("log integral vanished", estimate=integral)
    return -(math.pi**2) / integral
