"""Nystrom evaluation of the series in powers of (1 - q).

The field spectrum solves

    E(k) = E0(k) + (1 - q) * c * alpha * z0**2 / L(k) * int_0^inf K(k, k1) E(k1) dk1

with E0 = -2 / L.  On a SpectralGrid the integral operator becomes the dense
matrix M of `KernelMatrix`; the n-th series term is E_n = M^n E0 and its
impedance contribution is the grid sum of E_n.
"""
import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import (
    DimensionMismatchError,
    IntegrandError,
    InvalidParameterError,
    QuadratureError,
    SingularSystemError,
)
from .kinetic import (
    DEFAULT_COUPLING,
    PlasmaParams,
    coupling_constant,
    dispersion_L,
    grid_spec_for,
    kernel_matrix,
)
from .log import get_logger
from .quadrature import SpectralGrid, build_grid, fourier_integral

logger = get_logger(__name__)

Spectrum = NDArray[np.complex128]

MAX_CONDITION = 1e12
FIELD_TOLERANCE = 1e-11
GRADIENT_STEP = 1e-3


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    grid: SpectralGrid
    entries: NDArray[np.complex128]
    params: PlasmaParams
    coupling: str = DEFAULT_COUPLING

    @classmethod
    def build(
        cls,
        grid: SpectralGrid,
        params: PlasmaParams,
        coupling: str = DEFAULT_COUPLING,
    ) -> "KernelMatrix":
        """M[i, j] = c * alpha * z0**2 * w_j * K(k_i, k_j) / L(k_i)."""
        scale = coupling_constant(coupling) * params.alpha * params.z0**2
        dispersion = np.asarray(dispersion_L(grid.nodes, params))
        kernel = kernel_matrix(grid.nodes, params)
        entries = scale * kernel * grid.weights[None, :] / dispersion[:, None]
        if not np.all(np.isfinite(entries)):
            raise IntegrandError("kernel matrix has non-finite entries")
        entries.setflags(write=False)
        logger.debug(
            "kernel matrix %dx%d for alpha=%.4g, omega/nu=%.4g",
            grid.size,
            grid.size,
            params.alpha,
            params.omega_over_nu,
        )
        return cls(grid, entries, params, coupling)

    @property
    def size(self) -> int:
        return self.grid.size


def _check_spectrum(values: ArrayLike, grid: SpectralGrid) -> Spectrum:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape != grid.nodes.shape:
        raise DimensionMismatchError(
            f"spectrum has shape {arr.shape}, grid has {grid.size} nodes"
        )
    return arr


def build_E0(grid: SpectralGrid, params: PlasmaParams) -> Spectrum:
    return -2.0 / np.asarray(dispersion_L(grid.nodes, params), dtype=np.complex128)


def iterate_En(prev: ArrayLike, kernel: KernelMatrix) -> Spectrum:
    vec = _check_spectrum(prev, kernel.grid)
    # explicit row sums keep the summation order fixed across BLAS builds
    return (kernel.entries * vec[None, :]).sum(axis=1)


def impedance_term(En: ArrayLike, grid: SpectralGrid) -> complex:
    return grid.integrate(_check_spectrum(En, grid))


@dataclass(frozen=True, eq=False)
class ImpedanceSeries:
    terms: Tuple[complex, ...]
    q: float
    partial_sums: Tuple[complex, ...]
    tail_estimate: float
    diverging: bool
    spectra: Tuple[Spectrum, ...]
    grid: SpectralGrid

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def total(self) -> complex:
        return self.partial_sums[-1]

    def spectrum(self) -> Spectrum:
        """sum_n (1 - q)**n E_n, the field spectrum of the truncated series."""
        out = np.zeros(self.grid.size, dtype=np.complex128)
        for n, spectrum in enumerate(self.spectra):
            out = out + (1.0 - self.q) ** n * spectrum
        return out

    def with_q(self, q: float) -> "ImpedanceSeries":
        """Re-sum the same terms for another specularity coefficient."""
        return summarize(self.terms, self.spectra, self.grid, q)


def summarize(
    terms: Sequence[complex],
    spectra: Sequence[Spectrum],
    grid: SpectralGrid,
    q: float,
) -> ImpedanceSeries:
    if not 0.0 <= q <= 1.0:
        raise InvalidParameterError(f"q must lie in [0, 1], got {q}")
    if not terms:
        raise InvalidParameterError("at least the zero-order term is required")
    p = 1.0 - q
    partial: List[complex] = [terms[0]]
    for n in range(1, len(terms)):
        partial.append(partial[-1] + p**n * terms[n])

    ratios: List[float] = []
    for n in range(1, len(terms)):
        prev = abs(terms[n - 1])
        ratios.append(p * abs(terms[n]) / prev if prev > 0 else math.inf)

    order = len(terms) - 1
    if q == 1.0:
        tail = 0.0
    elif not ratios or ratios[-1] >= 1.0:
        tail = math.inf
    else:
        tail = abs(terms[-1]) * p**order / (1.0 - ratios[-1])
    window = ratios[-min(2, len(ratios)) :] if ratios else []
    diverging = bool(window) and all(r >= 1.0 for r in window)
    if diverging:
        logger.warning(
            "series looks divergent at q=%.3g: last ratios %s",
            q,
            ", ".join(f"{r:.3g}" for r in window),
        )
    return ImpedanceSeries(
        terms=tuple(complex(t) for t in terms),
        q=q,
        partial_sums=tuple(partial),
        tail_estimate=tail,
        diverging=diverging,
        spectra=tuple(spectra),
        grid=grid,
    )


def sum_series(
    params: PlasmaParams,
    N: int,
    grid: Optional[SpectralGrid] = None,
    coupling: str = DEFAULT_COUPLING,
) -> ImpedanceSeries:
    if N < 0:
        raise InvalidParameterError(f"series order must be >= 0, got {N}")
    grid = grid or build_grid(grid_spec_for(params))
    current = build_E0(grid, params)
    spectra = [current]
    terms = [impedance_term(current, grid)]
    if N > 0:
        kernel = KernelMatrix.build(grid, params, coupling)
        for _ in range(N):
            current = iterate_En(current, kernel)
            spectra.append(current)
            terms.append(impedance_term(current, grid))
    return summarize(terms, spectra, grid, params.q)


@dataclass(frozen=True, eq=False)
class DirectSolution:
    spectrum: Spectrum
    zeta: complex
    condition: float


def solve_direct(
    params: PlasmaParams,
    grid: Optional[SpectralGrid] = None,
    coupling: str = DEFAULT_COUPLING,
) -> DirectSolution:
    """Solve (I - (1 - q) M) E = E0 on the grid."""
    grid = grid or build_grid(grid_spec_for(params))
    rhs = build_E0(grid, params)
    if params.q == 1.0:
        return DirectSolution(rhs, impedance_term(rhs, grid), 1.0)
    kernel = KernelMatrix.build(grid, params, coupling)
    system = np.eye(grid.size, dtype=np.complex128) - (1.0 - params.q) * kernel.entries
    condition = float(np.linalg.cond(system))
    if not math.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularSystemError(
            f"system is ill-conditioned (cond = {condition:.3e}) "
            f"at alpha={params.alpha:.4g}, q={params.q:.3g}"
        )
    logger.debug("direct solve: cond = %.3e (n=%d)", condition, grid.size)
    spectrum = np.linalg.solve(system, rhs)
    return DirectSolution(spectrum, impedance_term(spectrum, grid), condition)


@dataclass(frozen=True, eq=False)
class FieldProfile:
    x_nodes: NDArray[np.float64]
    e_values: NDArray[np.complex128]
    e_s_prime: float = 1.0
    converged: bool = True


def field_profile(
    E: ArrayLike,
    grid: SpectralGrid,
    x_nodes: ArrayLike,
    abs_tol: float = FIELD_TOLERANCE,
) -> FieldProfile:
    """e(x) = (1/pi) int_0^inf E(k) cos(kx) dk.

    No rescaling is applied: E0 = -2 / L already fixes e'(0+) = 1, and the
    higher terms do not change the surface gradient.
    """
    spectrum = _check_spectrum(E, grid)
    xs = np.asarray(x_nodes, dtype=np.float64).reshape(-1)
    if np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise InvalidParameterError("depths must be finite and non-negative")
    interp = grid.interpolant(spectrum)
    values = np.empty(xs.shape, dtype=np.complex128)
    converged = True
    for i, x in enumerate(xs):
        result = fourier_integral(interp, grid.panel_map, float(x), "cos", abs_tol)
        values[i] = result.value / math.pi
        converged = converged and result.converged
    if not converged:
        logger.warning("field profile is not fully converged to %.1e", abs_tol)
    return FieldProfile(xs, values, 1.0, converged)


def surface_gradient(
    E: ArrayLike,
    grid: SpectralGrid,
    h: float = GRADIENT_STEP,
    abs_tol: float = 1e-12,
) -> complex:
    """One-sided second-order difference estimate of e'(0+)."""
    if not h > 0:
        raise InvalidParameterError(f"step must be positive, got {h}")
    profile = field_profile(E, grid, [0.0, h, 2.0 * h], abs_tol)
    e0, e1, e2 = profile.e_values
    return complex((-3.0 * e0 + 4.0 * e1 - e2) / (2.0 * h))


def boundary_distribution(
    E: ArrayLike, grid: SpectralGrid, params: PlasmaParams, mu: float
) -> complex:
    """h_b(mu) = (z0 / pi) int_0^inf E(k) / (z0**2 + k**2 mu**2) dk.

    This is the distribution of electrons arriving at the surface (mu < 0)
    at velocity -|mu|; the reflected ones (mu > 0) carry q times it.
    """
    spectrum = _check_spectrum(E, grid)
    z0 = params.z0
    weights = z0 / (z0**2 + grid.nodes**2 * mu**2)
    return grid.integrate(spectrum * weights) / math.pi


def distribution_function(
    E: ArrayLike,
    grid: SpectralGrid,
    params: PlasmaParams,
    x: float,
    mu: float,
    abs_tol: float = FIELD_TOLERANCE,
) -> complex:
    """Distribution h(x, mu) of the perturbed electrons at depth x >= 0.

    The specular part is the Fourier integral of
    E(k) (z0 cos kx + k mu sin kx) / (z0**2 + k**2 mu**2); for mu > 0 the
    diffusely scattered fraction (1 - q) of the incoming distribution is
    removed along the characteristic exp(-z0 x / mu).
    """
    if mu == 0.0 or not math.isfinite(mu):
        raise InvalidParameterError("mu must be finite and non-zero")
    if x < 0.0 or not math.isfinite(x):
        raise InvalidParameterError(f"depth must be finite and >= 0, got {x}")
    spectrum = _check_spectrum(E, grid)
    z0 = params.z0
    incoming = boundary_distribution(spectrum, grid, params, mu)
    if x == 0.0:
        specular = incoming
    else:
        interp = grid.interpolant(spectrum)

        def even_part(k: float) -> complex:
            return interp(k) * z0 / (z0 * z0 + k * k * mu * mu)

        def odd_part(k: float) -> complex:
            return interp(k) * k * mu / (z0 * z0 + k * k * mu * mu)

        cos_part = fourier_integral(even_part, grid.panel_map, x, "cos", abs_tol)
        sin_part = fourier_integral(odd_part, grid.panel_map, x, "sin", abs_tol)
        specular = (cos_part.value + sin_part.value) / math.pi
        if not (cos_part.converged and sin_part.converged):
            raise QuadratureError(
                f"distribution function missed tolerance at x={x}, mu={mu}",
                estimate=specular,
            )
    if mu > 0.0:
        specular -= (1.0 - params.q) * incoming * cmath.exp(-z0 * x / mu)
    return complex(specular)


def solution_for(
    params: PlasmaParams,
    N: Optional[int] = None,
    grid: Optional[SpectralGrid] = None,
    coupling: str = DEFAULT_COUPLING,
) -> Tuple[Spectrum, SpectralGrid]:
    """Field spectrum from the series (order N) or, if N is None, the direct solve."""
    grid = grid or build_grid(grid_spec_for(params))
    if N is None:
        return solve_direct(params, grid, coupling).spectrum, grid
    return sum_series(params, N, grid, coupling).spectrum(), grid

