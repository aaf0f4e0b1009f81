"""Problem parameters, the dispersion function L(k) and the collision kernel.

All quantities are dimensionless: wavenumbers in units of 1/l (l the mean
free path), z0 = 1 - i omega/nu, alpha = 2 (l / delta)**2.
"""
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import constants

from .errors import InvalidParameterError
from .quadrature import GridSpec
from .specfun import ComplexResult, scaled_erfc, scaled_exp_e1

SQRT_PI = math.sqrt(math.pi)

COUPLING_CONSTANTS: Dict[str, complex] = {
    "derived": -1j / (math.pi * SQRT_PI),
    "printed": -2j / (math.pi * SQRT_PI),
    "opposite": 1j / (math.pi * SQRT_PI),
}
DEFAULT_COUPLING = "derived"

# relative width |k1**2 - k2**2| / max(k1**2, k2**2) routed to the diagonal form
DIAGONAL_BAND = 1e-6
# |z0**2 / k**2| beyond which the diagonal kernel uses its asymptotic series
DIAGONAL_ASYMPTOTIC = 40.0
# |z0 / k| beyond which dS/da uses its asymptotic series
DERIVATIVE_ASYMPTOTIC = 50.0
# log-spaced samples used to locate the minimum of |L(k)|
MINIMUM_SEARCH_SAMPLES = 400


@dataclass(frozen=True)
class PlasmaParams:
    omega_over_nu: float
    alpha: float
    q: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega_over_nu) and self.omega_over_nu >= 0.0):
            raise InvalidParameterError(
                f"omega/nu must be finite and >= 0, got {self.omega_over_nu}"
            )
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise InvalidParameterError(f"alpha must be > 0, got {self.alpha}")
        if not 0.0 <= self.q <= 1.0:
            raise InvalidParameterError(f"q must lie in [0, 1], got {self.q}")

    @property
    def z0(self) -> complex:
        return complex(1.0, -self.omega_over_nu)

    def with_q(self, q: float) -> "PlasmaParams":
        return replace(self, q=q)


def coupling_constant(name: str = DEFAULT_COUPLING) -> complex:
    try:
        return COUPLING_CONSTANTS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown coupling '{name}', expected one of {sorted(COUPLING_CONSTANTS)}"
        ) from None


def _as_wavenumbers(k: ArrayLike) -> NDArray[np.float64]:
    arr = np.abs(np.asarray(k, dtype=np.float64))
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError("wavenumbers must be finite")
    return arr


def _result(arr: NDArray[np.complex128]) -> ComplexResult:
    if arr.ndim == 0:
        return complex(arr)
    return arr


def dispersion_L(k: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """L(k) = k**2 - i alpha sqrt(pi) S(z0 / k) / k, even in k.

    L(0) is the limit -i alpha / z0.
    """
    kk = _as_wavenumbers(k)
    z0 = params.z0
    out = np.full(kk.shape, -1j * params.alpha / z0, dtype=np.complex128)
    mask = kk > 0.0
    if np.any(mask):
        km = kk[mask]
        s = np.asarray(scaled_erfc(z0 / km), dtype=np.complex128)
        out[mask] = km**2 - 1j * params.alpha * SQRT_PI * s / km
    return _result(out)


def _scaled_erfc_derivative(a: NDArray[np.complex128]) -> NDArray[np.complex128]:
    out = np.empty(a.shape, dtype=np.complex128)
    far = np.abs(a) >= DERIVATIVE_ASYMPTOTIC
    near = ~far
    if np.any(near):
        an = a[near]
        s = np.asarray(scaled_erfc(an), dtype=np.complex128)
        out[near] = 2.0 * an * s - 2.0 / SQRT_PI
    if np.any(far):
        inv2 = 1.0 / a[far] ** 2
        series = inv2 * (
            -1.0 + inv2 * (1.5 + inv2 * (-3.75 + inv2 * (13.125 - inv2 * 59.0625)))
        )
        out[far] = series / SQRT_PI
    return out


def dispersion_L_derivative(k: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """dL/dk for k > 0 (zero at k = 0)."""
    kk = _as_wavenumbers(k)
    z0 = params.z0
    out = np.zeros(kk.shape, dtype=np.complex128)
    mask = kk > 0.0
    if np.any(mask):
        km = kk[mask]
        a = z0 / km
        s = np.asarray(scaled_erfc(a), dtype=np.complex128)
        ds = _scaled_erfc_derivative(np.asarray(a, dtype=np.complex128))
        out[mask] = 2.0 * km + 1j * params.alpha * SQRT_PI * (
            ds * z0 / km**3 + s / km**2
        )
    return _result(out)


def lambda_form(tau: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """1 - i alpha sqrt(pi) tau**3 S(z0 tau), so that L(k) = k**2 lambda(1/k)."""
    tt = _as_wavenumbers(tau)
    out = np.ones(tt.shape, dtype=np.complex128)
    mask = tt > 0.0
    if np.any(mask):
        tm = tt[mask]
        s = np.asarray(scaled_erfc(params.z0 * tm), dtype=np.complex128)
        out[mask] = 1.0 - 1j * params.alpha * SQRT_PI * tm**3 * s
    return _result(out)


def _scaled_e1_of_inverse_square(
    kk: NDArray[np.float64], params: PlasmaParams
) -> NDArray[np.complex128]:
    # g(z0**2 / k**2) with g(x) = exp(x) E1(x); g -> 0 as k -> 0
    g = np.zeros(kk.shape, dtype=np.complex128)
    mask = kk > 0.0
    if np.any(mask):
        g[mask] = scaled_exp_e1(params.z0**2 / kk[mask] ** 2)
    return g


def kernel_J0(k: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """int_0^inf exp(-u) / (z0**2 + k**2 u) du = exp(x) E1(x) / k**2, x = z0**2/k**2."""
    kk = _as_wavenumbers(k)
    z0sq = params.z0**2
    out = np.full(kk.shape, 1.0 / z0sq, dtype=np.complex128)
    mask = kk > 0.0
    if np.any(mask):
        km = kk[mask]
        x = z0sq / km**2
        out[mask] = np.asarray(scaled_exp_e1(x), dtype=np.complex128) / km**2
    return _result(out)


def _diag_scalar(k: float, params: PlasmaParams) -> complex:
    z0sq = params.z0**2
    if k == 0.0:
        return 1.0 / z0sq**2
    x = z0sq / (k * k)
    if abs(x) >= DIAGONAL_ASYMPTOTIC:
        # (1/x - exp(x) E1(x)) / k**4 = z0**-4 sum_{n>=1} (-1)**(n+1) n! / x**(n-1)
        total = 0.0j
        term = 1.0 + 0.0j
        n = 1
        while True:
            total += term
            nxt = term * (-(n + 1) / x)
            if abs(nxt) >= abs(term) or abs(nxt) <= 1e-17 * abs(total):
                break
            term = nxt
            n += 1
        return total / z0sq**2
    g = complex(scaled_exp_e1(x))
    return (1.0 / x - g) / k**4


def kernel_J_diag(k: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """int_0^inf exp(-u) / (z0**2 + k**2 u)**2 du."""
    kk = _as_wavenumbers(k)
    out = np.empty(kk.shape, dtype=np.complex128)
    for idx, value in np.ndenumerate(kk):
        out[idx] = _diag_scalar(float(value), params)
    return _result(out)


def _pair_from_g(
    s1: NDArray[np.float64],
    s2: NDArray[np.float64],
    g1: NDArray[np.complex128],
    g2: NDArray[np.complex128],
    params: PlasmaParams,
) -> NDArray[np.complex128]:
    """Partial-fraction kernel from squared wavenumbers and g values.

    Pairs inside the diagonal band are replaced by the diagonal kernel at the
    root-mean-square wavenumber.
    """
    z0sq = params.z0**2
    diff = s2 - s1
    band = np.abs(diff) <= DIAGONAL_BAND * np.maximum(s1, s2)
    safe = np.where(band, 1.0, diff)
    out = (g2 - g1) / (z0sq * safe)
    if np.any(band):
        idx = np.nonzero(band)
        mid = np.sqrt(0.5 * (s1[idx] + s2[idx]))
        out[idx] = np.asarray(kernel_J_diag(mid, params), dtype=np.complex128).reshape(
            mid.shape
        )
    return out


def kernel_J(k1: ArrayLike, k2: ArrayLike, params: PlasmaParams) -> ComplexResult:
    """K(k1, k2) = int_0^inf exp(-u) du / ((z0**2 + k1**2 u)(z0**2 + k2**2 u)).

    Evaluated as (g(x2) - g(x1)) / (z0**2 (k2**2 - k1**2)) with
    g(x) = exp(x) E1(x), x = z0**2 / k**2.
    """
    a, b = np.broadcast_arrays(_as_wavenumbers(k1), _as_wavenumbers(k2))
    a = np.array(a, dtype=np.float64).reshape(-1)
    b = np.array(b, dtype=np.float64).reshape(-1)
    g1 = _scaled_e1_of_inverse_square(a, params)
    g2 = _scaled_e1_of_inverse_square(b, params)
    out = _pair_from_g(a**2, b**2, g1, g2, params)
    shape = np.broadcast(np.asarray(k1), np.asarray(k2)).shape
    return _result(out.reshape(shape))


def kernel_matrix(
    nodes: NDArray[np.float64], params: PlasmaParams
) -> NDArray[np.complex128]:
    """K(k_i, k_j) for every pair of nodes; g is evaluated once per node."""
    kk = _as_wavenumbers(nodes)
    s = kk**2
    g = _scaled_e1_of_inverse_square(kk, params)
    s1, s2 = np.meshgrid(s, s, indexing="ij")
    g1, g2 = np.meshgrid(g, g, indexing="ij")
    out = _pair_from_g(s1.ravel(), s2.ravel(), g1.ravel(), g2.ravel(), params)
    return out.reshape(s1.shape)


def characteristic_scales(params: PlasmaParams) -> List[float]:
    """Wavenumbers where L(k) changes character.

    |z0| separates the collisional and the collisionless response,
    (alpha sqrt(pi))**(1/3) is the anomalous penetration scale and
    sqrt(alpha / |z0|) the local one.
    """
    return [
        abs(params.z0),
        (params.alpha * SQRT_PI) ** (1.0 / 3.0),
        math.sqrt(params.alpha / abs(params.z0)),
    ]


def dispersion_minimum(params: PlasmaParams) -> Optional[float]:
    """Wavenumber of the interior minimum of |L(k)|, or None if |L| is monotone.

    The search covers a decade beyond the characteristic scales on both
    sides.  A minimum only appears once the anomalous term dominates, where
    1/L develops a sharp peak.
    """
    scales = characteristic_scales(params)
    k = np.geomspace(0.1 * min(scales), 10.0 * max(scales), MINIMUM_SEARCH_SAMPLES)
    magnitude = np.abs(np.asarray(dispersion_L(k, params)))
    i = int(np.argmin(magnitude))
    if i == 0 or i == k.size - 1:
        return None
    return float(k[i])


def grid_spec_for(
    params: PlasmaParams, order: int = 16, tail_order: int = 32, ratio: float = 1.5
) -> GridSpec:
    scales = characteristic_scales(params)
    first_break = 1e-3 * min(scales)
    split = 20.0 * max(scales)
    panels = max(1, math.ceil(math.log(split / first_break) / math.log(ratio)))
    return GridSpec(
        panels=panels,
        order=order,
        split=split,
        first_break=first_break,
        tail_order=tail_order,
        cluster=dispersion_minimum(params),
    )


def reduced_impedance(zeta: complex) -> complex:
    """i zeta: the physical impedance divided by the real prefactor 4 omega l / c**2."""
    return 1j * zeta


def physical_prefactor(omega: float, mean_free_path: float) -> float:
    """4 omega l / c**2 in Gaussian units (s/cm), omega in rad/s and l in cm."""
    if omega <= 0.0 or mean_free_path <= 0.0:
        raise InvalidParameterError("omega and the mean free path must be positive")
    c_cgs = constants.c * 100.0
    return 4.0 * omega * mean_free_path / c_cgs**2
