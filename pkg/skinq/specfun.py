"""Complex special functions behind the dispersion function and the kernel.

Only two functions are provided: the scaled complementary error function
S(a) = exp(a**2) * erfc(a) on the right half-plane, and the exponential
integral E1(z) on the principal branch (together with its scaled form
exp(z) * E1(z)).

E1 is evaluated by region:

* power series with compensated summation when |z| <= 1, or when the
  cancellation factor exp(|z| + Re z) stays below exp(3) (this covers the
  wedge around the negative real axis, where the terms barely alternate);
* asymptotic expansion, truncated at its smallest term, when |z| >= 40;
* modified Lentz continued fraction everywhere else.

The crossover radii were picked so that every region loses at most about
one decimal digit to cancellation or truncation.
"""
import cmath
import math
from typing import Callable, List, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    SpecialFunctionOverflow,
)

ComplexResult = Union[complex, NDArray[np.complex128]]

EULER_GAMMA = 0.57721566490153286061
SERIES_RADIUS = 1.0
ASYMPTOTIC_RADIUS = 40.0
SERIES_LOSS_EXPONENT = 3.0
SERIES_MAX_TERMS = 600
CF_MAX_ITER = 20000

_EPS = float(np.finfo(float).eps)
_TINY = 1e-300


def scaled_erfc(a: ArrayLike) -> ComplexResult:
    """S(a) = exp(a**2) * erfc(a) for Re(a) > 0.

    Satisfies  int_0^inf exp(-t**2) / (t**2 + a**2) dt = pi / (2 a) * S(a).
    """
    arr = np.asarray(a, dtype=np.complex128)
    if np.any(arr.real <= 0.0):
        raise DomainError("scaled_erfc requires Re(a) > 0")
    out = np.asarray(special.erfcx(arr), dtype=np.complex128)
    if not np.all(np.isfinite(out)):
        raise SpecialFunctionOverflow("scaled_erfc is not representable")
    if arr.ndim == 0:
        return complex(out)
    return out


def _check_e1_domain(z: complex) -> None:
    if z == 0:
        raise DomainError("E1 is singular at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise BranchCutError(f"E1 argument {z} lies on the branch cut")


def _use_series(z: complex) -> bool:
    r = abs(z)
    if r >= ASYMPTOTIC_RADIUS:
        return False
    return r <= SERIES_RADIUS or r + z.real <= SERIES_LOSS_EXPONENT


def _e1_series(z: complex) -> complex:
    # E1(z) = -gamma - ln z - sum_{n>=1} (-z)^n / (n n!)
    log_z = cmath.log(z)
    re_parts: List[float] = [-EULER_GAMMA, -log_z.real]
    im_parts: List[float] = [-log_z.imag]
    power = 1.0 + 0.0j
    acc = 0.0j
    r = abs(z)
    for n in range(1, SERIES_MAX_TERMS + 1):
        power *= -z / n
        term = -power / n
        re_parts.append(term.real)
        im_parts.append(term.imag)
        acc += term
        if n > r and abs(term) <= 0.25 * _EPS * max(abs(acc), abs(log_z), 1.0):
            return complex(math.fsum(re_parts), math.fsum(im_parts))
    raise ConvergenceError(f"E1 power series did not converge at z = {z}")


def _scaled_e1_asymptotic(z: complex) -> complex:
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(1, int(abs(z)) + 2):
        nxt = term * (-n / z)
        if abs(nxt) >= abs(term):
            break
        term = nxt
        total += term
        if abs(term) <= 0.5 * _EPS * abs(total):
            break
    return total / z


def _scaled_e1_continued_fraction(z: complex) -> complex:
    # exp(z) E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
    b = z + 1.0
    c = complex(1.0 / _TINY)
    d = 1.0 / b
    h = d
    for i in range(1, CF_MAX_ITER + 1):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = complex(_TINY)
        c = b + an / c
        if abs(c) < _TINY:
            c = complex(_TINY)
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) <= _EPS:
            return h
    raise ConvergenceError(f"E1 continued fraction did not converge at z = {z}")


def _scaled_e1_scalar(z: complex) -> complex:
    _check_e1_domain(z)
    if abs(z) >= ASYMPTOTIC_RADIUS:
        return _scaled_e1_asymptotic(z)
    if _use_series(z):
        return cmath.exp(z) * _e1_series(z)
    return _scaled_e1_continued_fraction(z)


def _e1_scalar(z: complex) -> complex:
    _check_e1_domain(z)
    if _use_series(z):
        return _e1_series(z)
    scaled = _scaled_e1_scalar(z)
    try:
        value = cmath.exp(-z) * scaled
    except OverflowError as e:
        raise SpecialFunctionOverflow(f"E1({z}) overflows: {e}") from e
    if not cmath.isfinite(value):
        raise SpecialFunctionOverflow(f"E1({z}) is not representable")
    return value


def _apply(fn: Callable[[complex], complex], z: ArrayLike) -> ComplexResult:
    arr = np.asarray(z, dtype=np.complex128)
    if arr.ndim == 0:
        return fn(complex(arr))
    out = np.empty(arr.shape, dtype=np.complex128)
    for idx, value in np.ndenumerate(arr):
        out[idx] = fn(complex(value))
    return out


def exp_e1(z: ArrayLike) -> ComplexResult:
    """Principal-branch exponential integral E1(z) = int_z^inf e^-s / s ds."""
    return _apply(_e1_scalar, z)


def scaled_exp_e1(z: ArrayLike) -> ComplexResult:
    """exp(z) * E1(z), finite wherever E1 itself would over- or underflow."""
    return _apply(_scaled_e1_scalar, z)
