"""Reference integrals computed with plain scipy, independent of skinq."""
import math
from typing import Callable

from scipy import integrate


def cquad(
    f: Callable[[float], complex], a: float = 0.0, b: float = math.inf
) -> complex:
    opts = {"epsabs": 0.0, "epsrel": 1e-13, "limit": 500}
    re = integrate.quad(lambda t: f(t).real, a, b, **opts)[0]
    im = integrate.quad(lambda t: f(t).imag, a, b, **opts)[0]
    return complex(re, im)


def rel_err(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)
