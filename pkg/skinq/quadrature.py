"""Quadrature on the semi-infinite wavenumber axis.

Two tools live here.  `build_grid` produces a fixed composite
Gauss-Legendre rule (geometric panels on [0, K] plus a mapped tail on
(K, inf)) that the Nystrom recursion and every grid-based integral share.
`integrate_semi_infinite` and `fourier_integral` wrap QUADPACK through
scipy for adaptive cross-checks and for the oscillatory cosine/sine
transforms needed to rebuild fields in x-space.
"""
import functools
import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray
from scipy import integrate
from scipy.interpolate import BarycentricInterpolator

from .errors import GridConfigError, IntegrandError
from .log import get_logger

logger = get_logger(__name__)

ComplexFunction = Callable[[float], complex]
RealFunction = Callable[[float], float]

TAIL_MAPS = ("algebraic", "logarithmic")
FOURIER_KINDS = ("cos", "sin")
QUAD_LIMIT = 400
QAWF_CYCLES = 400


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    evaluations: int
    converged: bool

    @property
    def relative_error(self) -> float:
        scale = abs(self.value)
        return self.error / scale if scale > 0 else self.error


@dataclass(frozen=True)
class GridSpec:
    """Panel/tail configuration of a SpectralGrid.

    The finite part is one panel on [0, first_break] followed by `panels`
    geometrically growing panels up to `split`.  Each carries `order`
    Gauss-Legendre nodes.  (split, inf) is mapped to t in (0, 1] by
    k = split / t ("algebraic", for integrands decaying like a power) or
    k = split - ln t ("logarithmic", for exponentially decaying ones) and
    integrated with `tail_order` nodes.  Panels overlapping
    [cluster / 2, 2 * cluster] are split `cluster_refine` ways.
    """

    panels: int = 24
    order: int = 16
    split: float = 16.0
    first_break: float = 1e-3
    tail_order: int = 32
    tail_map: str = "algebraic"
    cluster: Optional[float] = None
    cluster_refine: int = 2

    def validate(self) -> None:
        if self.panels < 1:
            raise GridConfigError(f"panel count must be >= 1, got {self.panels}")
        if self.order < 1 or self.tail_order < 1:
            raise GridConfigError(
                f"quadrature order must be positive, got {self.order}/{self.tail_order}"
            )
        if not (0.0 < self.first_break < self.split) or not math.isfinite(self.split):
            raise GridConfigError(
                f"need 0 < first_break < split, got {self.first_break}, {self.split}"
            )
        if self.tail_map not in TAIL_MAPS:
            raise GridConfigError(f"unknown tail map '{self.tail_map}'")
        if self.cluster is not None and not self.cluster > 0.0:
            raise GridConfigError(f"cluster point must be positive, got {self.cluster}")
        if self.cluster_refine < 1:
            raise GridConfigError("cluster_refine must be >= 1")

    def doubled(self) -> "GridSpec":
        return replace(self, order=2 * self.order, tail_order=2 * self.tail_order)


@dataclass(frozen=True)
class PanelMap:
    breaks: Tuple[float, ...]
    order: int
    split: float
    tail_map: str
    tail_order: int

    @property
    def panel_count(self) -> int:
        return len(self.breaks) - 1

    @property
    def first_panel_end(self) -> float:
        return self.breaks[1]

    def tail_variable(self, k: NDArray[np.float64]) -> NDArray[np.float64]:
        if self.tail_map == "algebraic":
            return self.split / k
        return np.exp(self.split - k)


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    panel_map: PanelMap
    spec: GridSpec

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def finite_size(self) -> int:
        return self.panel_map.panel_count * self.panel_map.order

    def integrate(self, values: NDArray[np.complex128]) -> complex:
        # np.sum uses a fixed pairwise order
        return complex(np.sum(self.weights * values))

    def interpolant(self, values: NDArray[np.complex128]) -> "GridInterpolant":
        return GridInterpolant(self, values)

    def refined(self) -> "SpectralGrid":
        return build_grid(self.spec.doubled())


class GridInterpolant:
    """Piecewise Lagrange interpolant of grid values, one polynomial per panel.

    In the algebraic tail the product value * k**2 is interpolated in the
    mapped variable t, so the -2/k**2 decay of the field spectrum is exact.
    """

    def __init__(self, grid: SpectralGrid, values: NDArray[np.complex128]):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != grid.nodes.shape:
            raise GridConfigError(
                f"expected {grid.size} grid values, got shape {values.shape}"
            )
        pm = grid.panel_map
        self._breaks = np.asarray(pm.breaks)
        self._split = pm.split
        self._tail_map = pm.tail_map
        o = pm.order
        self._panels: List[BarycentricInterpolator] = []
        for i in range(pm.panel_count):
            sl = slice(i * o, (i + 1) * o)
            self._panels.append(BarycentricInterpolator(grid.nodes[sl], values[sl]))
        k_tail = grid.nodes[grid.finite_size :]
        v_tail = values[grid.finite_size :]
        if pm.tail_map == "algebraic":
            v_tail = v_tail * k_tail**2
        self._tail = BarycentricInterpolator(pm.tail_variable(k_tail), v_tail)

    def __call__(self, k: float) -> complex:
        if k >= self._split:
            if self._tail_map == "algebraic":
                return complex(self._tail(self._split / k)) / (k * k)
            return complex(self._tail(math.exp(self._split - k)))
        idx = int(np.searchsorted(self._breaks, k, side="right")) - 1
        idx = min(max(idx, 0), len(self._panels) - 1)
        return complex(self._panels[idx](k))


@functools.lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    x, w = leggauss(order)
    return x, w


def _panel_breaks(spec: GridSpec) -> List[float]:
    geometric = np.geomspace(spec.first_break, spec.split, spec.panels + 1)
    breaks = [0.0] + [float(b) for b in geometric]
    breaks[-1] = spec.split
    if spec.cluster is None or spec.cluster_refine == 1:
        return breaks
    lo, hi = 0.5 * spec.cluster, 2.0 * spec.cluster
    refined = [breaks[0]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b > lo and a < hi:
            if a > 0.0:
                inner = np.geomspace(a, b, spec.cluster_refine + 1)[1:-1]
            else:
                inner = np.linspace(a, b, spec.cluster_refine + 1)[1:-1]
            refined.extend(float(v) for v in inner)
        refined.append(b)
    return refined


def build_grid(spec: Optional[GridSpec] = None) -> SpectralGrid:
    spec = spec or GridSpec()
    spec.validate()
    breaks = _panel_breaks(spec)
    x, w = _gauss_legendre(spec.order)
    nodes: List[NDArray[np.float64]] = []
    weights: List[NDArray[np.float64]] = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + half * x)
        weights.append(half * w)

    xt, wt = _gauss_legendre(spec.tail_order)
    t = 0.5 * (xt + 1.0)
    wt = 0.5 * wt
    if spec.tail_map == "algebraic":
        k_tail = spec.split / t
        w_tail = wt * spec.split / t**2
    else:
        k_tail = spec.split - np.log(t)
        w_tail = wt / t
    # t ascending means k descending
    nodes.append(k_tail[::-1])
    weights.append(w_tail[::-1])

    all_nodes = np.concatenate(nodes)
    all_weights = np.concatenate(weights)
    if not (np.all(np.diff(all_nodes) > 0) and all_nodes[0] > 0):
        raise GridConfigError("grid nodes are not strictly increasing and positive")
    if not np.all(all_weights > 0):
        raise GridConfigError("grid weights must be positive")
    all_nodes.setflags(write=False)
    all_weights.setflags(write=False)

    panel_map = PanelMap(
        breaks=tuple(breaks),
        order=spec.order,
        split=spec.split,
        tail_map=spec.tail_map,
        tail_order=spec.tail_order,
    )
    logger.debug(
        "built grid: %d panels x %d + %d tail nodes (split=%.4g, map=%s)",
        panel_map.panel_count,
        spec.order,
        spec.tail_order,
        spec.split,
        spec.tail_map,
    )
    return SpectralGrid(all_nodes, all_weights, panel_map, spec)


def _memoize(f: ComplexFunction) -> Tuple[ComplexFunction, Dict[float, complex]]:
    cache: Dict[float, complex] = {}

    def wrapped(k: float) -> complex:
        value = cache.get(k)
        if value is None:
            value = complex(f(k))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise IntegrandError(f"integrand is not finite at k = {k}: {value}")
            cache[k] = value
        return value

    return wrapped, cache


def _quad_part(
    fn: RealFunction,
    a: float,
    b: float,
    epsabs: float,
    epsrel: float,
    weight: Optional[str] = None,
    wvar: float = 0.0,
) -> Tuple[float, float, bool]:
    if weight is None:
        out = integrate.quad(
            fn, a, b, epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT, full_output=1
        )
    elif math.isinf(b):
        out = integrate.quad(
            fn,
            a,
            b,
            weight=weight,
            wvar=wvar,
            epsabs=epsabs,
            limlst=QAWF_CYCLES,
            limit=QUAD_LIMIT,
            full_output=1,
        )
    else:
        out = integrate.quad(
            fn,
            a,
            b,
            weight=weight,
            wvar=wvar,
            epsabs=epsabs,
            epsrel=epsrel,
            limit=QUAD_LIMIT,
            full_output=1,
        )
    # quad appends a message only when QUADPACK reports a problem
    return float(out[0]), float(out[1]), len(out) == 3


def _quad_complex(
    f: ComplexFunction,
    pieces: Sequence[Tuple[float, float]],
    epsabs: float,
    epsrel: float,
    weight: Optional[str] = None,
    wvar: float = 0.0,
) -> Tuple[complex, float, bool]:
    value = 0.0j
    error = 0.0
    converged = True
    for a, b in pieces:
        re, re_err, re_ok = _quad_part(
            lambda k: f(k).real, a, b, epsabs, epsrel, weight, wvar
        )
        im, im_err, im_ok = _quad_part(
            lambda k: f(k).imag, a, b, epsabs, epsrel, weight, wvar
        )
        value += complex(re, im)
        error += math.hypot(re_err, im_err)
        converged = converged and re_ok and im_ok
    return value, error, converged


def integrate_semi_infinite(
    f: ComplexFunction, tol: float = 1e-10, split: Optional[float] = None
) -> QuadResult:
    """Adaptive integral of a complex integrand over (0, inf).

    A coarse pass fixes the magnitude of the result so that the real and
    imaginary parts share one absolute target of tol * |result|.  The
    optional `split` separates a finite piece from the QAGI tail.
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    cached, cache = _memoize(f)
    pieces = [(0.0, split), (split, math.inf)] if split else [(0.0, math.inf)]
    rough, _, _ = _quad_complex(cached, pieces, 0.0, max(tol, 1e-4))
    value, error, converged = _quad_complex(
        cached, pieces, 0.5 * tol * abs(rough), tol
    )
    if not converged:
        logger.warning(
            "adaptive quadrature did not reach tol=%.1e (estimate %r, error %.2e)",
            tol,
            value,
            error,
        )
    return QuadResult(value, error, len(cache), converged)


def fourier_integral(
    f: ComplexFunction,
    panel_map: PanelMap,
    x: float,
    kind: str = "cos",
    abs_tol: float = 1e-11,
) -> QuadResult:
    """int_0^inf f(k) cos(kx) dk (or sin) with an absolute tolerance.

    Finite panels go through QAWO, the tail (split, inf) through QAWF, which
    integrates cycle by cycle and extrapolates the partial sums with the
    epsilon algorithm.
    """
    if kind not in FOURIER_KINDS:
        raise ValueError(f"kind must be one of {FOURIER_KINDS}, got '{kind}'")
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0.0 and kind == "sin":
        return QuadResult(0.0j, 0.0, 0, True)
    cached, cache = _memoize(f)
    breaks = panel_map.breaks
    finite = list(zip(breaks[:-1], breaks[1:]))
    per_piece = abs_tol / (len(finite) + 1)
    if x == 0.0:
        value, error, ok_finite = _quad_complex(cached, finite, per_piece, 1e-12)
        tail, tail_err, ok_tail = _quad_complex(
            cached, [(panel_map.split, math.inf)], per_piece, 1e-12
        )
    else:
        value, error, ok_finite = _quad_complex(
            cached, finite, per_piece, 1e-12, kind, x
        )
        tail, tail_err, ok_tail = _quad_complex(
            cached, [(panel_map.split, math.inf)], per_piece, 1e-12, kind, x
        )
    converged = ok_finite and ok_tail
    if not converged:
        logger.warning("oscillatory quadrature missed tolerance at x=%.4g", x)
    return QuadResult(value + tail, error + tail_err, len(cache), converged)
