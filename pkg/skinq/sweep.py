"""Parameter sweeps over alpha for a set of specularity coefficients."""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .errors import ConfigError, SkinError
from .kinetic import (
    COUPLING_CONSTANTS,
    DEFAULT_COUPLING,
    PlasmaParams,
    grid_spec_for,
    reduced_impedance,
)
from .log import get_logger
from .neumann import ImpedanceSeries, sum_series
from .quadrature import build_grid
from .reference import impedance_diffuse, impedance_specular

logger = get_logger(__name__)

STATUS_OK = "OK"
STATUS_DIVERGING = "DIVERGING"
_INTEGER_OPTIONS = ("alpha_count", "max_order", "grid_order", "tail_order", "workers")


@dataclass(frozen=True)
class SweepConfig:
    alpha_min: float = 1e-2
    alpha_max: float = 1e4
    alpha_count: int = 30
    omega_over_nu: float = 1.0
    q_values: Tuple[float, ...] = (0.0,)
    max_order: int = 2
    grid_order: int = 16
    tail_order: int = 32
    tol: float = 1e-10
    output_path: Optional[str] = None
    coupling: str = DEFAULT_COUPLING
    workers: int = 1

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not (math.isfinite(self.alpha_min) and self.alpha_min > 0):
            raise ConfigError(f"alpha_min must be > 0, got {self.alpha_min}")
        if not (math.isfinite(self.alpha_max) and self.alpha_min < self.alpha_max):
            raise ConfigError(
                f"need alpha_min < alpha_max, got {self.alpha_min}, {self.alpha_max}"
            )
        if self.alpha_count < 2:
            raise ConfigError(f"alpha_count must be >= 2, got {self.alpha_count}")
        if not (math.isfinite(self.omega_over_nu) and self.omega_over_nu >= 0):
            raise ConfigError(f"omega_over_nu must be >= 0, got {self.omega_over_nu}")
        if not self.q_values:
            raise ConfigError("q_values must not be empty")
        for q in self.q_values:
            if not 0.0 <= q <= 1.0:
                raise ConfigError(f"q values must lie in [0, 1], got {q}")
        if self.max_order < 0:
            raise ConfigError(f"max_order must be >= 0, got {self.max_order}")
        if self.grid_order < 1 or self.tail_order < 1:
            raise ConfigError("grid orders must be positive")
        if not self.tol > 0:
            raise ConfigError(f"tol must be > 0, got {self.tol}")
        if self.coupling not in COUPLING_CONSTANTS:
            raise ConfigError(f"unknown coupling '{self.coupling}'")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SweepConfig":
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"unknown sweep option(s): {', '.join(unknown)}")
        values: Dict[str, Any] = {}
        try:
            for name, value in data.items():
                if value is None:
                    continue
                if name == "q_values":
                    if isinstance(value, (int, float)):
                        value = [value]
                    values[name] = tuple(float(q) for q in value)
                elif name in _INTEGER_OPTIONS:
                    if isinstance(value, float) and not value.is_integer():
                        raise ValueError(f"{name} must be an integer")
                    values[name] = int(value)
                elif name in ("output_path", "coupling"):
                    values[name] = str(value)
                else:
                    values[name] = float(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid sweep option: {e}") from e
        return cls(**values)

    def alphas(self) -> List[float]:
        grid = np.geomspace(self.alpha_min, self.alpha_max, self.alpha_count)
        return [float(a) for a in grid]


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    omega_over_nu: float
    q: float
    order: Optional[int] = None
    zeta_n: Optional[complex] = None
    partial_sum: Optional[complex] = None
    zeta_ref: Optional[complex] = None
    zeta_dif: Optional[complex] = None
    y1: Optional[float] = None
    y2: Optional[float] = None
    ratio3_re: Optional[float] = None
    ratio3_im: Optional[float] = None
    y1_im: Optional[float] = None
    y2_im: Optional[float] = None
    status: str = STATUS_OK

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


@dataclass(frozen=True)
class FigureRatios:
    """Ratios of physical impedances, real and imaginary parts separately.

    Y1 and Y2 compare the first and second partial sums with the zero-order
    term; ratio3 compares the diffuse with the specular wall.
    """

    y1: Optional[float]
    y2: Optional[float]
    ratio3_re: float
    ratio3_im: float
    y1_im: Optional[float] = None
    y2_im: Optional[float] = None


def _real_ratio(a: complex, b: complex) -> float:
    return reduced_impedance(a).real / reduced_impedance(b).real


def _imag_ratio(a: complex, b: complex) -> float:
    return reduced_impedance(a).imag / reduced_impedance(b).imag


def figure_ratios(
    series: ImpedanceSeries, zeta_ref: complex, zeta_dif: complex
) -> FigureRatios:
    zeta0 = series.terms[0]
    y1 = y2 = y1_im = y2_im = None
    if series.order >= 1:
        y1 = _real_ratio(series.partial_sums[1], zeta0)
        y1_im = _imag_ratio(series.partial_sums[1], zeta0)
    if series.order >= 2:
        y2 = _real_ratio(series.partial_sums[2], zeta0)
        y2_im = _imag_ratio(series.partial_sums[2], zeta0)
    return FigureRatios(
        y1,
        y2,
        _real_ratio(zeta_dif, zeta_ref),
        _imag_ratio(zeta_dif, zeta_ref),
        y1_im,
        y2_im,
    )


def _rows_for_alpha(config: SweepConfig, alpha: float) -> List[SweepRow]:
    params = PlasmaParams(config.omega_over_nu, alpha)
    try:
        grid = build_grid(grid_spec_for(params, config.grid_order, config.tail_order))
        series = sum_series(params, config.max_order, grid, config.coupling)
        zeta_ref = impedance_specular(params, tol=config.tol)
        zeta_dif = impedance_diffuse(params, grid)
    except SkinError as e:
        logger.warning("alpha=%.6g failed: %s", alpha, e)
        status = f"FAILED:{type(e).__name__}"
        return [
            SweepRow(alpha, config.omega_over_nu, q, status=status)
            for q in config.q_values
        ]

    rows: List[SweepRow] = []
    for q in config.q_values:
        summed = series.with_q(q)
        ratios = figure_ratios(summed, zeta_ref, zeta_dif)
        status = STATUS_DIVERGING if summed.diverging else STATUS_OK
        for n in range(summed.order + 1):
            rows.append(
                SweepRow(
                    alpha=alpha,
                    omega_over_nu=config.omega_over_nu,
                    q=q,
                    order=n,
                    zeta_n=summed.terms[n],
                    partial_sum=summed.partial_sums[n],
                    zeta_ref=zeta_ref,
                    zeta_dif=zeta_dif,
                    y1=ratios.y1,
                    y2=ratios.y2,
                    ratio3_re=ratios.ratio3_re,
                    ratio3_im=ratios.ratio3_im,
                    y1_im=ratios.y1_im,
                    y2_im=ratios.y2_im,
                    status=status,
                )
            )
    logger.debug("alpha=%.6g done (%d rows)", alpha, len(rows))
    return rows


def run_sweep(config: SweepConfig) -> List[SweepRow]:
    """Rows for every (alpha, q, order), in config order.

    The series terms and both references depend on alpha only; every q is a
    re-summation of the same terms.
    """
    alphas = config.alphas()
    if config.workers == 1:
        chunks = [_rows_for_alpha(config, a) for a in alphas]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(lambda a: _rows_for_alpha(config, a), alphas))
    rows = [row for chunk in chunks for row in chunk]
    failed = sum(1 for row in rows if not row.ok)
    if failed:
        logger.warning("%d of %d sweep rows are not OK", failed, len(rows))
    return rows
