import math

import numpy as np
import pytest

from skinq.errors import GridConfigError, IntegrandError
from skinq.quadrature import (
    GridSpec,
    build_grid,
    fourier_integral,
    integrate_semi_infinite,
)


@pytest.fixture(scope="module")
def grid():
    return build_grid(GridSpec())


def test_default_grid_layout(grid):
    spec = grid.spec
    assert grid.panel_map.panel_count == spec.panels + 1
    assert grid.size == (spec.panels + 1) * spec.order + spec.tail_order
    assert np.all(np.diff(grid.nodes) > 0)
    assert np.all(grid.weights > 0)
    assert grid.panel_map.breaks[0] == 0.0
    assert grid.panel_map.breaks[-1] == spec.split
    assert grid.panel_map.first_panel_end == pytest.approx(spec.first_break)


def test_grid_arrays_are_read_only(grid):
    with pytest.raises(ValueError):
        grid.nodes[0] = 1.0


@pytest.mark.parametrize(
    "f, exact",
    [
        (lambda k: np.exp(-k), 1.0),
        (lambda k: 1.0 / (1.0 + k**2), math.pi / 2),
        (lambda k: (1.0 + 2.0j) / (4.0 + k**2) ** 2, (1.0 + 2.0j) * math.pi / 32),
    ],
)
def test_grid_integrates_decaying_functions(grid, f, exact):
    assert abs(grid.integrate(f(grid.nodes)) - exact) <= 1e-12 * abs(exact)


def test_logarithmic_tail_map():
    g = build_grid(GridSpec(split=8.0, tail_map="logarithmic"))
    assert g.integrate(np.exp(-g.nodes)) == pytest.approx(1.0, rel=1e-12)


def test_grid_is_deterministic():
    a = build_grid(GridSpec(panels=10))
    b = build_grid(GridSpec(panels=10))
    assert np.array_equal(a.nodes, b.nodes)
    assert np.array_equal(a.weights, b.weights)


def test_refined_grid_doubles_orders(grid):
    finer = grid.refined()
    assert finer.size == 2 * grid.size
    assert finer.panel_map.breaks == grid.panel_map.breaks


def test_cluster_refinement_adds_panels(grid):
    clustered = build_grid(GridSpec(cluster=1.0, cluster_refine=3))
    assert clustered.panel_map.panel_count > grid.panel_map.panel_count
    inside = [b for b in clustered.panel_map.breaks if 0.5 <= b <= 2.0]
    assert len(inside) > len([b for b in grid.panel_map.breaks if 0.5 <= b <= 2.0])


@pytest.mark.parametrize(
    "spec",
    [
        GridSpec(panels=0),
        GridSpec(order=0),
        GridSpec(first_break=20.0, split=16.0),
        GridSpec(first_break=0.0),
        GridSpec(tail_map="exponential"),
        GridSpec(cluster=-1.0),
    ],
)
def test_invalid_grid_specs_are_rejected(spec):
    with pytest.raises(GridConfigError):
        build_grid(spec)


def test_interpolant_reproduces_smooth_function(grid):
    def f(k):
        return (1.0 + 1.0j) / (1.0 + k**2)

    interp = grid.interpolant(f(grid.nodes))
    for k in [1e-4, 0.5, 3.3, 15.9, 40.0, 1000.0]:
        assert abs(interp(k) - f(k)) <= 1e-9 * abs(f(k))


def test_interpolant_rejects_wrong_length(grid):
    with pytest.raises(GridConfigError):
        grid.interpolant(np.ones(grid.size - 1))


def test_integrate_semi_infinite_complex():
    result = integrate_semi_infinite(lambda k: (1.0 + 2.0j) * math.exp(-k), tol=1e-11)
    assert result.converged
    assert result.value == pytest.approx(1.0 + 2.0j, rel=1e-11)
    assert result.evaluations > 0
    assert result.error < 1e-9


def test_integrate_semi_infinite_with_split():
    result = integrate_semi_infinite(lambda k: 1.0 / (1.0 + k * k), split=3.0)
    assert result.value == pytest.approx(math.pi / 2, rel=1e-10)


def test_integrate_semi_infinite_rejects_nan():
    with pytest.raises(IntegrandError):
        integrate_semi_infinite(lambda k: math.nan)


@pytest.mark.parametrize("x", [0.5, 2.0, 7.0])
def test_fourier_integral_of_exponential(grid, x):
    cos_part = fourier_integral(lambda k: math.exp(-k), grid.panel_map, x, "cos")
    sin_part = fourier_integral(lambda k: math.exp(-k), grid.panel_map, x, "sin")
    assert cos_part.converged and sin_part.converged
    assert abs(cos_part.value - 1.0 / (1.0 + x * x)) < 1e-9
    assert abs(sin_part.value - x / (1.0 + x * x)) < 1e-9


@pytest.mark.parametrize("x", [0.0, 1.0, 3.0, 30.0])
def test_fourier_integral_of_lorentzian(grid, x):
    result = fourier_integral(lambda k: 1.0 / (1.0 + k * k), grid.panel_map, x, "cos")
    assert abs(result.value - 0.5 * math.pi * math.exp(-x)) < 1e-9


def test_fourier_integral_sine_at_zero_vanishes(grid):
    assert fourier_integral(lambda k: 1.0, grid.panel_map, 0.0, "sin").value == 0


def test_fourier_integral_validates_arguments(grid):
    with pytest.raises(ValueError):
        fourier_integral(lambda k: 1.0, grid.panel_map, -1.0)
    with pytest.raises(ValueError):
        fourier_integral(lambda k: 1.0, grid.panel_map, 1.0, "tan")


def test_grid_integrates_gaussian(grid):
    assert abs(grid.integrate(np.exp(-grid.nodes**2)) - math.sqrt(math.pi) / 2) < 1e-10


def test_refinement_reduces_residual():
    coarse = build_grid(GridSpec(panels=4, order=4, tail_order=8))
    fine = coarse.refined()
    err_coarse = abs(coarse.integrate(np.exp(-coarse.nodes)) - 1.0)
    err_fine = abs(fine.integrate(np.exp(-fine.nodes)) - 1.0)
    assert err_fine < err_coarse


def test_grid_agrees_with_adaptive_on_inverse_dispersion():
    from skinq.kinetic import PlasmaParams, dispersion_L, grid_spec_for

    p = PlasmaParams(omega_over_nu=1.0, alpha=1.0)
    g = build_grid(grid_spec_for(p))
    on_grid = g.integrate(1.0 / np.asarray(dispersion_L(g.nodes, p)))
    adaptive = integrate_semi_infinite(lambda k: 1.0 / dispersion_L(k, p), tol=1e-10)
    assert abs(on_grid - adaptive.value) <= 1e-8 * abs(adaptive.value)
