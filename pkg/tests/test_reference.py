import numpy as np
import pytest

from skinq import reference
from skinq.errors import BranchDiscontinuityError, InvalidParameterError
from skinq.kinetic import PlasmaParams, grid_spec_for
from skinq.quadrature import build_grid
from skinq.reference import (
    MAX_PHASE_STEP,
    BranchTracker,
    impedance_diffuse,
    impedance_specular,
    log_integral,
    log_integral_by_parts,
)

from oracles import rel_err


def re_ratio(a: complex, b: complex) -> float:
    return (1j * a).real / (1j * b).real


@pytest.mark.parametrize("alpha", [0.1, 1.0, 100.0])
def test_specular_forms_agree(alpha):
    p = PlasmaParams(omega_over_nu=1.0, alpha=alpha)
    tau = impedance_specular(p, form="tau")
    k = impedance_specular(p, form="k")
    assert rel_err(tau, k) < 1e-9


def test_specular_rejects_unknown_form(unit_params):
    with pytest.raises(InvalidParameterError):
        impedance_specular(unit_params, form="x")


def test_specular_local_limit():
    # normal skin effect: zeta -> -pi / sqrt(-i alpha) for omega/nu = 0
    p = PlasmaParams(omega_over_nu=0.0, alpha=1e-4)
    expected = -np.pi / np.sqrt(-1j * p.alpha)
    assert rel_err(impedance_specular(p), expected) < 1e-2


@pytest.mark.parametrize("alpha", [0.01, 1.0, 50.0])
def test_log_integral_matches_integration_by_parts(alpha):
    p = PlasmaParams(omega_over_nu=1.0, alpha=alpha)
    assert rel_err(log_integral(p), log_integral_by_parts(p)) < 1e-8


def test_branch_tracker_phase_is_continuous_and_anchored():
    p = PlasmaParams(omega_over_nu=1.0, alpha=1e3)
    ks = np.geomspace(1e-3, 1e4, 4000)
    tracker = BranchTracker.track(p, ks)
    assert tracker.max_step <= MAX_PHASE_STEP
    assert abs(tracker.phase[-1]) < 1e-6
    assert tracker.phase.shape == ks.shape


def test_branch_tracker_detects_jumps(monkeypatch):
    p = PlasmaParams(omega_over_nu=1.0, alpha=1e4)
    monkeypatch.setattr(reference, "MAX_PHASE_STEP", 1e-12)
    with pytest.raises(BranchDiscontinuityError):
        BranchTracker.track(p, np.array([1.0, 200.0]))


def test_log_integral_gives_up_after_refinements(monkeypatch, unit_params):
    monkeypatch.setattr(reference, "MAX_PHASE_STEP", 1e-12)
    grid = build_grid(grid_spec_for(unit_params))
    with pytest.raises(BranchDiscontinuityError):
        log_integral(unit_params, grid, refinements=1)


def test_branch_tracker_validates_samples(unit_params):
    with pytest.raises(InvalidParameterError):
        BranchTracker.track(unit_params, np.array([1.0]))
    with pytest.raises(InvalidParameterError):
        BranchTracker.track(unit_params, np.array([2.0, 1.0]))
    with pytest.raises(InvalidParameterError):
        BranchTracker.track(unit_params, np.array([0.0, 1.0]))


def test_diffuse_impedance_is_refinement_invariant():
    p = PlasmaParams(omega_over_nu=1.0, alpha=10.0)
    grid = build_grid(grid_spec_for(p))
    coarse = impedance_diffuse(p, grid)
    fine = impedance_diffuse(p, grid.refined())
    assert rel_err(coarse, fine) < 1e-8


def test_walls_coincide_in_the_local_limit():
    p = PlasmaParams(omega_over_nu=1.0, alpha=1e-3)
    ratio = re_ratio(impedance_diffuse(p), impedance_specular(p))
    assert abs(ratio - 1.0) < 1e-2


def test_anomalous_ratio_lies_above_nine_eighths():
    p = PlasmaParams(omega_over_nu=1.0, alpha=1e4)
    ratio = re_ratio(impedance_diffuse(p), impedance_specular(p))
    assert ratio == pytest.approx(1.1517, abs=3e-3)
    assert ratio > 1.125


@pytest.mark.slow
def test_anomalous_ratio_decreases_toward_nine_eighths():
    ratios = []
    for alpha in [1e4, 1e5, 1e6]:
        p = PlasmaParams(omega_over_nu=1.0, alpha=alpha)
        ratios.append(re_ratio(impedance_diffuse(p), impedance_specular(p)))
    assert ratios[0] > ratios[1] > ratios[2] > 1.125
    assert ratios[1] == pytest.approx(1.1408, abs=3e-3)
    assert ratios[2] == pytest.approx(1.1340, abs=3e-3)
