import pytest

from skinq import sweep
from skinq.errors import ConfigError, QuadratureError
from skinq.sweep import STATUS_OK, SweepConfig, run_sweep

SMALL = dict(
    alpha_min=0.1,
    alpha_max=1.0,
    alpha_count=2,
    q_values=(0.0, 1.0),
    max_order=1,
    grid_order=8,
    tail_order=16,
)


@pytest.fixture(scope="module")
def small_rows():
    return run_sweep(SweepConfig(**SMALL))


def test_config_defaults_are_valid():
    cfg = SweepConfig()
    alphas = cfg.alphas()
    assert len(alphas) == 30
    assert alphas[0] == pytest.approx(1e-2)
    assert alphas[-1] == pytest.approx(1e4)


@pytest.mark.parametrize(
    "changes",
    [
        {"alpha_min": 10.0, "alpha_max": 1.0},
        {"alpha_min": 0.0},
        {"alpha_count": 1},
        {"q_values": (0.0, 1.5)},
        {"q_values": ()},
        {"max_order": -1},
        {"tol": 0.0},
        {"coupling": "guess"},
        {"workers": 0},
        {"omega_over_nu": -1.0},
    ],
)
def test_config_rejects_invalid_values(changes):
    with pytest.raises(ConfigError):
        SweepConfig(**changes)


def test_from_mapping_converts_values():
    cfg = SweepConfig.from_mapping(
        {"alpha_min": "1e-3", "alpha_count": 5.0, "q_values": 0.5, "tol": None}
    )
    assert cfg.alpha_min == 1e-3
    assert cfg.alpha_count == 5
    assert cfg.q_values == (0.5,)
    assert cfg.tol == SweepConfig().tol


@pytest.mark.parametrize(
    "data",
    [{"alpha_range": [1, 2]}, {"alpha_count": 2.5}, {"max_order": "two"}],
)
def test_from_mapping_rejects_bad_input(data):
    with pytest.raises(ConfigError):
        SweepConfig.from_mapping(data)


def test_rows_follow_config_order(small_rows):
    keys = [(r.alpha, r.q, r.order) for r in small_rows]
    assert len(keys) == 2 * 2 * 2
    assert keys == sorted(keys)
    assert all(r.status == STATUS_OK for r in small_rows)


def test_specular_rows_carry_no_correction(small_rows):
    zeta0 = {r.alpha: r.zeta_n for r in small_rows if r.order == 0}
    specular = [r for r in small_rows if r.q == 1.0]
    assert specular
    for row in specular:
        assert row.y1 == 1.0
        assert row.y1_im == 1.0
        assert row.y2 is None
        assert row.partial_sum == zeta0[row.alpha]


def test_rows_share_references_per_alpha(small_rows):
    by_alpha = {}
    for row in small_rows:
        by_alpha.setdefault(row.alpha, set()).add((row.zeta_ref, row.zeta_dif))
    assert all(len(refs) == 1 for refs in by_alpha.values())


def test_threads_give_identical_rows(small_rows):
    assert run_sweep(SweepConfig(**SMALL, workers=2)) == small_rows


def test_imaginary_ratios_follow_partial_sums(small_rows):
    diffuse = [r for r in small_rows if r.q == 0.0]
    zeta0 = {r.alpha: r.partial_sum for r in diffuse if r.order == 0}
    first = {r.alpha: r.partial_sum for r in diffuse if r.order == 1}
    for row in diffuse:
        expected = (1j * first[row.alpha]).imag / (1j * zeta0[row.alpha]).imag
        assert row.y1_im == pytest.approx(expected, rel=1e-14)
        assert row.y2_im is None


def test_first_order_matches_diffuse_ratio_at_small_alpha():
    cfg = SweepConfig(alpha_min=0.01, alpha_max=0.1, alpha_count=2, max_order=1)
    final = [r for r in run_sweep(cfg) if r.order == 1]
    assert len(final) == 2
    for row in final:
        assert abs(row.y1 - row.ratio3_re) <= 0.01


def test_failures_are_recorded_per_row(monkeypatch):
    def broken(*args, **kwargs):
        raise QuadratureError("no convergence")

    monkeypatch.setattr(sweep, "impedance_specular", broken)
    rows = run_sweep(SweepConfig(**SMALL))
    assert len(rows) == 2 * 2
    assert {r.status for r in rows} == {"FAILED:QuadratureError"}
    assert all(r.zeta_n is None and not r.ok for r in rows)


@pytest.mark.slow
def test_second_order_tracks_diffuse_ratio_below_unit_alpha():
    cfg = SweepConfig(alpha_min=0.5, alpha_max=1.0, alpha_count=2, max_order=2)
    row = [r for r in run_sweep(cfg) if r.alpha == pytest.approx(0.5)][-1]
    assert abs(row.y2 - row.ratio3_re) <= 0.01 * row.ratio3_re


@pytest.mark.slow
def test_anomalous_row_ratios():
    cfg = SweepConfig(alpha_min=1e3, alpha_max=1e4, alpha_count=2, max_order=2)
    row = run_sweep(cfg)[-1]
    assert row.alpha == pytest.approx(1e4)
    # computed values; ratio3 only reaches 1.125 as alpha -> inf
    assert row.ratio3_re == pytest.approx(1.1517, abs=3e-3)
    assert row.y2 == pytest.approx(1.1348, abs=3e-3)
    assert row.y1 == pytest.approx(1.1049, abs=3e-3)
    assert row.ratio3_re > row.y2 > row.y1 > 1.0
    assert row.y1_im is not None and row.y2_im is not None
