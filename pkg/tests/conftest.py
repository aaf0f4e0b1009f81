from typing import Iterator

import pytest

from skinq import config
from skinq.kinetic import PlasmaParams


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch) -> Iterator[None]:
    """Point the user config and output directory at a temporary location."""
    data_dir = tmp_path / "data"
    monkeypatch.setattr(config, "_DEFAULT_DATA_DIR", str(data_dir))
    monkeypatch.setattr(config, "_CONFIG_FILE", str(data_dir / "config.json"))
    monkeypatch.setattr(config, "_CONFIG_CACHE", None)
    monkeypatch.setenv(config.OUTPUT_DIR_ENV, str(tmp_path / "out"))
    yield


@pytest.fixture
def unit_params() -> PlasmaParams:
    return PlasmaParams(omega_over_nu=1.0, alpha=1.0)

