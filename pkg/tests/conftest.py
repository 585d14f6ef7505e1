from pathlib import Path

import numpy as np
import pytest

from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from seqlab.nets import generate_net

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def _quiet_environment(monkeypatch):
    """Runs start from the default runtime settings."""
    for name in ("BERGMAN_THREADS", "BERGMAN_SAMPLES", "BERGMAN_SEED"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("BERGMAN_LOG_LEVEL", "CRITICAL")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def net_seq() -> PointSeq:
    """Separated net in the disk: three layers, pairwise distance at least 0.5."""
    return generate_net(1, 0.5, 3, seed=0)


@pytest.fixture(scope="session")
def two_point_seq() -> PointSeq:
    return PointSeq.model_validate_json((FIXTURES / "two_point.json").read_text())


@pytest.fixture
def fast_spec() -> QuadratureSpec:
    return QuadratureSpec(samples=2**14, seed=0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


def random_ball_points(rng: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    """Points with |z| < radius, for property checks."""
    g = rng.standard_normal((count, 2 * n))
    z = g[:, :n] + 1j * g[:, n:]
    z /= np.linalg.norm(z, axis=1)[:, None]
    return z * (radius * rng.random(count) ** (1.0 / (2 * n)))[:, None]
