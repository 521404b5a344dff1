import numpy as np
import pytest

from src.models.grid import GridFunction
from src.models.torus import DeformationMatrix
from src.utils.helpers import IRRATIONAL_ENTRIES, gaussian


@pytest.fixture
def rng() -> np.random.Generator:
    """Gerador com semente fixa."""
    return np.random.default_rng(12345)


@pytest.fixture
def theta2() -> DeformationMatrix:
    """Θ 2×2 com entrada 1/√2."""
    return DeformationMatrix.from_upper(2, [IRRATIONAL_ENTRIES[0]])


@pytest.fixture
def theta3() -> DeformationMatrix:
    """Θ 3×3 com entradas em {1/√2, φ-1}."""
    a, b = IRRATIONAL_ENTRIES
    return DeformationMatrix.from_upper(3, [a, -b, b])


@pytest.fixture
def standard_gaussian() -> GridFunction:
    """e^{-|x|²/2} em ℝ², M=128, L=16."""
    return gaussian(1, 128, 16.0)


@pytest.fixture
def offset_gaussians():
    """Par de gaussianas deslocadas na mesma grade."""
    f = gaussian(1, 128, 16.0, center=[0.4, -0.3])
    g = gaussian(1, 128, 16.0, width=1.2, center=[-0.2, 0.5])
    return f, g
