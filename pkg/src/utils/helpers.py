import hashlib
import json
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from src.exceptions import ArgumentError
from src.models.grid import GridFunction
from src.models.torus import DeformationMatrix


def gaussian(
    halfdim: int,
    points: int,
    extent: float,
    width: float = 1.0,
    center: Sequence[float] | None = None,
    amplitude: complex = 1.0,
) -> GridFunction:
    """
    Gaussiana amplitude·exp(-|x-c|²/(2·width²)) na grade.

    Exemplo: gaussian(1, 128, 16.0) é e^{-|x|²/2} em ℝ².
    """
    center = np.zeros(2 * halfdim) if center is None else np.asarray(center, dtype=float)

    def profile(*coords):
        radius = sum((x - c) ** 2 for x, c in zip(coords, center))
        return amplitude * np.exp(-radius / (2 * width**2))

    return GridFunction.from_callable(profile, halfdim, points, extent)


def gaussian_mixture(
    rng: np.random.Generator,
    halfdim: int,
    points: int,
    extent: float,
    components: int = 3,
    width_range: Tuple[float, float] = (1.0, 1.3),
    max_offset: float = 1.0,
) -> GridFunction:
    """Soma de gaussianas com larguras, centros e amplitudes sorteados por ``rng``."""
    total = GridFunction.zeros(halfdim, points, extent)
    for _ in range(components):
        total = total + gaussian(
            halfdim,
            points,
            extent,
            width=rng.uniform(*width_range),
            center=rng.uniform(-max_offset, max_offset, size=2 * halfdim),
            amplitude=rng.uniform(0.5, 1.0),
        )
    return total


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """
    Ajuste por mínimos quadrados de log y = a·log x + b.

    Returns:
        Inclinação a e resíduo RMS do ajuste
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2:
        raise ArgumentError("ajuste log-log requer ao menos dois pontos")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ArgumentError("ajuste log-log requer valores positivos")
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    fitted = slope * np.log(x) + intercept
    residual = float(np.sqrt(np.mean((np.log(y) - fitted) ** 2)))
    return float(slope), residual


def run_identifier(payload: Dict[str, Any]) -> str:
    """Hash estável da configuração, usado como run_id dos relatórios."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


IRRATIONAL_ENTRIES = (1 / np.sqrt(2), (np.sqrt(5) - 1) / 2)


def irrational_theta(rng: np.random.Generator, n: int) -> DeformationMatrix:
    """Θ com entradas ±1/√2 ou ±(φ-1) sorteadas por ``rng``."""
    count = n * (n - 1) // 2
    values = rng.choice(IRRATIONAL_ENTRIES, size=count) * rng.choice((-1.0, 1.0), size=count)
    return DeformationMatrix.from_upper(n, values)
