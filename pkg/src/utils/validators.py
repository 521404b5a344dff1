from typing import List, Sequence, Tuple

import numpy as np

from src.config.settings import settings
from src.exceptions import ArgumentError, IngestionError
from src.models.grid import GridFunction


def outer_shell_peak(samples: np.ndarray) -> float:
    """Máximo de |f| nos pontos com algum índice na borda da grade."""
    magnitude = np.abs(samples)
    peak = 0.0
    for axis in range(samples.ndim):
        peak = max(
            peak,
            float(np.take(magnitude, 0, axis=axis).max()),
            float(np.take(magnitude, -1, axis=axis).max()),
        )
    return peak


def validate_schwartz(f: GridFunction, tolerance: float | None = None) -> GridFunction:
    """
    Verifica o decaimento na borda: max|f| na casca externa ≤ tol·max|f|.

    Raises:
        IngestionError: Se a função não decai na borda
    """
    tolerance = settings.SCHWARTZ_DECAY_TOLERANCE if tolerance is None else tolerance
    peak = float(np.abs(f.samples).max())
    if peak == 0.0:
        return f
    shell = outer_shell_peak(f.samples)
    if shell > tolerance * peak:
        raise IngestionError(
            f"função não decai na borda da grade: {shell / peak:.3e} > {tolerance:.1e}"
        )
    return f


def support_box(
    samples: np.ndarray, axis: np.ndarray, tolerance: float | None = None
) -> List[Tuple[float, float]] | None:
    """Intervalo [lo, hi] por eixo onde |f| > tol·max|f|; None para a função nula."""
    tolerance = settings.SUPPORT_TOLERANCE if tolerance is None else tolerance
    magnitude = np.abs(samples)
    peak = magnitude.max()
    if peak == 0.0:
        return None
    significant = magnitude > tolerance * peak
    box = []
    for dim in range(samples.ndim):
        others = tuple(i for i in range(samples.ndim) if i != dim)
        hits = np.flatnonzero(significant.any(axis=others))
        box.append((float(axis[hits[0]]), float(axis[hits[-1]])))
    return box


def validate_vector(values: Sequence[float], length: int, name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    if vector.shape != (length,):
        raise ArgumentError(f"{name} deve ter {length} componentes, recebido {len(values)}")
    return vector


def validate_real(f: GridFunction, tolerance: float = 1e-12) -> GridFunction:
    """
    Raises:
        IngestionError: Se a parte imaginária não for desprezível
    """
    peak = float(np.abs(f.samples).max())
    if peak and float(np.abs(f.samples.imag).max()) > tolerance * peak:
        raise IngestionError("função de entrada deve ser real")
    return f


def validate_nonnegative(f: GridFunction, tolerance: float = 1e-12) -> GridFunction:
    """Substituto pontual da positividade: f real e f ≥ -tol·max|f| em toda a grade."""
    validate_real(f, tolerance)
    peak = float(np.abs(f.samples).max())
    if peak and float(f.samples.real.min()) < -tolerance * peak:
        raise IngestionError("função de entrada deve ser não negativa")
    return f
