"""Funções amostradas em grade sobre [-L/2, L/2)^{2N}."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.exceptions import ArgumentError


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Amostras complexas densas em uma grade uniforme periódica.

    O ponto de índice j em cada eixo é x_j = (j - M/2)·h, com h = L/M; a
    origem fica no índice M/2.
    """

    halfdim: int
    points: int
    extent: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.halfdim < 1:
            raise ArgumentError(f"halfdim inválido: {self.halfdim}")
        if self.points < 8 or self.points % 2:
            raise ArgumentError(f"M deve ser par e ≥ 8, recebido {self.points}")
        if not self.extent > 0:
            raise ArgumentError(f"extensão inválida: {self.extent}")
        expected = (self.points,) * (2 * self.halfdim)
        samples = np.array(self.samples, dtype=complex)
        if samples.shape != expected:
            raise ArgumentError(f"amostras com forma {samples.shape}, esperado {expected}")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_callable(
        cls,
        func: Callable[..., np.ndarray],
        halfdim: int,
        points: int,
        extent: float,
    ) -> "GridFunction":
        """Avalia ``func(x_1, …, x_2N)`` sobre a malha da grade."""
        axis = (np.arange(points) - points // 2) * (extent / points)
        mesh = np.meshgrid(*([axis] * (2 * halfdim)), indexing="ij")
        return cls(halfdim, points, extent, func(*mesh))

    @classmethod
    def zeros(cls, halfdim: int, points: int, extent: float) -> "GridFunction":
        return cls(halfdim, points, extent, np.zeros((points,) * (2 * halfdim)))

    @property
    def dimension(self) -> int:
        return 2 * self.halfdim

    @property
    def spacing(self) -> float:
        return self.extent / self.points

    @property
    def axis(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.spacing

    def with_samples(self, samples: np.ndarray) -> "GridFunction":
        return GridFunction(self.halfdim, self.points, self.extent, samples)

    def same_grid(self, other: "GridFunction") -> bool:
        return (
            self.halfdim == other.halfdim
            and self.points == other.points
            and np.isclose(self.extent, other.extent, rtol=1e-12, atol=0.0)
        )

    def __add__(self, other: "GridFunction") -> "GridFunction":
        if not self.same_grid(other):
            raise ArgumentError("grades incompatíveis")
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        if not self.same_grid(other):
            raise ArgumentError("grades incompatíveis")
        return self.with_samples(self.samples - other.samples)

    def __mul__(self, factor: complex) -> "GridFunction":
        return self.with_samples(factor * self.samples)

    __rmul__ = __mul__

    def conjugate(self) -> "GridFunction":
        return self.with_samples(np.conj(self.samples))


@dataclass(frozen=True)
class MoyalParams:
    """Parâmetro θ > 0 do produto ⋆_θ, com Θ = θJ."""

    theta: float = 2.0

    def __post_init__(self) -> None:
        if not self.theta > 0:
            raise ArgumentError(f"θ deve ser positivo, recebido {self.theta}")
