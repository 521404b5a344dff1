"""Recobrimentos finitos T^n_Θ̃ → T^n_Θ e partições da unidade no círculo."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from src.exceptions import ArgumentError
from src.models.torus import DeformationMatrix


@dataclass(frozen=True)
class DeckElement:
    """Elemento (p_1, …, p_n) de ℤ_{k_1} × … × ℤ_{k_n}, com 0 ≤ p_j < k_j."""

    p: Tuple[int, ...]

    @classmethod
    def of(cls, values: Sequence[int], k: Sequence[int]) -> "DeckElement":
        if len(values) != len(k):
            raise ArgumentError(f"elemento {tuple(values)} incompatível com k={tuple(k)}")
        return cls(tuple(int(v) % int(kj) for v, kj in zip(values, k)))

    @property
    def is_identity(self) -> bool:
        return not any(self.p)


@dataclass(frozen=True)
class CoveringSpec:
    """Dados do mergulho u_j ↦ v_j^{k_j}; cover_theta é derivado."""

    base_theta: DeformationMatrix
    k: Tuple[int, ...]
    cover_theta: DeformationMatrix = field(init=False)

    def __post_init__(self) -> None:
        if len(self.k) != self.base_theta.n:
            raise ArgumentError(
                f"k com {len(self.k)} entradas para dimensão {self.base_theta.n}"
            )
        if any(kj < 1 for kj in self.k):
            raise ArgumentError(f"k deve ser positivo: {self.k}")
        object.__setattr__(self, "k", tuple(int(kj) for kj in self.k))
        object.__setattr__(self, "cover_theta", self.base_theta.scaled(self.k))

    @property
    def n(self) -> int:
        return self.base_theta.n

    @property
    def group_order(self) -> int:
        return int(np.prod(self.k))

    def deck(self, values: Sequence[int]) -> DeckElement:
        return DeckElement.of(values, self.k)

    def deck_elements(self) -> Iterator[DeckElement]:
        """Todos os elementos do grupo, em ordem lexicográfica."""
        for values in itertools.product(*(range(kj) for kj in self.k)):
            yield DeckElement(tuple(values))


@dataclass(frozen=True, eq=False)
class CirclePartition:
    """
    Partição e_1² + e_2² = 1 do círculo e seus levantamentos ao recobrimento de grau ``fold``.

    ``samples_e*`` são os levantamentos ẽ_i na grade de ℝ/2π·fold·ℤ;
    ``fourier_e*`` são coeficientes do círculo base (|m| ≤ cutoff) e
    ``lifted_fourier_e*`` os coeficientes de ẽ_i na variável v, com v^fold = u.
    """

    fold: int
    grid_size: int
    fourier_cutoff: int
    samples_e1: np.ndarray
    samples_e2: np.ndarray
    fourier_e1: np.ndarray
    fourier_e2: np.ndarray
    lifted_fourier_e1: np.ndarray
    lifted_fourier_e2: np.ndarray
    lifted_tail_e1: float
    lifted_tail_e2: float
    residual: float
    warnings: List[str] = field(default_factory=list)

    @property
    def degraded(self) -> bool:
        return bool(self.warnings)

    @property
    def base_grid_size(self) -> int:
        return self.grid_size // self.fold

    def lifted(self, index: int) -> np.ndarray:
        return self.lifted_fourier_e1 if index == 1 else self.lifted_fourier_e2

    def lifted_tail(self, index: int) -> float:
        return self.lifted_tail_e1 if index == 1 else self.lifted_tail_e2

    def samples(self, index: int) -> np.ndarray:
        return self.samples_e1 if index == 1 else self.samples_e2


@dataclass(frozen=True)
class CoveringReport:
    """Linha de verificação da soma de recobrimento para um elemento g."""

    k: Tuple[int, ...]
    cutoff: int
    g: Tuple[int, ...]
    defect: float
    residual: float
    truncation_bound: float
