"""Valores imutáveis do toro não comutativo.

Um ``TorusElement`` guarda os coeficientes de Fourier em um array denso de
forma ``(2K+1,)*n`` centrado na origem: o índice de rede ``k`` fica na
posição ``k + K``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Sequence, Tuple

import numpy as np

from src.config.settings import settings
from src.exceptions import ArgumentError

LatticeIndex = Tuple[int, ...]


@dataclass(frozen=True)
class DeformationMatrix:
    """Matriz real antissimétrica Θ, armazenada pelo triângulo superior estrito."""

    n: int
    upper_values: Tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ArgumentError(f"dimensão inválida: {self.n}")
        expected = self.n * (self.n - 1) // 2
        if len(self.upper_values) != expected:
            raise ArgumentError(
                f"triângulo superior com {len(self.upper_values)} valores, esperado {expected}"
            )

    @classmethod
    def from_upper(cls, n: int, values: Sequence[float]) -> "DeformationMatrix":
        return cls(n, tuple(float(v) for v in values))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "DeformationMatrix":
        """
        Constrói a partir de uma matriz completa.

        Raises:
            ArgumentError: Se a matriz não for quadrada e antissimétrica
        """
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ArgumentError("matriz de deformação deve ser quadrada")
        if not np.array_equal(matrix, -matrix.T):
            raise ArgumentError("matriz de deformação deve ser antissimétrica")
        n = matrix.shape[0]
        rows, cols = np.triu_indices(n, k=1)
        return cls(n, tuple(float(v) for v in matrix[rows, cols]))

    @classmethod
    def zero(cls, n: int) -> "DeformationMatrix":
        return cls(n, (0.0,) * (n * (n - 1) // 2))

    @classmethod
    def symplectic(cls, theta: float, halfdim: int) -> "DeformationMatrix":
        """θ·J com J = [[0, I], [-I, 0]]."""
        n = 2 * halfdim
        matrix = np.zeros((n, n))
        matrix[:halfdim, halfdim:] = theta * np.eye(halfdim)
        matrix[halfdim:, :halfdim] = -theta * np.eye(halfdim)
        return cls.from_matrix(matrix)

    @property
    def entries(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n))
        rows, cols = np.triu_indices(self.n, k=1)
        matrix[rows, cols] = self.upper_values
        matrix[cols, rows] = -np.asarray(self.upper_values)
        return matrix

    def upper(self) -> list:
        return list(self.upper_values)

    def scaled(self, factors: Sequence[int]) -> "DeformationMatrix":
        """Θ̃_rs = Θ_rs / (k_r k_s)."""
        k = np.asarray(factors, dtype=float)
        return DeformationMatrix.from_matrix(self.entries / np.outer(k, k))

    def matches(self, other: "DeformationMatrix", rtol: float = 1e-12) -> bool:
        if self.n != other.n:
            return False
        return bool(np.allclose(self.upper_values, other.upper_values, rtol=rtol, atol=0.0))


def prune(coeffs: np.ndarray, threshold: float | None = None) -> np.ndarray:
    """Zera coeficientes com |c| < threshold·max|c|."""
    threshold = settings.PRUNE_THRESHOLD if threshold is None else threshold
    magnitude = np.abs(coeffs)
    peak = magnitude.max() if magnitude.size else 0.0
    if peak == 0.0:
        return np.zeros_like(coeffs)
    result = coeffs.copy()
    result[magnitude < threshold * peak] = 0.0
    return result


@dataclass(frozen=True, eq=False)
class TorusElement:
    """Elemento de C^∞(T^n_Θ) com suporte finito em max|k_j| ≤ cutoff."""

    theta: DeformationMatrix
    coeffs: np.ndarray
    cutoff: int

    def __post_init__(self) -> None:
        expected = (2 * self.cutoff + 1,) * self.theta.n
        if self.coeffs.shape != expected:
            raise ArgumentError(
                f"array de coeficientes com forma {self.coeffs.shape}, esperado {expected}"
            )
        array = np.array(self.coeffs, dtype=complex)
        array.flags.writeable = False
        object.__setattr__(self, "coeffs", array)

    # Construtores

    @classmethod
    def from_dense(
        cls, theta: DeformationMatrix, coeffs: np.ndarray, apply_prune: bool = True
    ) -> "TorusElement":
        coeffs = np.asarray(coeffs, dtype=complex)
        cutoff = (coeffs.shape[0] - 1) // 2 if coeffs.ndim else 0
        return cls(theta, prune(coeffs) if apply_prune else coeffs, cutoff)

    @classmethod
    def from_terms(
        cls,
        theta: DeformationMatrix,
        terms: Dict[LatticeIndex, complex],
        cutoff: int | None = None,
    ) -> "TorusElement":
        for k in terms:
            if len(k) != theta.n:
                raise ArgumentError(f"índice {k} incompatível com dimensão {theta.n}")
        needed = max((max(abs(c) for c in k) for k in terms), default=0)
        cutoff = needed if cutoff is None else cutoff
        if needed > cutoff:
            raise ArgumentError(f"índice fora do cutoff {cutoff}")
        coeffs = np.zeros((2 * cutoff + 1,) * theta.n, dtype=complex)
        for k, value in terms.items():
            coeffs[tuple(c + cutoff for c in k)] += value
        return cls(theta, coeffs, cutoff)

    @classmethod
    def zero(cls, theta: DeformationMatrix, cutoff: int = 0) -> "TorusElement":
        return cls(theta, np.zeros((2 * cutoff + 1,) * theta.n, dtype=complex), cutoff)

    @classmethod
    def identity(cls, theta: DeformationMatrix) -> "TorusElement":
        return cls.from_terms(theta, {(0,) * theta.n: 1.0})

    # Acesso

    @property
    def n(self) -> int:
        return self.theta.n

    def coefficient(self, k: LatticeIndex) -> complex:
        if len(k) != self.n:
            raise ArgumentError(f"índice {k} incompatível com dimensão {self.n}")
        if max((abs(c) for c in k), default=0) > self.cutoff:
            return 0j
        return complex(self.coeffs[tuple(c + self.cutoff for c in k)])

    def items(self) -> Iterator[Tuple[LatticeIndex, complex]]:
        """Pares (índice, coeficiente) não nulos, em ordem C."""
        for position in np.argwhere(self.coeffs != 0):
            k = tuple(int(c) - self.cutoff for c in position)
            yield k, complex(self.coeffs[tuple(position)])

    @property
    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def padded(self, cutoff: int) -> np.ndarray:
        """Coeficientes re-centrados em um cutoff maior."""
        if cutoff < self.cutoff:
            raise ArgumentError(f"cutoff {cutoff} menor que {self.cutoff}")
        pad = cutoff - self.cutoff
        return np.pad(np.asarray(self.coeffs), pad)

    def is_self_adjoint(self, atol: float = 1e-12) -> bool:
        reflected = np.conj(np.flip(self.coeffs))
        return bool(np.allclose(self.coeffs, reflected, rtol=0.0, atol=atol))
