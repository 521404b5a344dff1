"""Torre de recobrimentos C(T^{2N}_{Θ_0}) → C(T^{2N}_{Θ_1}) → … e relatórios de elementos especiais."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.exceptions import ArgumentError
from src.models.covering import CoveringSpec
from src.models.torus import DeformationMatrix


@dataclass(frozen=True)
class TowerSpec:
    """
    Sequência p_1, p_2, … (p_j ≥ 2) com produtos parciais m_n = p_1⋯p_n, m_0 = 1.

    O nível n é o toro de dimensão 2N com Θ_n = J/(π m_n²); a rede de deck é
    2πm_n·ℤ^{2N} no gauge θ = 2.
    """

    p: Tuple[int, ...] = ()
    halfdim: int = 1
    m: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if any(int(pj) < 2 for pj in self.p):
            raise ArgumentError(f"fatores da torre devem ser ≥ 2: {tuple(self.p)}")
        if self.halfdim < 1:
            raise ArgumentError(f"halfdim inválido: {self.halfdim}")
        p = tuple(int(pj) for pj in self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", tuple(int(v) for v in np.cumprod((1,) + p)))

    @property
    def depth(self) -> int:
        return len(self.p)

    def check_level(self, n: int) -> int:
        if not 0 <= n <= self.depth:
            raise ArgumentError(f"nível {n} fora da torre de profundidade {self.depth}")
        return n

    def base_theta(self) -> DeformationMatrix:
        return DeformationMatrix.symplectic(1 / np.pi, self.halfdim)

    def level_theta(self, n: int) -> DeformationMatrix:
        """Θ_n obtido por divisões sucessivas Θ_{j} = Θ_{j-1}/p_j²."""
        self.check_level(n)
        theta = self.base_theta()
        for pj in self.p[:n]:
            theta = CoveringSpec(theta, (pj,) * (2 * self.halfdim)).cover_theta
        return theta

    def step(self, n: int) -> CoveringSpec:
        """Recobrimento do nível n pelo nível n+1."""
        self.check_level(n + 1)
        return CoveringSpec(self.level_theta(n), (self.p[n],) * (2 * self.halfdim))

    def covering(self, n: int, m: int) -> CoveringSpec:
        """Recobrimento direto do nível n pelo nível m, com k_j = m_m/m_n."""
        self.check_level(n)
        self.check_level(m)
        if m < n:
            raise ArgumentError(f"nível {m} abaixo de {n}")
        return CoveringSpec(self.level_theta(n), (self.m[m] // self.m[n],) * (2 * self.halfdim))


@dataclass(frozen=True)
class SpecialReport:
    """Linha de relatório de um nível da torre; campos ausentes não se aplicam ao experimento."""

    level: int
    m_n: int
    defect: Optional[float] = None
    tail_bound: float = 0.0
    delta: Optional[float] = None
    lhs: Optional[float] = None
    rhs_a: Optional[float] = None
    rhs_b: Optional[float] = None
    matching: Optional[str] = None

    def __post_init__(self) -> None:
        for name in ("defect", "tail_bound", "delta", "lhs", "rhs_a", "rhs_b"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value >= 0):
                raise ArgumentError(f"{name} deve ser finito e não negativo: {value}")
