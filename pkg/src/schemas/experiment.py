from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config.settings import settings
from src.utils.parsers import parse_float_list, parse_int_list, parse_vector_list


class Command(str, Enum):
    TORUS_CHECK = "torus-check"
    COVERING_VERIFY = "covering-verify"
    MOYAL_VERIFY = "moyal-verify"
    SPECIAL_DECAY = "special-decay"
    DELTA_DECAY = "delta-decay"
    TRACE_COMPARE = "trace-compare"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TEXT_TABLE = "text-table"


class PeriodizationMethod(str, Enum):
    FOURIER = "fourier"
    DIRECT = "direct"


# Padrões por comando para campos deixados em branco
COMMAND_DEFAULTS: Dict[Command, Dict[str, Any]] = {
    Command.TORUS_CHECK: {"cutoff": 3},
    Command.COVERING_VERIFY: {"cutoff": 64},
    Command.MOYAL_VERIFY: {"M": 128, "L": 16.0, "width": 1.0},
    Command.SPECIAL_DECAY: {"width": 4.0},
    Command.DELTA_DECAY: {"M": 256, "L": 64.0, "width": 1.0},
    Command.TRACE_COMPARE: {"width": 1.0},
}


def moyal_grid_defaults(theta: float) -> Dict[str, Any]:
    """
    Grade padrão de moyal-verify.

    Para θ < 2 a redução ao calibre θ = 2 dilata o suporte por √(2/θ); M e L
    crescem pela mesma potência de 2, mantendo o espaçamento h = L/M.
    """
    base = COMMAND_DEFAULTS[Command.MOYAL_VERIFY]
    if theta >= 2:
        return dict(base)
    factor = 2 ** int(np.ceil(np.log2(1.25 * np.sqrt(2 / theta))))
    return {**base, "M": base["M"] * factor, "L": base["L"] * factor}


class ExperimentConfig(BaseModel):
    """Parâmetros de um experimento; arquivo de configuração e flags são mesclados antes da validação."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    command: Command
    theta: float = Field(default=2.0, gt=0, le=64, description="Parâmetro θ do produto ⋆_θ")
    n: int = Field(default=2, ge=1, le=4, description="Dimensão do toro em torus-check")
    k: List[int] = Field(default_factory=lambda: [2], description="Graus do recobrimento")
    M: Optional[int] = Field(default=None, ge=8, le=1024, description="Pontos por eixo")
    L: Optional[float] = Field(default=None, gt=0, le=4096, description="Extensão da grade")
    cutoff: Optional[int] = Field(default=None, ge=1, le=4096)
    basis_cutoff: int = Field(default=8, ge=1, le=64)
    p: List[int] = Field(default_factory=list, description="Fatores da torre p_1, p_2, …")
    deltas: Optional[List[List[float]]] = None
    level: int = Field(default=0, ge=0)
    seed: int = Field(default=0, ge=0)
    trials: int = Field(default=200, ge=1, le=10000)
    mixtures: int = Field(default=20, ge=1, le=200)
    probes: int = Field(default=10, ge=1, le=200)
    width: Optional[float] = Field(default=None, gt=0)
    halfdim: int = Field(default=1, ge=1, le=2)
    method: PeriodizationMethod = PeriodizationMethod.FOURIER
    commutative: bool = Field(default=False, description="Variante Θ = 0 de special-decay")
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    plot_script: Optional[Path] = None
    input_grid: Optional[Path] = None
    artifacts_dir: Optional[Path] = None

    @field_validator("k", "p", mode="before")
    @classmethod
    def parse_integers(cls, v):
        return parse_int_list(v) if isinstance(v, str) else v

    @field_validator("deltas", mode="before")
    @classmethod
    def parse_deltas(cls, v):
        if isinstance(v, str):
            return parse_vector_list(v)
        if v and isinstance(v[0], str):
            return [parse_float_list(item) for item in v]
        return v

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: List[int]) -> List[int]:
        if not v or any(kj < 1 for kj in v):
            raise ValueError("k deve ter entradas positivas")
        return v

    @field_validator("p")
    @classmethod
    def validate_tower(cls, v: List[int]) -> List[int]:
        if any(pj < 2 for pj in v):
            raise ValueError("fatores da torre devem ser ≥ 2")
        return v

    @field_validator("M")
    @classmethod
    def validate_even(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v % 2:
            raise ValueError("M deve ser par")
        return v

    @model_validator(mode="after")
    def apply_command_defaults(self) -> "ExperimentConfig":
        defaults = {"M": settings.DEFAULT_M, "L": settings.DEFAULT_L}
        if self.command == Command.MOYAL_VERIFY and self.M is None and self.L is None:
            defaults.update(moyal_grid_defaults(self.theta))
        else:
            defaults.update(COMMAND_DEFAULTS[self.command])
        for name, value in defaults.items():
            if getattr(self, name) is None:
                setattr(self, name, value)
        if self.deltas is None:
            dimension = 2 * self.halfdim
            self.deltas = [[d] + [0.0] * (dimension - 1) for d in (4.0, 8.0, 16.0)]
        if any(len(d) != 2 * self.halfdim for d in self.deltas):
            raise ValueError(f"cada Δ deve ter {2 * self.halfdim} componentes")
        if self.level > len(self.p):
            raise ValueError(f"level {self.level} acima da profundidade da torre {len(self.p)}")
        if self.halfdim == 2 and self.M > 32:
            raise ValueError("halfdim=2 só é suportado com M ≤ 32")
        return self

    def payload(self) -> Dict[str, Any]:
        """Parâmetros que determinam o resultado; base do run_id."""
        excluded = {"output", "format", "plot_script", "artifacts_dir"}
        return self.model_dump(mode="json", exclude=excluded)
