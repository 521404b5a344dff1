from typing import Dict, List, Type

from src.schemas.experiment import Command, ExperimentConfig
from .base import BaseExperiment
from .covering_verify import CoveringVerifyExperiment
from .limit_experiments import (
    DeltaDecayExperiment,
    SpecialDecayExperiment,
    TraceCompareExperiment,
)
from .moyal_verify import MoyalVerifyExperiment
from .torus_check import TorusCheckExperiment


class ExperimentFactory:
    """Factory para criar o experimento de cada comando."""

    _experiments: Dict[Command, Type[BaseExperiment]] = {
        Command.TORUS_CHECK: TorusCheckExperiment,
        Command.COVERING_VERIFY: CoveringVerifyExperiment,
        Command.MOYAL_VERIFY: MoyalVerifyExperiment,
        Command.SPECIAL_DECAY: SpecialDecayExperiment,
        Command.DELTA_DECAY: DeltaDecayExperiment,
        Command.TRACE_COMPARE: TraceCompareExperiment,
    }

    @classmethod
    def create(cls, config: ExperimentConfig) -> BaseExperiment:
        """
        Cria o experimento do comando configurado.

        Raises:
            ValueError: Se o comando não tiver experimento registrado
        """
        experiment_class = cls._experiments.get(config.command)

        if not experiment_class:
            raise ValueError(f"Experimento não implementado para comando: {config.command}")

        return experiment_class(config)

    @classmethod
    def get_available_commands(cls) -> List[str]:
        return [command.value for command in cls._experiments]
