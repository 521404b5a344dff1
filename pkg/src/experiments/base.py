from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from src.models.grid import GridFunction
from src.repositories.base import BaseRepository
from src.repositories.grid_repository import GridRepository
from src.schemas.experiment import Command, ExperimentConfig
from src.schemas.report import COLUMNS
from src.utils.helpers import gaussian, run_identifier

Row = Dict[str, Any]
Task = Callable[[], List[Row]]
Artifact = Tuple[BaseRepository, Any, str]


class BaseExperiment(ABC):
    """Experimento base: unidades de trabalho independentes e um relatório ordenado."""

    command: Command

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.run_id = run_identifier(config.payload())

    @property
    def columns(self) -> List[str]:
        return COLUMNS[self.command]

    def input_grid(self) -> GridFunction:
        """Grade de entrada: arquivo MOYGRID1 se informado, senão a gaussiana centrada."""
        if self.config.input_grid is not None:
            return GridRepository().load(Path(self.config.input_grid))
        return gaussian(self.config.halfdim, self.config.M, self.config.L, width=self.config.width)

    @abstractmethod
    def tasks(self) -> List[Task]:
        """
        Unidades de trabalho puras, executadas em paralelo.

        Returns:
            Lista de callables; cada um devolve linhas do relatório
        """

    def finalize(self, rows: List[Row]) -> List[Row]:
        """Pós-processamento após a junção das linhas, na ordem das tarefas."""
        return rows

    def check(self, rows: List[Row]) -> None:
        """Levanta InvariantViolation se algum defeito excede a tolerância."""

    def artifacts(self) -> List[Artifact]:
        """Objetos auxiliares gravados em --artifacts-dir: (repositório, objeto, nome do arquivo)."""
        return []
