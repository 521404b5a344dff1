import asyncio
import logging
from pathlib import Path
from typing import List

from src.config.settings import settings
from src.exceptions import ArgumentError
from src.experiments.base import BaseExperiment, Row
from src.repositories.report_repository import ReportRepository
from src.schemas.experiment import OutputFormat

logger = logging.getLogger(__name__)


class ExperimentService:
    """Service para orquestrar a execução de experimentos e a gravação dos relatórios."""

    def __init__(self, report_repo: ReportRepository, threads: int | None = None):
        if threads is not None and threads < 1:
            raise ArgumentError(f"threads deve ser positivo, recebido {threads}")
        self.report_repo = report_repo
        self.threads = min(threads, settings.THREADS) if threads else settings.THREADS

    async def run(self, experiment: BaseExperiment) -> List[Row]:
        """
        Executa as tarefas do experimento com no máximo ``threads`` simultâneas.

        Returns:
            Linhas do relatório na ordem das tarefas, após ``finalize``
        """
        tasks = experiment.tasks()
        semaphore = asyncio.Semaphore(self.threads)

        async def run_with_limit(task):
            async with semaphore:
                return await asyncio.to_thread(task)

        logger.info(
            "%s: %d tarefas, até %d em paralelo (run_id %s)",
            experiment.command.value,
            len(tasks),
            self.threads,
            experiment.run_id,
        )
        results = await asyncio.gather(*[run_with_limit(task) for task in tasks])
        rows = [row for result in results for row in result]
        return experiment.finalize(rows)

    def write_outputs(self, experiment: BaseExperiment, rows: List[Row]) -> None:
        """Grava relatório, script de gráfico e artefatos pedidos na configuração."""
        config = experiment.config
        if config.output is not None:
            self.report_repo.write(rows, experiment.columns, config.output, config.format)

        if config.plot_script is not None:
            csv_path = config.output
            if csv_path is None or config.format != OutputFormat.CSV:
                # O script lê sempre um CSV; grava um ao lado do script
                csv_path = Path(config.plot_script).with_suffix(".csv")
                self.report_repo.write(rows, experiment.columns, csv_path, OutputFormat.CSV)
            self.report_repo.write_plot_script(
                experiment.command.value, csv_path, config.plot_script
            )

        if config.artifacts_dir is not None:
            for repository, obj, filename in experiment.artifacts():
                repository.save(obj, Path(config.artifacts_dir) / filename)
                logger.info("artefato gravado: %s", filename)

    async def execute(self, experiment: BaseExperiment) -> List[Row]:
        """
        Executa, grava as saídas e só então verifica as tolerâncias.

        Raises:
            InvariantViolation: Se algum defeito exceder a tolerância (relatório já gravado)
        """
        rows = await self.run(experiment)
        self.write_outputs(experiment, rows)
        experiment.check(rows)
        return rows
