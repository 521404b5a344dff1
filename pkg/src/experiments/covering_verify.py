"""Identidade da soma de recobrimento para cada elemento do grupo de deck."""
import logging
from typing import Dict, List, Tuple

import numpy as np

from src.config.settings import settings
from src.exceptions import InvariantViolation
from src.models.covering import CirclePartition, CoveringSpec, DeckElement
from src.repositories.element_repository import PartitionRepository
from src.schemas.experiment import Command, ExperimentConfig
from src.services import covering
from src.utils.helpers import irrational_theta
from .base import Artifact, BaseExperiment, Row, Task

logger = logging.getLogger(__name__)


class CoveringVerifyExperiment(BaseExperiment):
    """
    D_g para todo g no cutoff pedido e na metade dele.

    O defeito precisa ficar abaixo do majorante de truncamento e cair quando
    o cutoff dobra, exceto quando a metade já está no nível de ruído.
    """

    command = Command.COVERING_VERIFY

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        theta = irrational_theta(np.random.default_rng(config.seed), len(config.k))
        self.spec = CoveringSpec(theta, tuple(config.k))
        self._partitions: Dict[Tuple[int, int], CirclePartition] = {}

    @property
    def half_cutoff(self) -> int:
        return self.config.cutoff // 2

    def partition(self, fold: int, cutoff: int | None = None) -> CirclePartition:
        cutoff = self.config.cutoff if cutoff is None else cutoff
        if (fold, cutoff) not in self._partitions:
            self._partitions[fold, cutoff] = covering.build_circle_partition(
                fold, fourier_cutoff=cutoff
            )
        return self._partitions[fold, cutoff]

    def partitions(self, cutoff: int | None = None) -> List[CirclePartition]:
        return [self.partition(kj, cutoff) for kj in self.spec.k]

    def _run_element(
        self,
        g: DeckElement,
        partitions: List[CirclePartition],
        half: List[CirclePartition] | None,
    ) -> List[Row]:
        report = covering.covering_report(self.spec, partitions, g)
        row = {
            "k": report.k,
            "cutoff": report.cutoff,
            "g": report.g,
            "defect": report.defect,
            "residual": report.residual,
            "truncation_bound": report.truncation_bound,
        }
        if half is not None:
            row["half_defect"] = covering.covering_sum_defect(self.spec, half, g)
        return [row]

    def tasks(self) -> List[Task]:
        # Partições construídas antes da execução paralela
        partitions = self.partitions()
        half = self.partitions(self.half_cutoff) if self.half_cutoff >= 1 else None
        return [
            (lambda g=g: self._run_element(g, partitions, half))
            for g in self.spec.deck_elements()
        ]

    def check(self, rows: List[Row]) -> None:
        for row in rows:
            allowed = row["truncation_bound"] + settings.COVERING_SLACK
            if row["defect"] > allowed:
                raise InvariantViolation(f"covering_sum g={row['g']}", row["defect"], allowed)
            half = row.get("half_defect")
            if half is None or half <= settings.COVERING_SLACK:
                continue
            if row["defect"] >= half:
                raise InvariantViolation(
                    f"covering_sum g={row['g']} sem queda ao dobrar o cutoff", row["defect"], half
                )

    def artifacts(self) -> List[Artifact]:
        return [
            (PartitionRepository(), self.partition(kj), f"partition_fold{kj}.json")
            for kj in sorted(set(self.spec.k))
        ]
