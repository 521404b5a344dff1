"""Experimentos sobre a torre de toros que aproxima o plano de Moyal."""
import logging
from typing import List

from src.config.settings import settings
from src.exceptions import InvariantViolation
from src.models.grid import GridFunction, MoyalParams
from src.models.tower import SpecialReport, TowerSpec
from src.repositories.grid_repository import GridRepository
from src.schemas.experiment import Command, ExperimentConfig
from src.services import limitcheck, moyal
from src.utils.helpers import fit_loglog_slope
from .base import Artifact, BaseExperiment, Row, Task

logger = logging.getLogger(__name__)

DELTA_SLOPE_LIMIT = -3.0


class LimitExperiment(BaseExperiment):
    """Base dos comandos da torre: grade no gauge θ = 2 e linhas no formato comum."""

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.tower = TowerSpec(tuple(config.p), config.halfdim)
        self.f = self.input_grid()

    def standard_grid(self) -> GridFunction:
        """f levada ao gauge θ = 2, onde a torre está definida."""
        return moyal.to_standard_gauge(self.f, MoyalParams(self.config.theta))

    def levels(self) -> List[int]:
        return list(range(1, self.tower.depth + 1)) or [0]

    def row(self, report: SpecialReport) -> Row:
        return {
            "run_id": self.run_id,
            "command": self.command,
            "theta": self.config.theta,
            "M": self.f.points,
            "L": self.f.extent,
            "n": report.level,
            "m_n": report.m_n,
            "delta": report.delta,
            "defect": report.defect,
            "tail_bound": report.tail_bound,
            "lhs": report.lhs,
            "rhs_a": report.rhs_a,
            "rhs_b": report.rhs_b,
            "matching": report.matching,
        }

    def fit_slope(self, rows: List[Row], x: str) -> List[Row]:
        """Inclinação log-log do defeito contra a coluna ``x``, repetida em todas as linhas."""
        points = [(row[x], row["defect"]) for row in rows if row[x] > 0 and row["defect"] > 0]
        if len(points) < 2:
            return rows
        slope, residual = fit_loglog_slope(*zip(*points))
        logger.info("inclinação log-log %.3f (resíduo %.2e)", slope, residual)
        for row in rows:
            row["slope"], row["slope_residual"] = slope, residual
        return rows

    def artifacts(self) -> List[Artifact]:
        return [(GridRepository(), self.f, "input.moygrid")]


class SpecialDecayExperiment(LimitExperiment):
    """‖a_n ⋆ a_n - b_n‖₁ ao longo da torre; deve decrescer estritamente com m_n."""

    command = Command.SPECIAL_DECAY

    def _run_level(self, f: GridFunction, n: int) -> List[Row]:
        report = limitcheck.special_defect(
            f, self.tower, n, commutative=self.config.commutative, method=self.config.method.value
        )
        logger.info("nível %d: defeito %.3e, cauda %.3e", n, report.defect, report.tail_bound)
        return [self.row(report)]

    def tasks(self) -> List[Task]:
        f = self.f if self.config.commutative else self.standard_grid()
        return [(lambda n=n: self._run_level(f, n)) for n in self.levels()]

    def finalize(self, rows: List[Row]) -> List[Row]:
        return self.fit_slope(rows, "m_n")

    def check(self, rows: List[Row]) -> None:
        for previous, current in zip(rows, rows[1:]):
            if current["defect"] >= previous["defect"]:
                raise InvariantViolation(
                    f"special_decay n={current['n']}", current["defect"], previous["defect"]
                )


class DeltaDecayExperiment(LimitExperiment):
    """‖pr_n(f_Δ × f)‖₁ contra |Δ| no nível ``level``."""

    command = Command.DELTA_DECAY

    def _run_delta(self, f: GridFunction, delta: List[float]) -> List[Row]:
        [(norm_delta, norm)] = limitcheck.delta_decay(f, [delta], self.tower, self.config.level)
        report = SpecialReport(
            level=self.config.level,
            m_n=self.tower.m[self.config.level],
            defect=norm,
            delta=norm_delta,
        )
        return [self.row(report)]

    def tasks(self) -> List[Task]:
        f = self.standard_grid()
        return [(lambda delta=delta: self._run_delta(f, delta)) for delta in self.config.deltas]

    def finalize(self, rows: List[Row]) -> List[Row]:
        rows = sorted(rows, key=lambda row: row["delta"])
        return self.fit_slope(rows, "delta")

    def check(self, rows: List[Row]) -> None:
        slope = rows[0].get("slope") if rows else None
        if slope is not None and slope > DELTA_SLOPE_LIMIT:
            raise InvariantViolation("delta_decay slope", slope, DELTA_SLOPE_LIMIT)


class TraceCompareExperiment(LimitExperiment):
    """‖f‖₂² contra as duas normalizações candidatas de τ(b_n)."""

    command = Command.TRACE_COMPARE

    def _run_level(self, f: GridFunction, n: int) -> List[Row]:
        report = limitcheck.l2_trace_compare(f, self.tower, n)
        logger.info(
            "nível %d: ‖f‖² = %.6e, rhs_a = %.6e, rhs_b = %.6e (%s)",
            n,
            report.lhs,
            report.rhs_a,
            report.rhs_b,
            report.matching,
        )
        return [self.row(report)]

    def tasks(self) -> List[Task]:
        f = self.standard_grid()
        return [(lambda n=n: self._run_level(f, n)) for n in self.levels()]

    def check(self, rows: List[Row]) -> None:
        matchings = {row["matching"] for row in rows}
        if matchings & {"none"} or len(matchings) != 1:
            worst = max(abs(row["rhs_a"] - row["lhs"]) / max(row["lhs"], 1e-300) for row in rows)
            raise InvariantViolation(
                f"trace_compare {sorted(matchings)}", worst, settings.MATCH_TOLERANCE
            )
