"""Identidades do plano de Moyal na grade."""
import logging
from typing import Callable, List, Tuple

import numpy as np

from src.exceptions import InvariantViolation
from src.models.grid import GridFunction, MoyalParams
from src.repositories.grid_repository import GridRepository
from src.schemas.experiment import Command, ExperimentConfig
from src.services import moyal
from src.utils.helpers import gaussian, gaussian_mixture
from .base import Artifact, BaseExperiment, Row, Task

logger = logging.getLogger(__name__)

ORACLE_POINTS = 32
ORACLE_FINE_POINTS = 128
DILATIONS = (0.5, 2.0, 4.0)


def relative_l2(value: GridFunction, reference: GridFunction) -> float:
    scale = moyal.l2_norm(reference)
    return moyal.l2_norm(value - reference) / scale if scale else moyal.l2_norm(value)


class MoyalVerifyExperiment(BaseExperiment):
    command = Command.MOYAL_VERIFY

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.params = MoyalParams(config.theta)
        self.f = self.input_grid()
        rng = np.random.default_rng(config.seed)
        offset = rng.uniform(-0.5, 0.5, size=self.f.dimension)
        self.g = self._gaussian(width=config.width, center=offset)
        self.h = self._gaussian(width=config.width, center=-offset)

    def _gaussian(self, points: int | None = None, **kwargs) -> GridFunction:
        return gaussian(
            self.f.halfdim, points or self.f.points, self.f.extent, **kwargs
        )

    # Identidades: cada uma devolve (valor, tolerância, passou)

    def parseval(self) -> Tuple[float, float, bool]:
        expected = (2 * np.pi) ** self.f.halfdim * moyal.l2_norm(self.f)
        value = abs(moyal.l2_norm(moyal.fourier(self.f)) - expected) / expected
        return value, 1e-10, value <= 1e-10

    def duality_product(self) -> Tuple[float, float, bool]:
        """𝓕(f×g) = (2π)^{-2N}·𝓕f⋄𝓕g."""
        left = moyal.fourier(moyal.moyal_times(self.f, self.g))
        right = moyal.twisted_convolution(moyal.fourier(self.f), moyal.fourier(self.g))
        right = right * (2 * np.pi) ** (-self.f.dimension)
        value = moyal.l2_norm(left - right) / (moyal.l2_norm(self.f) * moyal.l2_norm(self.g))
        return value, 1e-6, value <= 1e-6

    def duality_convolution(self) -> Tuple[float, float, bool]:
        """𝓕(f⋄g) = 𝓕f×𝓕g."""
        left = moyal.fourier(moyal.twisted_convolution(self.f, self.g))
        right = moyal.moyal_times(moyal.fourier(self.f), moyal.fourier(self.g))
        value = moyal.l2_norm(left - right) / (moyal.l2_norm(self.f) * moyal.l2_norm(self.g))
        return value, 1e-6, value <= 1e-6

    def tracial(self) -> Tuple[float, float, bool]:
        product = moyal.moyal_star(self.f, self.g, self.params)
        pointwise = moyal.integral(self.f.with_samples(self.f.samples * self.g.samples))
        value = abs(moyal.integral(product) - pointwise)
        value /= moyal.l2_norm(self.f) * moyal.l2_norm(self.g)
        return value, 1e-5, value <= 1e-5

    def associativity(self) -> Tuple[float, float, bool]:
        star = lambda a, b: moyal.moyal_star(a, b, self.params)  # noqa: E731
        left = star(star(self.f, self.g), self.h)
        right = star(self.f, star(self.g, self.h))
        value = relative_l2(left, right)
        return value, 1e-5, value <= 1e-5

    def noncommutativity(self) -> Tuple[float, float, bool]:
        """‖f×g - g×f‖₂ deve ficar acima da tolerância."""
        value = moyal.l2_norm(
            moyal.moyal_times(self.f, self.g) - moyal.moyal_times(self.g, self.f)
        )
        return value, 1e-3, value > 1e-3

    def idempotent(self) -> Tuple[float, float, bool]:
        f0 = self._gaussian(amplitude=2.0**self.f.halfdim)
        value = relative_l2(moyal.moyal_times(f0, f0), f0)
        return value, 1e-5, value <= 1e-5

    def dilation_unitary(self) -> Tuple[float, float, bool]:
        reference = moyal.l2_norm(self.f)
        value = max(abs(moyal.l2_norm(moyal.dilate(self.f, a)) - reference) for a in (2.0, 4.0))
        value /= reference
        return value, 1e-8, value <= 1e-8

    def dilation_fourier(self) -> Tuple[float, float, bool]:
        """F∘E_a = E_{1/a}∘F para a ∈ {1/2, 2, 4}."""
        narrow = self._gaussian(width=0.7, center=0.1 * np.ones(self.f.dimension))
        transformed = moyal.symplectic_fourier(narrow)
        value = max(
            relative_l2(
                moyal.symplectic_fourier(moyal.dilate(narrow, a)),
                moyal.dilate(transformed, 1 / a),
            )
            for a in DILATIONS
        )
        return value, 1e-7, value <= 1e-7

    def scaling_oracle(self) -> Tuple[float, float, bool]:
        """
        Rota por dilatação (M=128, subamostrada) contra a quadratura direta de
        ⋆_θ em M=32, comparadas no quarto central da grade.
        """
        step = ORACLE_FINE_POINTS // ORACLE_POINTS
        centres = [np.full(self.f.dimension, 0.3), np.full(self.f.dimension, -0.2)]
        fine = moyal.moyal_star(
            self._gaussian(ORACLE_FINE_POINTS, center=centres[0]),
            self._gaussian(ORACLE_FINE_POINTS, center=centres[1]),
            self.params,
        )
        coarse = moyal.moyal_star_direct(
            self._gaussian(ORACLE_POINTS, center=centres[0]),
            self._gaussian(ORACLE_POINTS, center=centres[1]),
            self.params,
        )
        central = np.abs(coarse.axis) <= self.f.extent / 4
        window = np.ix_(*([central] * self.f.dimension))
        reference = coarse.samples[window]
        sampled = fine.samples[(slice(None, None, step),) * self.f.dimension][window]
        value = float(np.linalg.norm(sampled - reference) / np.linalg.norm(reference))
        return value, 1e-4, value <= 1e-4

    def op_norm_bound(self) -> Tuple[float, float, bool]:
        """max(estimativa - (2πθ)^{-N/2}‖f‖₂) sobre misturas gaussianas aleatórias."""
        rng = np.random.default_rng([self.config.seed, 1])
        worst = -np.inf
        for _ in range(self.config.mixtures):
            mixture = gaussian_mixture(rng, self.f.halfdim, self.f.points, self.f.extent)
            estimate = moyal.op_norm_estimate(mixture, self.params, self.config.probes)
            worst = max(worst, estimate - moyal.l2_bound(mixture, self.params))
        return float(worst), 1e-6, worst <= 1e-6

    def op_norm_idempotent(self) -> Tuple[float, float, bool]:
        f0 = self._gaussian(amplitude=2.0**self.f.halfdim)
        value = abs(moyal.op_norm_estimate(f0, MoyalParams(2.0), self.config.probes) - 1.0)
        return value, 1e-3, value <= 1e-3

    IDENTITIES = (
        "parseval",
        "duality_product",
        "duality_convolution",
        "tracial",
        "associativity",
        "noncommutativity",
        "idempotent",
        "dilation_unitary",
        "dilation_fourier",
        "scaling_oracle",
        "op_norm_bound",
        "op_norm_idempotent",
    )

    def _run_identity(self, name: str) -> List[Row]:
        identity: Callable[[], Tuple[float, float, bool]] = getattr(self, name)
        value, tolerance, passed = identity()
        logger.info("%s: %.3e (tolerância %.1e)", name, value, tolerance)
        return [
            {
                "identity": name,
                "M": self.f.points,
                "L": self.f.extent,
                "theta": self.params.theta,
                "value": float(value),
                "tolerance": tolerance,
                "passed": bool(passed),
            }
        ]

    def identities(self) -> List[str]:
        # Oráculo direto só em N = 1; em N = 2 a grade fina não cabe em memória
        if self.f.halfdim > 1:
            return [name for name in self.IDENTITIES if name != "scaling_oracle"]
        return list(self.IDENTITIES)

    def tasks(self) -> List[Task]:
        return [(lambda name=name: self._run_identity(name)) for name in self.identities()]

    def check(self, rows: List[Row]) -> None:
        for row in rows:
            if not row["passed"]:
                raise InvariantViolation(row["identity"], row["value"], row["tolerance"])

    def artifacts(self) -> List[Artifact]:
        return [(GridRepository(), self.f, "input.moygrid")]
