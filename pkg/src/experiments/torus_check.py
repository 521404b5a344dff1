"""Leis da álgebra do toro sobre pares e triplas aleatórias."""
import logging
from typing import Callable, List

import numpy as np

from src.exceptions import InvariantViolation
from src.models.covering import CoveringSpec
from src.models.torus import DeformationMatrix, TorusElement
from src.repositories.element_repository import TorusElementRepository
from src.schemas.experiment import Command
from src.services import covering, torus_core
from src.utils.helpers import irrational_theta
from .base import Artifact, BaseExperiment, Row, Task

logger = logging.getLogger(__name__)

Draw = Callable[[np.random.Generator], float]


def _relative(difference: TorusElement, *factors: TorusElement) -> float:
    scale = float(np.prod([max(torus_core.one_norm_bound(f), 1e-300) for f in factors]))
    return torus_core.one_norm_bound(difference) / scale


class TorusCheckExperiment(BaseExperiment):
    command = Command.TORUS_CHECK

    TERMS = 8
    NORM_TRIALS = 5

    # (nome, tolerância)
    CHECKS = [
        ("associativity", 1e-10),
        ("star_law", 1e-10),
        ("traciality", 1e-10),
        ("commutation", 1e-10),
        ("homomorphism", 1e-12),
        ("operator_norm", 1e-9),
    ]

    def _theta(self, rng: np.random.Generator) -> DeformationMatrix:
        return irrational_theta(rng, self.config.n)

    def _element(self, rng: np.random.Generator, theta: DeformationMatrix) -> TorusElement:
        return torus_core.random_element(rng, theta, self.config.cutoff, terms=self.TERMS)

    def _associativity(self, rng: np.random.Generator) -> float:
        theta = self._theta(rng)
        a, b, c = (self._element(rng, theta) for _ in range(3))
        left = torus_core.star_product(torus_core.star_product(a, b), c)
        right = torus_core.star_product(a, torus_core.star_product(b, c))
        return _relative(torus_core.subtract(left, right), a, b, c)

    def _star_law(self, rng: np.random.Generator) -> float:
        theta = self._theta(rng)
        a, b = self._element(rng, theta), self._element(rng, theta)
        left = torus_core.involution(torus_core.star_product(a, b))
        right = torus_core.star_product(torus_core.involution(b), torus_core.involution(a))
        return _relative(torus_core.subtract(left, right), a, b)

    def _traciality(self, rng: np.random.Generator) -> float:
        theta = self._theta(rng)
        a, b = self._element(rng, theta), self._element(rng, theta)
        ab = torus_core.trace(torus_core.star_product(a, b))
        ba = torus_core.trace(torus_core.star_product(b, a))
        scale = torus_core.one_norm_bound(a) * torus_core.one_norm_bound(b)
        return abs(ab - ba) / scale

    def _commutation(self, rng: np.random.Generator) -> float:
        theta = self._theta(rng)
        if theta.n < 2:
            return 0.0
        j, k = sorted(rng.choice(theta.n, size=2, replace=False))
        uj = torus_core.make_unitary(torus_core.unit_vector(theta.n, j), theta)
        uk = torus_core.make_unitary(torus_core.unit_vector(theta.n, k), theta)
        left = torus_core.star_product(uk, uj)
        right = torus_core.scale(
            torus_core.star_product(uj, uk), torus_core.commutator_phase(theta, j, k)
        )
        return torus_core.one_norm_bound(torus_core.subtract(left, right))

    def _homomorphism(self, rng: np.random.Generator) -> float:
        theta = self._theta(rng)
        k = self.config.k if len(self.config.k) == theta.n else [self.config.k[0]] * theta.n
        spec = CoveringSpec(theta, tuple(k))
        a, b = self._element(rng, theta), self._element(rng, theta)
        left = covering.embed(torus_core.star_product(a, b), spec)
        right = torus_core.star_product(covering.embed(a, spec), covering.embed(b, spec))
        return _relative(torus_core.subtract(left, right), a, b)

    def _operator_norm(self, rng: np.random.Generator) -> float:
        """Excesso relativo da compressão sobre o majorante ℓ¹ (zero quando a cota vale)."""
        theta = self._theta(rng)
        a = self._element(rng, theta)
        basis = max(self.config.basis_cutoff, a.cutoff)
        estimate = torus_core.approx_operator_norm(a, basis)
        bound = torus_core.one_norm_bound(a)
        return max(estimate - bound, 0.0) / bound

    def _run_check(self, index: int, name: str, tolerance: float) -> List[Row]:
        rng = np.random.default_rng([self.config.seed, index])
        draw: Draw = getattr(self, f"_{name}")
        trials = self.config.trials
        if name == "operator_norm":
            trials = min(trials, self.NORM_TRIALS)
        worst = max(draw(rng) for _ in range(trials))
        logger.info("%s: erro máximo %.3e em %d tentativas", name, worst, trials)
        return [
            {
                "check": name,
                "trials": trials,
                "max_error": float(worst),
                "tolerance": tolerance,
                "passed": bool(worst <= tolerance),
            }
        ]

    def tasks(self) -> List[Task]:
        return [
            (lambda i=i, name=name, tol=tol: self._run_check(i, name, tol))
            for i, (name, tol) in enumerate(self.CHECKS)
        ]

    def check(self, rows: List[Row]) -> None:
        for row in rows:
            if not row["passed"]:
                raise InvariantViolation(row["check"], row["max_error"], row["tolerance"])

    def artifacts(self) -> List[Artifact]:
        rng = np.random.default_rng(self.config.seed)
        sample = self._element(rng, self._theta(rng))
        return [(TorusElementRepository(), sample, "sample_element.json")]
