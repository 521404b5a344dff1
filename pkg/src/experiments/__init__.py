from .base import BaseExperiment
from .factory import ExperimentFactory

__all__ = ["BaseExperiment", "ExperimentFactory"]
