from typing import List

import numpy as np
from pydantic import BaseModel, Field

from src.models.covering import CirclePartition
from src.models.torus import DeformationMatrix, TorusElement


class CoefficientPayload(BaseModel):
    k: List[int]
    re: float
    im: float


class TorusElementPayload(BaseModel):
    """JSON de um TorusElement; a ordem dos campos é a ordem das chaves."""

    n: int = Field(..., ge=1)
    theta_upper: List[float]
    coeffs: List[CoefficientPayload]

    @classmethod
    def from_element(cls, element: TorusElement) -> "TorusElementPayload":
        return cls(
            n=element.n,
            theta_upper=element.theta.upper(),
            coeffs=[
                CoefficientPayload(k=list(k), re=value.real, im=value.imag)
                for k, value in element.items()
            ],
        )

    def to_element(self) -> TorusElement:
        theta = DeformationMatrix.from_upper(self.n, self.theta_upper)
        terms = {}
        for coefficient in self.coeffs:
            key = tuple(coefficient.k)
            if len(key) != self.n:
                raise ValueError(f"índice {key} incompatível com n={self.n}")
            if key in terms:
                raise ValueError(f"índice repetido: {key}")
            terms[key] = complex(coefficient.re, coefficient.im)
        return TorusElement.from_terms(theta, terms)


class CirclePartitionPayload(BaseModel):
    fold: int = Field(..., ge=1)
    grid_size: int
    fourier_cutoff: int
    samples_e1: List[float]
    samples_e2: List[float]
    fourier_e1: List[List[float]]
    fourier_e2: List[List[float]]
    residual: float

    @staticmethod
    def _pairs(values: np.ndarray) -> List[List[float]]:
        return [[float(v.real), float(v.imag)] for v in values]

    @classmethod
    def from_partition(cls, partition: CirclePartition) -> "CirclePartitionPayload":
        return cls(
            fold=partition.fold,
            grid_size=partition.grid_size,
            fourier_cutoff=partition.fourier_cutoff,
            samples_e1=[float(v) for v in partition.samples_e1],
            samples_e2=[float(v) for v in partition.samples_e2],
            fourier_e1=cls._pairs(partition.fourier_e1),
            fourier_e2=cls._pairs(partition.fourier_e2),
            residual=partition.residual,
        )
