import json
import logging
import struct
from pathlib import Path

import numpy as np

from src.exceptions import ArgumentError, IngestionError
from src.models.grid import GridFunction
from src.utils.validators import validate_schwartz
from .base import BaseRepository

logger = logging.getLogger(__name__)

MAGIC = b"MOYGRID1"
HEADER = struct.Struct("<iid")


class GridRepository(BaseRepository[GridFunction]):
    """
    Formato MOYGRID1: magic, (halfdim, M, L) little-endian e as amostras como
    complexos de 128 bits em ordem C. Cada arquivo tem um sidecar JSON
    ``<arquivo>.json`` com os metadados.
    """

    binary = True

    def __init__(self, schwartz: bool = True):
        self.schwartz = schwartz

    def serialize(self, obj: GridFunction) -> bytes:
        header = MAGIC + HEADER.pack(obj.halfdim, obj.points, obj.extent)
        return header + np.ascontiguousarray(obj.samples, dtype="<c16").tobytes()

    def deserialize(self, content: bytes) -> GridFunction:
        offset = len(MAGIC) + HEADER.size
        if len(content) < offset or content[: len(MAGIC)] != MAGIC:
            raise IngestionError("arquivo de grade sem cabeçalho MOYGRID1")
        halfdim, points, extent = HEADER.unpack(content[len(MAGIC) : offset])
        if halfdim < 1 or points < 1:
            raise IngestionError(f"cabeçalho inválido: halfdim={halfdim}, M={points}")
        count = points ** (2 * halfdim)
        payload = content[offset:]
        if len(payload) != 16 * count:
            raise IngestionError(
                f"tamanho das amostras {len(payload)} bytes, esperado {16 * count}"
            )
        samples = np.frombuffer(payload, dtype="<c16").reshape((points,) * (2 * halfdim))
        try:
            grid = GridFunction(halfdim, points, extent, samples.astype(complex))
        except ArgumentError as exc:
            raise IngestionError(str(exc)) from exc
        return validate_schwartz(grid) if self.schwartz else grid

    @staticmethod
    def sidecar_path(path: Path) -> Path:
        return Path(path).with_name(Path(path).name + ".json")

    def save(self, obj: GridFunction, path: Path) -> Path:
        path = super().save(obj, path)
        metadata = {
            "format": MAGIC.decode("ascii"),
            "halfdim": obj.halfdim,
            "points": obj.points,
            "extent": obj.extent,
            "spacing": obj.spacing,
            "dtype": "complex128-le",
        }
        self.sidecar_path(path).write_text(json.dumps(metadata, indent=2), encoding="utf-8")
        logger.info("grade gravada em %s (N=%d, M=%d)", path, obj.halfdim, obj.points)
        return path

    def load(self, path: Path) -> GridFunction:
        grid = super().load(path)
        sidecar = self.sidecar_path(path)
        if sidecar.exists():
            try:
                metadata = json.loads(sidecar.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise IngestionError(f"sidecar JSON inválido em {sidecar}: {exc}") from exc
            if (metadata.get("halfdim"), metadata.get("points")) != (grid.halfdim, grid.points):
                raise IngestionError(f"sidecar {sidecar} não corresponde ao cabeçalho")
        return grid
