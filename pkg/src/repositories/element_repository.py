from pydantic import ValidationError

from src.exceptions import IngestionError
from src.models.covering import CirclePartition
from src.models.torus import TorusElement
from src.schemas.serialization import CirclePartitionPayload, TorusElementPayload
from .base import BaseRepository


class TorusElementRepository(BaseRepository[TorusElement]):
    """JSON {"n", "theta_upper", "coeffs": [{"k", "re", "im"}]}."""

    def serialize(self, obj: TorusElement) -> str:
        return TorusElementPayload.from_element(obj).model_dump_json(indent=2)

    def deserialize(self, content: str) -> TorusElement:
        try:
            return TorusElementPayload.model_validate_json(content).to_element()
        except (ValidationError, ValueError) as exc:
            raise IngestionError(f"elemento do toro inválido: {exc}") from exc


class PartitionRepository(BaseRepository[CirclePartitionPayload]):
    """Exportação das partições do círculo; o resultado lido é o payload, não a partição."""

    def serialize(self, obj: CirclePartition | CirclePartitionPayload) -> str:
        if isinstance(obj, CirclePartition):
            obj = CirclePartitionPayload.from_partition(obj)
        return obj.model_dump_json(indent=2)

    def deserialize(self, content: str) -> CirclePartitionPayload:
        try:
            return CirclePartitionPayload.model_validate_json(content)
        except ValidationError as exc:
            raise IngestionError(f"partição inválida: {exc}") from exc
