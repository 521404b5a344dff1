from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, TypeVar

from src.exceptions import IngestionError

ModelType = TypeVar("ModelType")


class BaseRepository(Generic[ModelType], ABC):
    """Repository base de persistência em arquivo: (de)serialização + leitura/escrita."""

    binary: bool = False

    @abstractmethod
    def serialize(self, obj: ModelType) -> bytes | str:
        """Converte o objeto no conteúdo do arquivo."""

    @abstractmethod
    def deserialize(self, content: bytes | str) -> ModelType:
        """Reconstrói o objeto a partir do conteúdo do arquivo."""

    def save(self, obj: ModelType, path: Path) -> Path:
        """Grava o objeto, criando diretórios intermediários."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        content = self.serialize(obj)
        if self.binary:
            path.write_bytes(content)
        else:
            path.write_text(content, encoding="utf-8")
        return path

    def load(self, path: Path) -> ModelType:
        """
        Lê o objeto gravado em ``path``.

        Raises:
            IngestionError: Se o arquivo não existe ou não pode ser lido
        """
        path = Path(path)
        try:
            content = path.read_bytes() if self.binary else path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IngestionError(f"não foi possível ler {path}: {exc}") from exc
        return self.deserialize(content)
