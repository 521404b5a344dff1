from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.exceptions import ConfigError


def parse_int_list(value: str) -> List[int]:
    """
    Parse lista de inteiros separados por vírgula.

    Exemplo: "2, 2,3" -> [2, 2, 3]; "" -> []
    """
    clean = value.strip().strip("()[]")
    if not clean:
        return []
    try:
        return [int(item) for item in clean.split(",") if item.strip()]
    except ValueError:
        raise ValueError(f"lista de inteiros inválida: {value!r}") from None


def parse_float_list(value: str) -> List[float]:
    clean = value.strip().strip("()[]")
    if not clean:
        return []
    try:
        return [float(item) for item in clean.split(",") if item.strip()]
    except ValueError:
        raise ValueError(f"lista de reais inválida: {value!r}") from None


def parse_vector_list(value: str) -> List[List[float]]:
    """
    Parse vetores separados por ponto e vírgula.

    Exemplo: "4,0;8,0" -> [[4.0, 0.0], [8.0, 0.0]]
    """
    return [parse_float_list(chunk) for chunk in value.split(";") if chunk.strip()]


def parse_config_file(path: Path) -> Dict[str, Tuple[str, int]]:
    """
    Lê um arquivo ``chave = valor`` por linha.

    Linhas vazias e iniciadas por ``#`` são ignoradas.

    Returns:
        Mapa chave -> (valor bruto, número da linha)

    Raises:
        ConfigError: Linha malformada ou chave repetida, com o número da linha
    """
    source = str(path)
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"não foi possível ler o arquivo de configuração: {exc}") from exc

    entries: Dict[str, Tuple[str, int]] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"esperado 'chave = valor', encontrado {line!r}", number, source)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if not key:
            raise ConfigError("chave vazia", number, source)
        if key in entries:
            raise ConfigError(f"chave repetida: {key}", number, source)
        entries[key] = (value, number)
    return entries


def line_of(entries: Dict[str, Tuple[str, int]], key: str) -> Optional[int]:
    entry = entries.get(key)
    return entry[1] if entry else None
