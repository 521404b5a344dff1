"""Colunas dos relatórios por comando."""
from enum import Enum
from typing import Any, Dict, List

from src.schemas.experiment import Command

TORUS_COLUMNS = ["check", "trials", "max_error", "tolerance", "passed"]

COVERING_COLUMNS = [
    "k",
    "cutoff",
    "g",
    "defect",
    "half_defect",
    "residual",
    "truncation_bound",
]

MOYAL_COLUMNS = ["identity", "M", "L", "theta", "value", "tolerance", "passed"]

LIMIT_COLUMNS = [
    "run_id",
    "command",
    "theta",
    "M",
    "L",
    "n",
    "m_n",
    "delta",
    "defect",
    "tail_bound",
    "slope",
    "slope_residual",
    "lhs",
    "rhs_a",
    "rhs_b",
    "matching",
]

COLUMNS: Dict[Command, List[str]] = {
    Command.TORUS_CHECK: TORUS_COLUMNS,
    Command.COVERING_VERIFY: COVERING_COLUMNS,
    Command.MOYAL_VERIFY: MOYAL_COLUMNS,
    Command.SPECIAL_DECAY: LIMIT_COLUMNS,
    Command.DELTA_DECAY: LIMIT_COLUMNS,
    Command.TRACE_COMPARE: LIMIT_COLUMNS,
}


def format_value(value: Any) -> str:
    """Representação textual estável: reais com 12 dígitos significativos, tuplas com ';'."""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12e}"
    if isinstance(value, (tuple, list)):
        return ";".join(format_value(v) for v in value)
    return str(value)
