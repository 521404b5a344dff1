import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from src.exceptions import ArgumentError
from src.schemas.experiment import OutputFormat
from src.schemas.report import format_value

logger = logging.getLogger(__name__)

Row = Dict[str, Any]

PLOT_TEMPLATE = '''"""Gráfico gerado pelo deformkit para {command}."""
import csv

import matplotlib.pyplot as plt

with open({csv_path!r}, newline="", encoding="utf-8") as handle:
    rows = [row for row in csv.DictReader(handle) if row[{y!r}]]

xs = [float(row[{x!r}]) for row in rows]
ys = [float(row[{y!r}]) for row in rows]

fig, ax = plt.subplots()
ax.loglog(xs, ys, "o-")
ax.set_xlabel({x!r})
ax.set_ylabel({y!r})
ax.set_title({command!r})
fig.savefig({figure!r}, dpi=150)
'''

# Eixos (x, y) do gráfico por comando
PLOT_AXES = {
    "special-decay": ("m_n", "defect"),
    "delta-decay": ("delta", "defect"),
    "trace-compare": ("m_n", "lhs"),
}


class ReportRepository:
    """Escrita de relatórios em CSV, JSON ou tabela de texto, e do script de gráfico."""

    def render(self, rows: Sequence[Row], columns: List[str], fmt: OutputFormat) -> str:
        if fmt == OutputFormat.CSV:
            return self._csv(rows, columns)
        if fmt == OutputFormat.JSON:
            payload = [{c: format_value(row.get(c)) for c in columns} for row in rows]
            return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        return self.table(rows, columns)

    @staticmethod
    def _csv(rows: Sequence[Row], columns: List[str]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c)) for c in columns])
        return buffer.getvalue()

    @staticmethod
    def table(rows: Sequence[Row], columns: List[str]) -> str:
        """Tabela alinhada para o terminal."""
        cells = [[format_value(row.get(c)) for c in columns] for row in rows]
        widths = [max([len(c)] + [len(line[i]) for line in cells]) for i, c in enumerate(columns)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(v.ljust(w) for v, w in zip(line, widths)) for line in cells)
        return "\n".join(lines) + "\n"

    def write(self, rows: Sequence[Row], columns: List[str], path: Path, fmt: OutputFormat) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(rows, columns, fmt), encoding="utf-8")
        logger.info("relatório com %d linhas gravado em %s", len(rows), path)
        return path

    def write_plot_script(self, command: str, csv_path: Path, script_path: Path) -> Path:
        """Gera um script matplotlib que lê o CSV em escala log-log."""
        if command not in PLOT_AXES:
            raise ArgumentError(f"comando {command} não tem gráfico")
        x, y = PLOT_AXES[command]
        script_path = Path(script_path)
        script_path.parent.mkdir(parents=True, exist_ok=True)
        script_path.write_text(
            PLOT_TEMPLATE.format(
                command=command,
                csv_path=str(csv_path),
                x=x,
                y=y,
                figure=str(Path(csv_path).with_suffix(".png")),
            ),
            encoding="utf-8",
        )
        return script_path
