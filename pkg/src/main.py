import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.config.settings import settings
from src.exceptions import (
    ArgumentError,
    ConfigError,
    IngestionError,
    InvariantViolation,
    NumericRangeError,
)
from src.experiments.factory import ExperimentFactory
from src.repositories.report_repository import ReportRepository
from src.schemas.experiment import ExperimentConfig, OutputFormat, PeriodizationMethod
from src.services.experiment_service import ExperimentService
from src.utils.parsers import line_of, parse_config_file

# Configuração de logging
logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_INVARIANT = 3
EXIT_NUMERIC = 4

# (flag, ajuda); o destino é o nome do campo de ExperimentConfig
PARAMETER_FLAGS = [
    ("--theta", "parâmetro θ do produto de Moyal"),
    ("--n", "dimensão do toro em torus-check"),
    ("--k", "graus do recobrimento, ex.: 2,3"),
    ("--M", "pontos por eixo da grade"),
    ("--L", "extensão da grade"),
    ("--cutoff", "cutoff de Fourier"),
    ("--basis-cutoff", "cutoff da base na estimativa de norma"),
    ("--deltas", "translações Δ, ex.: 4,0;8,0"),
    ("--level", "nível da torre em delta-decay"),
    ("--seed", "semente dos sorteios"),
    ("--trials", "tentativas por lei em torus-check"),
    ("--mixtures", "misturas gaussianas em moyal-verify"),
    ("--probes", "iterações da estimativa de norma de operador"),
    ("--width", "largura da gaussiana de entrada"),
    ("--halfdim", "N, com ℝ^{2N}"),
]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="arquivo chave = valor")
    common.add_argument("--threads", type=int, help="tarefas em paralelo")
    for flag, help_text in PARAMETER_FLAGS:
        common.add_argument(flag, help=help_text)
    common.add_argument(
        "--p", nargs="?", const="", help="fatores da torre, ex.: 2,2,2 (vazio: só o nível 0)"
    )
    common.add_argument("--method", choices=[m.value for m in PeriodizationMethod])
    common.add_argument("--commutative", action="store_true", help="variante Θ = 0")
    common.add_argument("--output", type=Path, help="arquivo do relatório")
    common.add_argument("--format", choices=[f.value for f in OutputFormat])
    common.add_argument("--plot-script", type=Path, help="script matplotlib a gerar")
    common.add_argument("--input-grid", type=Path, help="grade MOYGRID1 de entrada")
    common.add_argument("--artifacts-dir", type=Path, help="diretório de artefatos")

    parser = argparse.ArgumentParser(
        prog="deformkit",
        description="Verificações numéricas de toros não comutativos e do plano de Moyal",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in ExperimentFactory.get_available_commands():
        subparsers.add_parser(command, parents=[common])
    return parser


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Mescla arquivo de configuração e flags (flags têm precedência) e valida.

    Raises:
        ConfigError: Com o número da linha quando o erro vem do arquivo
    """
    flags: Dict[str, Any] = vars(args).copy()
    flags.pop("threads", None)
    config_path: Optional[Path] = flags.pop("config", None)

    entries = parse_config_file(config_path) if config_path is not None else {}
    values: Dict[str, Any] = {key: value for key, (value, _) in entries.items()}
    values.update(flags)

    try:
        return ExperimentConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else ""
        line = line_of(entries, field) if field not in flags else None
        message = f"{field}: {error['msg']}" if field else error["msg"]
        raise ConfigError(message, line, str(config_path) if line else None) from exc


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args)
        experiment = ExperimentFactory.create(config)
        service = ExperimentService(ReportRepository(), getattr(args, "threads", None))
        rows = asyncio.run(service.execute(experiment))
    except InvariantViolation as e:
        logger.error(str(e))
        return EXIT_INVARIANT
    except NumericRangeError as e:
        logger.error(f"Faixa numérica excedida: {e}")
        return EXIT_NUMERIC
    except (ConfigError, ArgumentError, IngestionError) as e:
        logger.error(f"Configuração inválida: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.error(f"Erro não tratado: {e}", exc_info=True)
        return EXIT_UNEXPECTED

    sys.stdout.write(ReportRepository.table(rows, experiment.columns))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
