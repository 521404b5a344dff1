import csv
import json

import pytest

from src.exceptions import ConfigError
from src.main import (
    EXIT_CONFIG,
    EXIT_INVARIANT,
    EXIT_NUMERIC,
    EXIT_OK,
    build_config,
    build_parser,
    main,
)
from src.repositories.grid_repository import GridRepository
from src.utils.helpers import gaussian


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def test_torus_check_ok(capsys):
    """Testa execução bem-sucedida com tabela no stdout."""
    code = main(["torus-check", "--n", "2", "--trials", "2", "--seed", "1"])

    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == ["check", "trials", "max_error", "tolerance", "passed"]
    assert "associativity" in out


def test_invalid_flag_value():
    """Testa código 2 para parâmetro inválido."""
    assert main(["moyal-verify", "--theta", "-1"]) == EXIT_CONFIG


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["rotate-torus"])


def test_config_file_error_has_line(tmp_path, caplog):
    """Testa erro de configuração com o número da linha do arquivo."""
    path = tmp_path / "run.conf"
    path.write_text("# torre\np = 2,2\nM = 63\n", encoding="utf-8")

    code = main(["special-decay", "--config", str(path)])

    assert code == EXIT_CONFIG
    assert f"{path}:3:" in caplog.text


def test_config_file_malformed(tmp_path, caplog):
    path = tmp_path / "run.conf"
    path.write_text("seed = 1\ntrials\n", encoding="utf-8")

    assert main(["torus-check", "--config", str(path)]) == EXIT_CONFIG
    assert f"{path}:2:" in caplog.text


def test_flags_override_config_file(tmp_path):
    """Testa precedência das flags sobre o arquivo."""
    path = tmp_path / "run.conf"
    path.write_text("seed = 1\ntrials = 5\n", encoding="utf-8")
    args = build_parser().parse_args(["torus-check", "--config", str(path), "--seed", "9"])

    config = build_config(args)

    assert config.seed == 9
    assert config.trials == 5


def test_flag_error_has_no_line(tmp_path):
    """Testa que erro vindo de flag não aponta linha do arquivo."""
    path = tmp_path / "run.conf"
    path.write_text("seed = 1\n", encoding="utf-8")
    args = build_parser().parse_args(["torus-check", "--config", str(path), "--trials", "0"])

    with pytest.raises(ConfigError) as exc_info:
        build_config(args)

    assert exc_info.value.line is None
    assert "trials" in str(exc_info.value)


def test_invariant_violation_writes_report(tmp_path):
    """Testa código 3 com o relatório gravado antes da falha."""
    output = tmp_path / "delta.csv"

    code = main(
        [
            "delta-decay",
            "--M", "128",
            "--L", "32",
            "--deltas", "0.5,0;1,0",
            "--output", str(output),
        ]
    )

    assert code == EXIT_INVARIANT
    rows = read_csv(output)
    assert [float(row["delta"]) for row in rows] == [0.5, 1.0]
    assert float(rows[0]["slope"]) > -3


def test_numeric_range_error():
    """Testa código 4 quando a dilatação sai da grade."""
    code = main(["trace-compare", "--theta", "0.5", "--M", "64", "--L", "16"])

    assert code == EXIT_NUMERIC


def test_bad_input_grid(tmp_path):
    path = tmp_path / "f.moygrid"
    path.write_bytes(b"garbage")

    assert main(["trace-compare", "--input-grid", str(path)]) == EXIT_CONFIG


def test_input_grid(tmp_path):
    """Testa leitura da grade de entrada MOYGRID1."""
    path = GridRepository().save(gaussian(1, 128, 24.0), tmp_path / "f.moygrid")
    output = tmp_path / "trace.json"

    code = main(
        ["trace-compare", "--input-grid", str(path), "--output", str(output), "--format", "json"]
    )

    assert code == EXIT_OK
    [row] = json.loads(output.read_text(encoding="utf-8"))
    assert row["n"] == "0"
    assert row["M"] == "128"
    assert row["matching"] == "rhs_a"


def test_empty_tower(tmp_path):
    """Testa --p sem valor: uma única linha em n = 0."""
    output = tmp_path / "special.csv"

    code = main(["special-decay", "--p", "--M", "128", "--output", str(output)])

    assert code == EXIT_OK
    rows = read_csv(output)
    assert len(rows) == 1
    assert rows[0]["n"] == "0"
    assert rows[0]["m_n"] == "1"


def test_deterministic_reports(tmp_path):
    """Testa que duas execuções idênticas geram o mesmo CSV."""
    outputs = [tmp_path / "first.csv", tmp_path / "second.csv"]
    for output in outputs:
        code = main(
            ["special-decay", "--p", "2,2", "--M", "128", "--threads", "2", "--output", str(output)]
        )
        assert code == EXIT_OK

    first, second = (output.read_text(encoding="utf-8") for output in outputs)
    assert first == second
    rows = read_csv(outputs[0])
    assert len({row["run_id"] for row in rows}) == 1


def test_plot_script_and_artifacts(tmp_path):
    """Testa script de gráfico e diretório de artefatos."""
    output = tmp_path / "special.csv"
    script = tmp_path / "plot.py"
    artifacts = tmp_path / "artifacts"

    code = main(
        [
            "special-decay",
            "--p", "2",
            "--M", "128",
            "--output", str(output),
            "--plot-script", str(script),
            "--artifacts-dir", str(artifacts),
        ]
    )

    assert code == EXIT_OK
    assert repr(str(output)) in script.read_text(encoding="utf-8")
    assert (artifacts / "input.moygrid").exists()
    assert (artifacts / "input.moygrid.json").exists()
