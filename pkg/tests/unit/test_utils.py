import numpy as np
import pytest

from src.exceptions import ArgumentError, ConfigError, IngestionError
from src.models.grid import GridFunction
from src.utils.helpers import fit_loglog_slope, gaussian, irrational_theta, run_identifier
from src.utils.parsers import (
    line_of,
    parse_config_file,
    parse_float_list,
    parse_int_list,
    parse_vector_list,
)
from src.utils.validators import (
    support_box,
    validate_nonnegative,
    validate_real,
    validate_schwartz,
    validate_vector,
)


def test_parse_int_list():
    """Testa parse de listas de inteiros."""
    assert parse_int_list("2, 2,3") == [2, 2, 3]
    assert parse_int_list("(2,3)") == [2, 3]
    assert parse_int_list("") == []
    with pytest.raises(ValueError):
        parse_int_list("2,x")


def test_parse_float_list():
    assert parse_float_list("[0.5, -1e-3]") == [0.5, -0.001]
    assert parse_float_list("  ") == []


def test_parse_vector_list():
    """Testa parse de vetores separados por ponto e vírgula."""
    assert parse_vector_list("4,0;8,0") == [[4.0, 0.0], [8.0, 0.0]]
    assert parse_vector_list("1,2;") == [[1.0, 2.0]]


def test_parse_config_file(tmp_path):
    """Testa leitura do arquivo chave = valor com números de linha."""
    path = tmp_path / "run.conf"
    path.write_text("# comentário\n\ntheta = 2.5\nbasis-cutoff = 3\n", encoding="utf-8")

    entries = parse_config_file(path)

    assert entries == {"theta": ("2.5", 3), "basis_cutoff": ("3", 4)}
    assert line_of(entries, "basis_cutoff") == 4
    assert line_of(entries, "seed") is None


def test_parse_config_file_malformed_line(tmp_path):
    """Testa erro com número da linha em linha sem '='."""
    path = tmp_path / "run.conf"
    path.write_text("theta = 2\nseed 3\n", encoding="utf-8")

    with pytest.raises(ConfigError) as exc_info:
        parse_config_file(path)

    assert exc_info.value.line == 2
    assert f"{path}:2:" in str(exc_info.value)


def test_parse_config_file_repeated_key(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("seed = 1\nseed = 2\n", encoding="utf-8")

    with pytest.raises(ConfigError) as exc_info:
        parse_config_file(path)

    assert exc_info.value.line == 2


def test_parse_config_file_missing(tmp_path):
    with pytest.raises(ConfigError):
        parse_config_file(tmp_path / "nao-existe.conf")


def test_validate_schwartz(standard_gaussian):
    """Testa aceitação de gaussiana e rejeição de função que não decai."""
    assert validate_schwartz(standard_gaussian) is standard_gaussian
    assert validate_schwartz(GridFunction.zeros(1, 16, 4.0)).points == 16

    wide = gaussian(1, 64, 8.0, width=3.0)
    with pytest.raises(IngestionError):
        validate_schwartz(wide)


def test_support_box(standard_gaussian):
    """Testa caixa de suporte simétrica e caso nulo."""
    box = support_box(standard_gaussian.samples, standard_gaussian.axis, 1e-8)

    assert len(box) == 2
    for low, high in box:
        assert low == pytest.approx(-high, abs=standard_gaussian.spacing)
        assert 5.0 < high < 7.0
    assert support_box(np.zeros((8, 8)), np.arange(8.0)) is None


def test_validate_vector():
    np.testing.assert_array_equal(validate_vector([1, 2], 2, "delta"), [1.0, 2.0])
    with pytest.raises(ArgumentError):
        validate_vector([1, 2, 3], 2, "delta")


def test_validate_real_and_nonnegative(standard_gaussian):
    """Testa o substituto pontual da positividade."""
    assert validate_nonnegative(standard_gaussian) is standard_gaussian

    with pytest.raises(IngestionError):
        validate_real(standard_gaussian * 1j)
    with pytest.raises(IngestionError):
        validate_nonnegative(standard_gaussian * -1.0)


def test_fit_loglog_slope():
    """Testa inclinação exata de uma lei de potência."""
    xs = [1.0, 2.0, 4.0, 8.0]
    slope, residual = fit_loglog_slope(xs, [3.0 * x**-4 for x in xs])

    assert slope == pytest.approx(-4.0)
    assert residual == pytest.approx(0.0, abs=1e-12)


def test_fit_loglog_slope_rejects_bad_points():
    with pytest.raises(ArgumentError):
        fit_loglog_slope([1.0], [1.0])
    with pytest.raises(ArgumentError):
        fit_loglog_slope([1.0, 2.0], [1.0, 0.0])


def test_run_identifier_is_stable():
    """Testa que o run_id independe da ordem das chaves."""
    first = run_identifier({"theta": 2.0, "seed": 1})
    second = run_identifier({"seed": 1, "theta": 2.0})

    assert first == second
    assert len(first) == 12
    assert run_identifier({"theta": 2.0, "seed": 2}) != first


def test_irrational_theta(rng):
    """Testa entradas irracionais e determinismo pela semente."""
    theta = irrational_theta(rng, 4)
    magnitudes = {round(abs(v), 12) for v in theta.upper()}

    assert len(theta.upper()) == 6
    assert magnitudes <= {round(1 / np.sqrt(2), 12), round((np.sqrt(5) - 1) / 2, 12)}
    assert theta.upper() == irrational_theta(np.random.default_rng(12345), 4).upper()
