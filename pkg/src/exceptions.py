"""Exceções do deformkit.

Cada classe corresponde a um código de saída da CLI (ver ``src.main``).
"""


class DeformkitError(Exception):
    """Base de todas as exceções do projeto."""


class ArgumentError(DeformkitError, ValueError):
    """Argumento inválido: dimensão, matriz de deformação ou faixa incompatível."""


class ConfigError(ArgumentError):
    """Configuração de experimento inválida."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        if line is not None:
            prefix = f"{source or 'config'}:{line}: "
            message = prefix + message
        super().__init__(message)


class IngestionError(DeformkitError, ValueError):
    """Dado de entrada malformado ou fora da classe de Schwartz declarada."""


class NumericRangeError(DeformkitError, ArithmeticError):
    """Operação numérica excedeu a faixa representável na grade."""


class InvariantViolation(DeformkitError):
    """Um defeito medido ficou acima da tolerância do invariante."""

    def __init__(self, invariant: str, value: float, tolerance: float):
        self.invariant = invariant
        self.value = value
        self.tolerance = tolerance
        super().__init__(
            f"invariante '{invariant}' violado: {value:.3e} > {tolerance:.3e}"
        )
