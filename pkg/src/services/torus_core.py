"""Álgebra do toro não comutativo no quadro de Fourier.

Produto torcido (f⋆g)(p) = Σ_{r+s=p} f(r) g(s) e^{-πi r·Θs}, involução
f*(p) = conj(f(-p)) e traço τ(f) = f(0).
"""
import logging
from functools import reduce
from typing import Sequence, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator

from src.config.settings import settings
from src.exceptions import ArgumentError
from src.models.torus import DeformationMatrix, LatticeIndex, TorusElement

logger = logging.getLogger(__name__)


def _require_same_theta(a: TorusElement, b: TorusElement) -> None:
    if not a.theta.matches(b.theta):
        raise ArgumentError("elementos com matrizes de deformação diferentes")


def _separable_phase(weights: np.ndarray, cutoff: int, extended: bool) -> np.ndarray:
    """Array e^{-πi Σ_j w_j s_j} sobre a caixa max|s_j| ≤ cutoff."""
    index = np.arange(-cutoff, cutoff + 1)
    factors = []
    for w in weights:
        if extended:
            exponent = (np.longdouble(w) * index.astype(np.longdouble)) % 2
            factors.append(np.exp(-1j * np.pi * exponent.astype(float)))
        else:
            factors.append(np.exp(-1j * np.pi * w * index))
    return reduce(np.multiply.outer, factors)


def make_unitary(k: LatticeIndex, theta: DeformationMatrix) -> TorusElement:
    """
    Unitário U_k, com coeficiente 1 no índice k.

    Raises:
        ArgumentError: Se len(k) != theta.n
    """
    if len(k) != theta.n:
        raise ArgumentError(f"índice {tuple(k)} incompatível com dimensão {theta.n}")
    return TorusElement.from_terms(theta, {tuple(int(c) for c in k): 1.0})


def star_product(a: TorusElement, b: TorusElement) -> TorusElement:
    """
    Produto torcido a ⋆_Θ b.

    O resultado tem cutoff a.cutoff + b.cutoff. Itera sobre os coeficientes
    não nulos do operando mais esparso.

    Raises:
        ArgumentError: Se as matrizes de deformação diferirem
    """
    _require_same_theta(a, b)
    n = a.n
    ka, kb = a.cutoff, b.cutoff
    size = 2 * (ka + kb) + 1
    result = np.zeros((size,) * n, dtype=complex)
    extended = n * max(ka, kb) ** 2 > settings.EXTENDED_PRECISION_THRESHOLD
    entries = a.theta.entries.astype(np.longdouble if extended else float)

    if a.nonzero_count <= b.nonzero_count:
        for r, value in a.items():
            weights = entries.T @ np.asarray(r, dtype=entries.dtype)
            window = tuple(slice(c + ka, c + ka + 2 * kb + 1) for c in r)
            result[window] += value * _separable_phase(weights, kb, extended) * b.coeffs
    else:
        for s, value in b.items():
            weights = entries @ np.asarray(s, dtype=entries.dtype)
            window = tuple(slice(c + kb, c + kb + 2 * ka + 1) for c in s)
            result[window] += value * _separable_phase(weights, ka, extended) * a.coeffs

    return TorusElement.from_dense(a.theta, result)


def involution(a: TorusElement) -> TorusElement:
    """a*(p) = conj(a(-p))."""
    return TorusElement(a.theta, np.conj(np.flip(a.coeffs)), a.cutoff)


def trace(a: TorusElement) -> complex:
    """Estado traço: coeficiente na origem."""
    return complex(a.coeffs[(a.cutoff,) * a.n])


def l2_inner(a: TorusElement, b: TorusElement) -> complex:
    """
    ⟨a, b⟩ = τ(a* ⋆ b).

    Na soma r + s = 0 a fase e^{-πi r·Θ(-r)} é 1, logo o valor é Σ conj(a_k) b_k.
    """
    _require_same_theta(a, b)
    cutoff = max(a.cutoff, b.cutoff)
    return complex(np.vdot(a.padded(cutoff), b.padded(cutoff)))


def one_norm_bound(a: TorusElement) -> float:
    """Σ|c_l|, majorante da norma de operador."""
    return float(np.abs(a.coeffs).sum())


def add(a: TorusElement, b: TorusElement) -> TorusElement:
    _require_same_theta(a, b)
    cutoff = max(a.cutoff, b.cutoff)
    return TorusElement.from_dense(a.theta, a.padded(cutoff) + b.padded(cutoff))


def subtract(a: TorusElement, b: TorusElement) -> TorusElement:
    _require_same_theta(a, b)
    cutoff = max(a.cutoff, b.cutoff)
    return TorusElement.from_dense(a.theta, a.padded(cutoff) - b.padded(cutoff))


def scale(a: TorusElement, factor: complex) -> TorusElement:
    return TorusElement(a.theta, factor * np.asarray(a.coeffs), a.cutoff)


def truncate(a: TorusElement, cutoff: int) -> Tuple[TorusElement, float]:
    """
    Re-trunca em max|k_j| ≤ cutoff.

    Returns:
        Elemento truncado e a cauda ℓ¹ descartada
    """
    if cutoff < 0:
        raise ArgumentError(f"cutoff negativo: {cutoff}")
    if cutoff >= a.cutoff:
        return TorusElement(a.theta, a.padded(cutoff), cutoff), 0.0
    offset = a.cutoff - cutoff
    window = (slice(offset, offset + 2 * cutoff + 1),) * a.n
    mask = np.ones(a.coeffs.shape, dtype=bool)
    mask[window] = False
    tail = float(np.abs(a.coeffs[mask]).sum())
    return TorusElement(a.theta, np.asarray(a.coeffs)[window], cutoff), tail


def axis_series(theta: DeformationMatrix, axis: int, coefficients: np.ndarray) -> TorusElement:
    """Elemento Σ_m c_m U_{m e_axis}: cálculo funcional de uma série do círculo no gerador ``axis``."""
    if not 0 <= axis < theta.n:
        raise ArgumentError(f"eixo {axis} fora da dimensão {theta.n}")
    coefficients = np.asarray(coefficients, dtype=complex)
    cutoff = (coefficients.size - 1) // 2
    dense = np.zeros((2 * cutoff + 1,) * theta.n, dtype=complex)
    line = [cutoff] * theta.n
    line[axis] = slice(None)
    dense[tuple(line)] = coefficients
    return TorusElement(theta, dense, cutoff)


def random_element(
    rng: np.random.Generator,
    theta: DeformationMatrix,
    cutoff: int,
    terms: int | None = None,
) -> TorusElement:
    """Elemento aleatório; ``terms`` limita o número de coeficientes não nulos."""
    shape = (2 * cutoff + 1,) * theta.n
    values = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if terms is not None:
        keep = np.zeros(values.size, dtype=bool)
        keep[rng.choice(values.size, size=min(terms, values.size), replace=False)] = True
        values = np.where(keep.reshape(shape), values, 0.0)
    return TorusElement(theta, values, cutoff)


def left_multiplication_operator(a: TorusElement, basis_cutoff: int) -> LinearOperator:
    """
    Compressão de ξ ↦ a ⋆ ξ à base truncada {ξ_s : max|s_j| ≤ basis_cutoff}.

    Entrada da matriz: M[p, s] = a(p-s)·e^{-πi (p-s)·Θs}.
    """
    if basis_cutoff < a.cutoff:
        raise ArgumentError(
            f"basis_cutoff {basis_cutoff} menor que o cutoff do elemento {a.cutoff}"
        )
    n = a.n
    width = 2 * basis_cutoff + 1
    shape = (width,) * n
    entries = a.theta.entries
    terms = []
    for r, value in a.items():
        phase = _separable_phase(entries.T @ np.asarray(r, dtype=float), basis_cutoff, False)
        source = tuple(slice(max(0, -c), width - max(0, c)) for c in r)
        target = tuple(slice(max(0, c), width - max(0, -c)) for c in r)
        terms.append((value, phase, source, target))

    def matvec(x: np.ndarray) -> np.ndarray:
        grid = np.asarray(x, dtype=complex).reshape(shape)
        out = np.zeros(shape, dtype=complex)
        for value, phase, source, target in terms:
            out[target] += value * (phase * grid)[source]
        return out.ravel()

    def rmatvec(y: np.ndarray) -> np.ndarray:
        grid = np.asarray(y, dtype=complex).reshape(shape)
        out = np.zeros(shape, dtype=complex)
        for value, phase, source, target in terms:
            out[source] += np.conj(value) * np.conj(phase[source]) * grid[target]
        return out.ravel()

    size = width ** n
    return LinearOperator((size, size), matvec=matvec, rmatvec=rmatvec, dtype=complex)


def approx_operator_norm(a: TorusElement, basis_cutoff: int) -> float:
    """
    Maior valor singular da compressão de a à base truncada.

    Iteração de potência sobre MᴴM a partir do vetor constante normalizado;
    para após POWER_MAX_ITER iterações ou variação relativa < POWER_TOL.
    """
    operator = left_multiplication_operator(a, basis_cutoff)
    x = np.ones(operator.shape[1], dtype=complex)
    x /= np.linalg.norm(x)
    sigma = 0.0
    for iteration in range(settings.POWER_MAX_ITER):
        y = operator.matvec(x)
        estimate = float(np.linalg.norm(y))
        converged = sigma > 0 and abs(estimate - sigma) <= settings.POWER_TOL * estimate
        sigma = max(sigma, estimate)
        if converged or estimate == 0.0:
            logger.debug("iteração de potência convergiu em %d passos", iteration + 1)
            break
        x = operator.rmatvec(y)
        x /= np.linalg.norm(x)
    return sigma


def commutator_phase(theta: DeformationMatrix, j: int, k: int) -> complex:
    """e^{2πiΘ_jk}, fator de U_{e_k} U_{e_j} = e^{2πiΘ_jk} U_{e_j} U_{e_k}."""
    return complex(np.exp(2j * np.pi * theta.entries[j, k]))


def unit_vector(n: int, axis: int) -> Tuple[int, ...]:
    return tuple(1 if i == axis else 0 for i in range(n))


def total(elements: Sequence[TorusElement]) -> TorusElement:
    """Soma em árvore par-a-par, com ordem determinística."""
    if not elements:
        raise ArgumentError("soma vazia")
    level = list(elements)
    while len(level) > 1:
        paired = [add(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]
