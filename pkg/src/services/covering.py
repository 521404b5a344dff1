"""Projeções de recobrimento finitas entre toros não comutativos.

Mergulho u_j ↦ v_j^{k_j}, ação do grupo de deck, projeção invariante,
partição da unidade do círculo e a identidade da soma de recobrimento
Σ_ι β_ι ⋆ g(α_ι) = δ_{g,e}.
"""
import itertools
import logging
from typing import List, Literal, Sequence, Tuple

import numpy as np
import scipy.fft

from src.config.settings import settings
from src.exceptions import ArgumentError
from src.models.covering import CirclePartition, CoveringReport, CoveringSpec, DeckElement
from src.models.torus import DeformationMatrix, TorusElement
from src.services import torus_core

logger = logging.getLogger(__name__)

PartitionIndex = Tuple[Tuple[int, int], ...]

# Janelas levantadas Ũ_1 = (-π-1/2, 1/2) e Ũ_2 = (-1/2, π+1/2)
WINDOWS = {1: (-np.pi - 0.5, 0.5), 2: (-0.5, np.pi + 0.5)}


def _require_theta(a: TorusElement, theta: DeformationMatrix, role: str) -> None:
    if not a.theta.matches(theta):
        raise ArgumentError(f"elemento não pertence à álgebra {role}")


def _axis_phases(values: Sequence[float], cutoff: int, denominators: Sequence[float]) -> np.ndarray:
    """Produto externo de e^{2πi l_j x_j / d_j} para |l_j| ≤ cutoff."""
    index = np.arange(-cutoff, cutoff + 1)
    factors = [np.exp(2j * np.pi * x * index / d) for x, d in zip(values, denominators)]
    result = factors[0]
    for factor in factors[1:]:
        result = np.multiply.outer(result, factor)
    return result


def embed(a: TorusElement, spec: CoveringSpec) -> TorusElement:
    """
    Mergulho C(T^n_Θ) → C(T^n_Θ̃): coeficiente em l vai para (k_1 l_1, …, k_n l_n).

    Raises:
        ArgumentError: Se a não estiver na álgebra base
    """
    _require_theta(a, spec.base_theta, "base")
    cutoff = a.cutoff * max(spec.k)
    dense = np.zeros((2 * cutoff + 1,) * spec.n, dtype=complex)
    window = tuple(
        slice(cutoff - a.cutoff * kj, cutoff + a.cutoff * kj + 1, kj) for kj in spec.k
    )
    dense[window] = a.coeffs
    return TorusElement(spec.cover_theta, dense, cutoff)


def descend(a: TorusElement, spec: CoveringSpec, atol: float = 1e-12) -> TorusElement:
    """
    Inverso de ``embed`` na subálgebra invariante.

    Raises:
        ArgumentError: Se a tiver coeficientes fora da sub-rede k·ℤ^n
    """
    _require_theta(a, spec.cover_theta, "de recobrimento")
    peak = float(np.abs(a.coeffs).max()) if a.coeffs.size else 0.0
    terms = {}
    for l, value in a.items():
        if any(c % kj for c, kj in zip(l, spec.k)):
            if abs(value) > atol * max(peak, 1.0):
                raise ArgumentError(f"coeficiente não invariante no índice {l}")
            continue
        terms[tuple(c // kj for c, kj in zip(l, spec.k))] = value
    cutoff = max(a.cutoff // kj for kj in spec.k)
    return TorusElement.from_terms(spec.base_theta, terms, cutoff=cutoff)


def deck_action(g: DeckElement, a: TorusElement, spec: CoveringSpec) -> TorusElement:
    """Coeficiente em l multiplicado por e^{2πi Σ_j p_j l_j / k_j}."""
    _require_theta(a, spec.cover_theta, "de recobrimento")
    if len(g.p) != spec.n:
        raise ArgumentError(f"elemento {g.p} incompatível com k={spec.k}")
    if g.is_identity:
        return a
    phases = _axis_phases(g.p, a.cutoff, spec.k)
    return TorusElement(a.theta, phases * a.coeffs, a.cutoff)


def invariant_projection(a: TorusElement, spec: CoveringSpec) -> TorusElement:
    """(1/|G|)·Σ_g g(a): mantém os coeficientes com k_j | l_j."""
    _require_theta(a, spec.cover_theta, "de recobrimento")
    index = np.arange(-a.cutoff, a.cutoff + 1)
    mask = np.ones(a.coeffs.shape, dtype=bool)
    for axis, kj in enumerate(spec.k):
        shape = [1] * spec.n
        shape[axis] = index.size
        mask &= (index % kj == 0).reshape(shape)
    return TorusElement(a.theta, np.where(mask, a.coeffs, 0.0), a.cutoff)


def hilbert_inner(a: TorusElement, b: TorusElement, spec: CoveringSpec) -> TorusElement:
    """⟨a, b⟩ = Σ_{g∈G} g(a* ⋆ b) = |G|·invariant_projection(a* ⋆ b)."""
    _require_theta(a, spec.cover_theta, "de recobrimento")
    _require_theta(b, spec.cover_theta, "de recobrimento")
    product = torus_core.star_product(torus_core.involution(a), b)
    return torus_core.scale(invariant_projection(product, spec), spec.group_order)


def grading_action(
    x: Sequence[float], a: TorusElement, denominators: Sequence[int]
) -> TorusElement:
    """
    Ação de ℝ^n: coeficiente em l multiplicado por e^{2πi Σ_j l_j x_j / d_j}.

    Raises:
        ArgumentError: Se len(x) ou len(denominators) != dimensão de a
    """
    if len(x) != a.n or len(denominators) != a.n:
        raise ArgumentError(f"vetor de graduação incompatível com dimensão {a.n}")
    if any(d <= 0 for d in denominators):
        raise ArgumentError(f"denominadores devem ser positivos: {tuple(denominators)}")
    phases = _axis_phases(x, a.cutoff, denominators)
    return TorusElement(a.theta, phases * a.coeffs, a.cutoff)


# Partição da unidade no círculo


def _psi(t: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)


def _ramp(t: np.ndarray) -> np.ndarray:
    """s(t) = ψ(t) / (ψ(t) + ψ(1-t)), de 0 em t ≤ 0 até 1 em t ≥ 1."""
    t = np.clip(t, 0.0, 1.0)
    up, down = _psi(t), _psi(1.0 - t)
    return up / (up + down)


def partition_weight(x: np.ndarray) -> np.ndarray:
    """a_2 no círculo: suporte (-1/2, π+1/2), igual a 1 em [1/2, π-1/2]."""
    reduced = np.mod(np.asarray(x, dtype=float) + 0.5, 2 * np.pi) - 0.5
    rising = _ramp(reduced + 0.5)
    falling = 1.0 - _ramp(reduced - np.pi + 0.5)
    return np.select(
        [reduced < 0.5, reduced <= np.pi - 0.5, reduced < np.pi + 0.5],
        [rising, np.ones_like(reduced), falling],
        default=0.0,
    )


def partition_function(index: int, x: np.ndarray) -> np.ndarray:
    """e_i = √a_i, com a_1 = 1 - a_2."""
    weight = partition_weight(x)
    return np.sqrt(1.0 - weight) if index == 1 else np.sqrt(weight)


def _lift(index: int, y: np.ndarray, fold: int) -> np.ndarray:
    """ẽ_i em ℝ/2π·fold·ℤ: cópia de e_i na janela Ũ_i, zero fora dela."""
    low, high = WINDOWS[index]
    centred = np.mod(y - low, 2 * np.pi * fold) + low
    return np.where(centred < high, partition_function(index, centred), 0.0)


def _centred_coefficients(values: np.ndarray, cutoff: int) -> np.ndarray:
    spectrum = scipy.fft.fft(values) / values.size
    return spectrum[np.arange(-cutoff, cutoff + 1)]


def build_circle_partition(
    fold: int, grid_size: int | None = None, fourier_cutoff: int = 64
) -> CirclePartition:
    """
    Constrói e_1, e_2 e seus levantamentos ao recobrimento de grau ``fold``.

    Args:
        fold: Grau do recobrimento ℝ/2π·fold·ℤ → ℝ/2πℤ
        grid_size: Pontos da grade do recobrimento (divisível por 2·fold)
        fourier_cutoff: Modos |m| ≤ cutoff mantidos em cada série

    Returns:
        Partição com resíduo de truncamento registrado; ``warnings`` não vazio
        quando o resíduo excede PARTITION_RESIDUAL_BOUND
    """
    if fold < 1:
        raise ArgumentError(f"grau inválido: {fold}")
    grid_size = fold * settings.PARTITION_GRID_FACTOR if grid_size is None else grid_size
    if grid_size % (2 * fold):
        raise ArgumentError(f"grid_size {grid_size} não é divisível por {2 * fold}")
    if not 1 <= fourier_cutoff < grid_size // (2 * fold):
        raise ArgumentError(f"fourier_cutoff {fourier_cutoff} fora da faixa da grade")

    y = 2 * np.pi * fold * np.arange(grid_size) / grid_size
    base = y[: grid_size // fold]
    base_e = {i: partition_function(i, base) for i in (1, 2)}
    lifted = {i: _lift(i, y, fold) for i in (1, 2)}

    lifted_coeffs, tails, residual = {}, {}, 0.0
    for i in (1, 2):
        full = scipy.fft.fft(lifted[i]) / grid_size
        kept = np.arange(-fourier_cutoff, fourier_cutoff + 1)
        lifted_coeffs[i] = full[kept]
        mask = np.ones(grid_size, dtype=bool)
        mask[kept] = False
        tails[i] = float(np.abs(full[mask]).sum())
        truncated = np.where(mask, 0.0, full)
        approximation = scipy.fft.ifft(truncated).real * grid_size
        residual = max(residual, float(np.abs(lifted[i] - approximation).max()))

    warnings = []
    if residual > settings.PARTITION_RESIDUAL_BOUND:
        message = (
            f"resíduo de truncamento {residual:.3e} acima de "
            f"{settings.PARTITION_RESIDUAL_BOUND:.1e} (fold={fold}, cutoff={fourier_cutoff})"
        )
        logger.warning(message)
        warnings.append(message)

    return CirclePartition(
        fold=fold,
        grid_size=grid_size,
        fourier_cutoff=fourier_cutoff,
        samples_e1=lifted[1],
        samples_e2=lifted[2],
        fourier_e1=_centred_coefficients(base_e[1], fourier_cutoff),
        fourier_e2=_centred_coefficients(base_e[2], fourier_cutoff),
        lifted_fourier_e1=lifted_coeffs[1],
        lifted_fourier_e2=lifted_coeffs[2],
        lifted_tail_e1=tails[1],
        lifted_tail_e2=tails[2],
        residual=residual,
        warnings=warnings,
    )


def lifted_product(partition: CirclePartition, index: int, p: int) -> np.ndarray:
    """Amostras de ẽ_i·(g_p ẽ_i), com (g_p φ)(y) = φ(y + 2πp)."""
    samples = partition.samples(index)
    return samples * np.roll(samples, -p * partition.base_grid_size)


def partition_sum(partition: CirclePartition, p: int) -> np.ndarray:
    """Σ_{ι∈G×{1,2}} e_ι·(g_p e_ι) na grade; vale 1 se p ≡ 0 e 0 caso contrário."""
    total = np.zeros(partition.grid_size)
    for q in range(partition.fold):
        for index in (1, 2):
            shifted = np.roll(partition.samples(index), -q * partition.base_grid_size)
            total += shifted * np.roll(shifted, -p * partition.base_grid_size)
    return total


# Soma de recobrimento


def _check_partitions(spec: CoveringSpec, partitions: Sequence[CirclePartition]) -> None:
    if len(partitions) != spec.n:
        raise ArgumentError(f"{len(partitions)} partições para dimensão {spec.n}")
    for axis, (partition, kj) in enumerate(zip(partitions, spec.k)):
        if partition.fold != kj:
            raise ArgumentError(
                f"partição do eixo {axis} tem grau {partition.fold}, esperado {kj}"
            )


def axis_factor(
    spec: CoveringSpec, partition: CirclePartition, axis: int, p: int, index: int
) -> TorusElement:
    """e^{k_j}_{(p,i)}(v_axis): série de g_p ẽ_i colocada no eixo ``axis``."""
    coefficients = partition.lifted(index)
    cutoff = partition.fourier_cutoff
    modes = np.arange(-cutoff, cutoff + 1)
    shifted = coefficients * np.exp(2j * np.pi * p * modes / spec.k[axis])
    return torus_core.axis_series(spec.cover_theta, axis, shifted)


def covering_sum(
    spec: CoveringSpec, partitions: Sequence[CirclePartition], g: DeckElement
) -> TorusElement:
    """
    D_g = Σ_ι β_ι ⋆ g(α_ι) com α_ι = A_1 ⋆ … ⋆ A_n e β_ι = α_ι*.

    Avaliada pela fatoração S_0 = 1, S_j = Σ_{ι_j} A_j* ⋆ S_{j-1} ⋆ g(A_j).
    """
    _check_partitions(spec, partitions)
    accumulated = TorusElement.identity(spec.cover_theta)
    for axis, (partition, kj) in enumerate(zip(partitions, spec.k)):
        terms = []
        for p, index in itertools.product(range(kj), (1, 2)):
            factor = axis_factor(spec, partition, axis, p, index)
            left = torus_core.star_product(torus_core.involution(factor), accumulated)
            terms.append(torus_core.star_product(left, deck_action(g, factor, spec)))
        accumulated = torus_core.total(terms)
    return accumulated


def covering_sum_defect(
    spec: CoveringSpec, partitions: Sequence[CirclePartition], g: DeckElement
) -> float:
    """‖D_g - δ_{g,e}·1‖₁; zero exato para séries não truncadas."""
    difference = covering_sum(spec, partitions, g)
    if g.is_identity:
        difference = torus_core.subtract(difference, TorusElement.identity(spec.cover_theta))
    return torus_core.one_norm_bound(difference)


def _axis_bound_terms(partition: CirclePartition) -> Tuple[float, float]:
    """
    Amplificação e vazamento da soma Σ_{p,i} A*·X·g(A) em um eixo.

    A soma sobre p só acopla modos m ≡ m' (mod k); com c_r a massa ℓ¹ da
    classe r e t a cauda descartada, a amplificação é k·Σ_r c_r² e o
    vazamento 2k·t·(max_r c_r + t), somados sobre i.
    """
    k = partition.fold
    modes = np.arange(-partition.fourier_cutoff, partition.fourier_cutoff + 1)
    amplification, leak = 0.0, 0.0
    for index in (1, 2):
        classes = np.bincount(
            modes % k, weights=np.abs(partition.lifted(index)), minlength=k
        )
        tail = partition.lifted_tail(index)
        amplification += k * float(np.sum(classes**2))
        leak += 2 * k * tail * (float(classes.max()) + tail)
    return amplification, leak


def truncation_bound(spec: CoveringSpec, partitions: Sequence[CirclePartition]) -> float:
    """
    Majorante ℓ¹ do erro de truncamento de D_g, igual para todo g.

    Segue a fatoração de ``covering_sum``: com a soma exata S_j igual a
    δ·1, o erro obedece E_j ≤ amplificação_j·E_{j-1} + vazamento_j, E_0 = 0.
    """
    _check_partitions(spec, partitions)
    bound = 0.0
    for partition in partitions:
        amplification, leak = _axis_bound_terms(partition)
        bound = amplification * bound + leak
    return float(bound)


def covering_report(
    spec: CoveringSpec, partitions: Sequence[CirclePartition], g: DeckElement
) -> CoveringReport:
    defect = covering_sum_defect(spec, partitions, g)
    logger.info("soma de recobrimento k=%s g=%s: defeito %.3e", spec.k, g.p, defect)
    return CoveringReport(
        k=spec.k,
        cutoff=partitions[0].fourier_cutoff,
        g=g.p,
        defect=defect,
        residual=max(pt.residual for pt in partitions),
        truncation_bound=truncation_bound(spec, partitions),
    )


def partition_elements(
    spec: CoveringSpec, partitions: Sequence[CirclePartition]
) -> List[Tuple[PartitionIndex, TorusElement]]:
    """Família explícita (ι, α_ι), ι ∈ Π_j (ℤ_{k_j} × {1,2}), em ordem lexicográfica."""
    _check_partitions(spec, partitions)
    per_axis = [
        [((p, i), axis_factor(spec, pt, axis, p, i)) for p in range(kj) for i in (1, 2)]
        for axis, (pt, kj) in enumerate(zip(partitions, spec.k))
    ]
    elements = []
    for combination in itertools.product(*per_axis):
        index = tuple(label for label, _ in combination)
        alpha = combination[0][1]
        for _, factor in combination[1:]:
            alpha = torus_core.star_product(alpha, factor)
        elements.append((index, alpha))
    return elements


def resolution_defect(
    spec: CoveringSpec,
    partitions: Sequence[CirclePartition],
    test_element: TorusElement,
    method: Literal["telescoping", "direct"] = "telescoping",
) -> float:
    """
    ‖Σ_ι β_ι ⋆ ⟨β_ι, x⟩ - x‖₁ com β_ι = α_ι*.

    ``telescoping`` usa a reorganização Σ_g D_g ⋆ g(x); ``direct`` expande a
    soma sobre ι com os α_ι explícitos.
    """
    _require_theta(test_element, spec.cover_theta, "de recobrimento")
    _check_partitions(spec, partitions)
    if method == "telescoping":
        terms = [
            torus_core.star_product(
                covering_sum(spec, partitions, g), deck_action(g, test_element, spec)
            )
            for g in spec.deck_elements()
        ]
    elif method == "direct":
        terms = []
        for _, alpha in partition_elements(spec, partitions):
            beta = torus_core.involution(alpha)
            inner = hilbert_inner(beta, test_element, spec)
            terms.append(torus_core.star_product(beta, inner))
    else:
        raise ArgumentError(f"método desconhecido: {method}")
    resolved = torus_core.total(terms)
    return torus_core.one_norm_bound(torus_core.subtract(resolved, test_element))
