"""Verificações numéricas do limite inverso de toros não comutativos.

Tudo ocorre no gauge θ = 2: o nível n é o toro T^{2N} com Θ_n = J/(π m_n²) e
U_p corresponde a e^{ip·x/m_n}, de modo que a periodização sobre 2πm_n·ℤ^{2N}
leva × no produto torcido do nível.
"""
import logging
from functools import reduce
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
import scipy.fft

from src.config.settings import settings
from src.exceptions import ArgumentError, NumericRangeError
from src.models.grid import GridFunction
from src.models.torus import DeformationMatrix, TorusElement
from src.models.tower import SpecialReport, TowerSpec
from src.services import covering, moyal, torus_core
from src.utils.validators import (
    outer_shell_peak,
    validate_nonnegative,
    validate_real,
    validate_schwartz,
)

logger = logging.getLogger(__name__)

Method = Literal["fourier", "direct"]


def periodization_cutoff(f: GridFunction, m: int) -> int:
    """Maior P com P/m abaixo da frequência de Nyquist π/h da grade."""
    return int(np.floor(m * np.pi / f.spacing - 1e-9))


def _level_theta(tower: TowerSpec, n: int, commutative: bool) -> DeformationMatrix:
    if commutative:
        return DeformationMatrix.zero(2 * tower.halfdim)
    return tower.level_theta(n)


def _fourier_coefficients(f: GridFunction, m: int, cutoff: int) -> np.ndarray:
    """c_p = (2πm)^{-2N}·h^{2N} Σ_j f(x_j) e^{-ix_j·p/m}, eixo a eixo."""
    modes = np.arange(-cutoff, cutoff + 1)
    weights = np.exp(-1j * np.outer(modes, f.axis) / m)
    coeffs = f.samples
    for axis in range(f.dimension):
        coeffs = moyal.apply_axis(coeffs, weights, axis)
    return coeffs * (f.spacing / (2 * np.pi * m)) ** f.dimension


def _direct_coefficients(f: GridFunction, m: int, cutoff: int) -> np.ndarray:
    """
    Soma as translações f(y + 2πm·l) numa célula com Q = 2(P+1) pontos por eixo
    e extrai os coeficientes por FFT: c_p = (-1)^{Σp}·fftn(F)[p mod Q]/Q^{2N}.
    """
    period = 2 * np.pi * m
    if f.extent < 2 * period * settings.WRAP_MARGIN:
        raise NumericRangeError(
            f"extensão L={f.extent:.3f} insuficiente para m={m}: "
            f"exige L ≥ {2 * period * settings.WRAP_MARGIN:.3f}"
        )
    cells = 2 * (cutoff + 1)
    targets = -period / 2 + period * np.arange(cells) / cells
    reach = int(np.ceil(f.extent / period)) + 1
    fold = sum(
        moyal.interpolation_matrix(f, targets + period * l) for l in range(-reach, reach + 1)
    )
    values = f.samples
    for axis in range(f.dimension):
        values = moyal.apply_axis(values, fold, axis)
    axes = tuple(range(f.dimension))
    spectrum = scipy.fft.fftshift(scipy.fft.fftn(values, axes=axes), axes=axes)
    window = (slice(cells // 2 - cutoff, cells // 2 + cutoff + 1),) * f.dimension
    signs = reduce(np.multiply.outer, [(-1.0) ** np.arange(-cutoff, cutoff + 1)] * f.dimension)
    return spectrum[window] * signs / cells ** f.dimension


def _tail_estimate(f: GridFunction, coeffs: np.ndarray, m: int) -> float:
    """
    Cauda ℓ¹ da casca externa |p|∞ = P mais uma folga de discretização.

    A folga é (2πm)^{-2N}∫|f| vezes o decaimento relativo na borda da grade e
    na borda espectral. É uma estimativa, não um majorante rigoroso.
    """
    peak = float(np.abs(f.samples).max())
    if peak == 0.0:
        return 0.0
    outer = np.ones(coeffs.shape, dtype=bool)
    outer[(slice(1, -1),) * coeffs.ndim] = False
    shell = float(np.abs(coeffs[outer]).sum())
    spectrum = np.abs(moyal.fourier(f).samples)
    ratio = outer_shell_peak(f.samples) / peak + outer_shell_peak(spectrum) / spectrum.max()
    mass = float(np.abs(f.samples).sum()) * f.spacing ** f.dimension
    return shell + mass * ratio / (2 * np.pi * m) ** f.dimension


def periodize_with_tail(
    f: GridFunction,
    tower: TowerSpec,
    n: int,
    method: Method = "fourier",
    commutative: bool = False,
    check_decay: bool = True,
) -> Tuple[TorusElement, float]:
    """
    pr_n f = Σ_{g ∈ 2πm_n ℤ^{2N}} f(· + g) como elemento do nível n.

    ``fourier`` amostra c_p = (2πm_n)^{-2N}·𝓕f(p/m_n); ``direct`` soma as
    translações na grade e extrai os coeficientes por FFT.

    Returns:
        Elemento periodizado e a estimativa de cauda

    Raises:
        IngestionError: Se f não decai na borda da grade
        NumericRangeError: Se L < 4πm_n·WRAP_MARGIN no método direto
    """
    if f.halfdim != tower.halfdim:
        raise ArgumentError(f"grade com N={f.halfdim}, torre com N={tower.halfdim}")
    if check_decay:
        validate_schwartz(f)
    tower.check_level(n)
    m = tower.m[n]
    cutoff = periodization_cutoff(f, m)
    if method == "fourier":
        coeffs = _fourier_coefficients(f, m, cutoff)
    elif method == "direct":
        coeffs = _direct_coefficients(f, m, cutoff)
    else:
        raise ArgumentError(f"método de periodização desconhecido: {method}")
    tail = _tail_estimate(f, coeffs, m)
    element = TorusElement.from_dense(_level_theta(tower, n, commutative), coeffs)
    return element, tail


def periodize(
    f: GridFunction,
    tower: TowerSpec,
    n: int,
    method: Method = "fourier",
    commutative: bool = False,
    check_decay: bool = True,
) -> TorusElement:
    return periodize_with_tail(f, tower, n, method, commutative, check_decay)[0]


def method_agreement(f: GridFunction, tower: TowerSpec, n: int) -> Tuple[float, float]:
    """Diferença máxima por coeficiente entre os dois métodos e a cauda reportada."""
    direct, tail_direct = periodize_with_tail(f, tower, n, "direct")
    sampled, tail_sampled = periodize_with_tail(f, tower, n, "fourier")
    difference = float(np.abs(direct.coeffs - sampled.coeffs).max())
    tail = max(tail_direct, tail_sampled)
    if difference > tail:
        logger.warning(
            "periodização: métodos divergem em %.3e, acima da cauda %.3e (nível %d)",
            difference,
            tail,
            n,
        )
    return difference, tail


def special_defect(
    f: GridFunction,
    tower: TowerSpec,
    n: int,
    commutative: bool = False,
    method: Method = "fourier",
) -> SpecialReport:
    """
    ‖a_n ⋆ a_n - b_n‖₁ com a_n = pr_n f e b_n = pr_n(f×f).

    No modo comutativo (Θ = 0) b_n = pr_n(f²). O produto a_n ⋆ a_n é
    re-truncado no cutoff de b_n e o descarte entra em ``tail_bound``.
    """
    validate_nonnegative(f)
    m = tower.m[tower.check_level(n)]
    logger.info("defeito especial: nível %d, m_n=%d, M=%d", n, m, f.points)
    a, tail_a = periodize_with_tail(f, tower, n, method, commutative)
    square = f.with_samples(f.samples**2) if commutative else moyal.moyal_times(f, f)
    b, tail_b = periodize_with_tail(square, tower, n, method, commutative)
    product, dropped = torus_core.truncate(torus_core.star_product(a, a), b.cutoff)
    defect = torus_core.one_norm_bound(torus_core.subtract(product, b))
    norm_a = torus_core.one_norm_bound(a)
    tail = dropped + tail_b + tail_a * (2 * norm_a + tail_a)
    return SpecialReport(level=n, m_n=m, defect=defect, tail_bound=tail)


def delta_decay(
    f: GridFunction, deltas: Sequence[Sequence[float]], tower: TowerSpec, n: int
) -> List[Tuple[float, float]]:
    """
    Pares (|Δ|, ‖pr_n(f_Δ × f)‖₁) ordenados por |Δ|.

    O decaimento na borda é verificado em f; o produto pode ficar no nível
    do ruído de arredondamento para Δ grande.
    """
    validate_schwartz(f)
    m = tower.m[tower.check_level(n)]
    pairs = []
    for delta in deltas:
        product = moyal.moyal_times(moyal.shift(f, delta), f)
        norm = torus_core.one_norm_bound(periodize(product, tower, n, check_decay=False))
        logger.info("Δ=%s, m_n=%d: norma %.3e", tuple(delta), m, norm)
        pairs.append((float(np.linalg.norm(delta)), norm))
    return sorted(pairs, key=lambda pair: pair[0])


def l2_trace_compare(f: GridFunction, tower: TowerSpec, n: int) -> SpecialReport:
    """
    Compara ‖f‖₂² com rhs_a = (2πm_n)^{2N}·τ(b_n) e rhs_b = (2πm_n)^{-2N}·τ(b_n).

    ``matching`` registra qual candidato fica a MATCH_TOLERANCE (relativa) de
    ‖f‖₂², ou "none".
    """
    validate_real(f)
    m = tower.m[tower.check_level(n)]
    lhs = moyal.l2_norm(f) ** 2
    b, tail = periodize_with_tail(moyal.moyal_times(f, f), tower, n)
    trace = torus_core.trace(b).real
    scale = (2 * np.pi * m) ** f.dimension
    rhs_a, rhs_b = abs(scale * trace), abs(trace / scale)
    matching = "none"
    if lhs > 0:
        candidates = {"rhs_a": rhs_a, "rhs_b": rhs_b}
        close = [k for k, v in candidates.items() if abs(v - lhs) <= settings.MATCH_TOLERANCE * lhs]
        if len(close) == 1:
            matching = close[0]
    return SpecialReport(
        level=n, m_n=m, tail_bound=tail, lhs=lhs, rhs_a=rhs_a, rhs_b=rhs_b, matching=matching
    )


def periodization_compatibility(f: GridFunction, tower: TowerSpec, n: int, m: int) -> float:
    """
    max |pr_n f - d^{2N}·descend(invariant_projection(pr_m f))| nos índices comuns, d = m_m/m_n.

    Equivalente a embed(pr_n f) = d^{2N}·invariant_projection(pr_m f).
    """
    spec = tower.covering(n, m)
    coarse = periodize(f, tower, n)
    fine = periodize(f, tower, m)
    fine = TorusElement(spec.cover_theta, fine.coeffs, fine.cutoff)
    descended = covering.descend(covering.invariant_projection(fine, spec), spec)
    descended, _ = torus_core.truncate(descended, coarse.cutoff)
    factor = spec.k[0] ** f.dimension
    return float(np.abs(coarse.padded(coarse.cutoff) - factor * descended.coeffs).max())


def tower_embedding_check(
    tower: TowerSpec,
    n: int,
    m: int,
    f: Optional[GridFunction] = None,
    seed: int = 0,
) -> float:
    """
    Defeito ℓ¹ entre a composição dos mergulhos n → n+1 → … → m e o mergulho
    direto com k = m_m/m_n, sobre um elemento aleatório do nível n. Com ``f``,
    soma também o defeito de compatibilidade da periodização.
    """
    direct = tower.covering(n, m)
    element = torus_core.random_element(np.random.default_rng(seed), direct.base_theta, cutoff=2)
    composite = element
    for level in range(n, m):
        step = tower.step(level)
        composite = covering.embed(
            TorusElement(step.base_theta, composite.coeffs, composite.cutoff), step
        )
    embedded = covering.embed(element, direct)
    cutoff = max(composite.cutoff, embedded.cutoff)
    defect = float(np.abs(composite.padded(cutoff) - embedded.padded(cutoff)).sum())
    if f is not None:
        defect += periodization_compatibility(f, tower, n, m)
    return defect
