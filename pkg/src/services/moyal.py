"""Plano de Moyal em grade.

Convenções: 𝓕f(u) = ∫ f(t) e^{-it·u} dt (sem fator 2π), J = [[0, I], [-I, 0]],
(f⋄g)(u) = ∫ f(u-t) g(t) e^{-iu·Jt} dt e f×g = ⋆_2, normalizado de modo que
2e^{-|x|²/2} seja idempotente em ℝ². Com isso 𝓕(f×g) = (2π)^{-2N}·𝓕f⋄𝓕g e
𝓕(f⋄g) = 𝓕f×𝓕g.
"""
import logging
from functools import reduce
from typing import Sequence

import numpy as np
import scipy.fft
import scipy.signal

from src.config.settings import settings
from src.exceptions import ArgumentError, NumericRangeError
from src.models.grid import GridFunction, MoyalParams
from src.utils.helpers import gaussian
from src.utils.validators import support_box, validate_vector

logger = logging.getLogger(__name__)


def _require_same_grid(f: GridFunction, g: GridFunction) -> None:
    if not f.same_grid(g):
        raise ArgumentError(
            f"grades incompatíveis: (N={f.halfdim}, M={f.points}, L={f.extent}) "
            f"vs (N={g.halfdim}, M={g.points}, L={g.extent})"
        )


def _axes(f: GridFunction) -> tuple:
    return tuple(range(f.dimension))


def apply_axis(array: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(matrix, array, axes=([1], [axis])), 0, axis)


def _symplectic_matrix(halfdim: int) -> np.ndarray:
    identity = np.eye(halfdim)
    zero = np.zeros((halfdim, halfdim))
    return np.block([[zero, identity], [-identity, zero]])


def _coordinates(f: GridFunction) -> np.ndarray:
    """Coordenadas de todos os pontos, em ordem C, forma (M^{2N}, 2N)."""
    mesh = np.meshgrid(*([f.axis] * f.dimension), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


# Transformadas


def fourier(f: GridFunction) -> GridFunction:
    """𝓕f na grade de frequências de espaçamento 2π/L e extensão 2πM/L."""
    axes = _axes(f)
    spectrum = scipy.fft.fftshift(
        scipy.fft.fftn(scipy.fft.ifftshift(f.samples, axes=axes), axes=axes), axes=axes
    )
    return GridFunction(
        f.halfdim,
        f.points,
        2 * np.pi * f.points / f.extent,
        spectrum * f.spacing ** f.dimension,
    )


def inverse_fourier(spectrum: GridFunction) -> GridFunction:
    """f(x) = (2π)^{-2N} ∫ 𝓕f(u) e^{iu·x} du, inverso exato de ``fourier``."""
    axes = _axes(spectrum)
    values = scipy.fft.fftshift(
        scipy.fft.ifftn(scipy.fft.ifftshift(spectrum.samples, axes=axes), axes=axes), axes=axes
    )
    factor = (spectrum.points * spectrum.spacing / (2 * np.pi)) ** spectrum.dimension
    return GridFunction(
        spectrum.halfdim,
        spectrum.points,
        2 * np.pi * spectrum.points / spectrum.extent,
        values * factor,
    )


def _negate_axis(samples: np.ndarray, axis: int) -> np.ndarray:
    """Substituição u_axis ↦ -u_axis na grade centrada."""
    return np.roll(np.flip(samples, axis=axis), 1, axis=axis)


def compose_with_j(f: GridFunction) -> GridFunction:
    """(f∘J)(u) = f(Ju), Ju = (u_B, -u_A)."""
    n = f.halfdim
    samples = f.samples
    for axis in range(n, 2 * n):
        samples = _negate_axis(samples, axis)
    order = tuple(range(n, 2 * n)) + tuple(range(n))
    return f.with_samples(np.transpose(samples, order))


def symplectic_fourier(f: GridFunction) -> GridFunction:
    """Ff(u) = ∫ f(t) e^{-it·Ju} dt = 𝓕f(Ju)."""
    if f.dimension % 2:
        raise ArgumentError("transformada simplética exige grade de dimensão par")
    return compose_with_j(fourier(f))


# Dilatações e translações


def _check_dilation_range(f: GridFunction, a: float) -> None:
    support = support_box(f.samples, f.axis)
    if support is None:
        return
    radius = max(max(abs(lo), abs(hi)) for lo, hi in support)
    limit = f.extent / 2 - f.spacing
    if radius / np.sqrt(a) > limit:
        raise NumericRangeError(
            f"dilatação a={a}: suporte {radius / np.sqrt(a):.3f} sai da grade (limite {limit:.3f})"
        )
    spectrum = fourier(f)
    band = support_box(spectrum.samples, spectrum.axis)
    bandwidth = max(max(abs(lo), abs(hi)) for lo, hi in band)
    nyquist = spectrum.extent / 2 - spectrum.spacing
    if bandwidth * np.sqrt(a) > nyquist:
        raise NumericRangeError(
            f"dilatação a={a}: banda {bandwidth * np.sqrt(a):.3f} excede Nyquist {nyquist:.3f}"
        )


def interpolation_matrix(f: GridFunction, targets: np.ndarray) -> np.ndarray:
    """Interpolação trigonométrica dos nós da grade em ``targets``; zero fora da caixa."""
    m = f.points
    modes = np.arange(-m // 2, m // 2 + 1)
    weights = np.ones(modes.size)
    weights[[0, -1]] = 0.5
    frequencies = 2 * np.pi * modes / f.extent
    synthesis = np.exp(1j * np.outer(targets, frequencies)) * weights
    analysis = np.exp(-1j * np.outer(frequencies, f.axis))
    matrix = synthesis @ analysis / m
    outside = (targets < -f.extent / 2) | (targets >= f.extent / 2)
    matrix[outside] = 0.0
    return matrix


def dilate(f: GridFunction, a: float) -> GridFunction:
    """
    E_a f(x) = a^{N/2} f(a^{1/2} x), por interpolação espectral.

    Raises:
        ArgumentError: Se a ≤ 0
        NumericRangeError: Se o suporte ou a banda resultante saem da grade
    """
    if not a > 0:
        raise ArgumentError(f"fator de dilatação deve ser positivo: {a}")
    if a == 1:
        return f
    _check_dilation_range(f, a)
    matrix = interpolation_matrix(f, np.sqrt(a) * f.axis)
    samples = f.samples
    for axis in range(f.dimension):
        samples = apply_axis(samples, matrix, axis)
    return f.with_samples(a ** (f.halfdim / 2) * samples)


def shift(f: GridFunction, delta: Sequence[float]) -> GridFunction:
    """
    f_Δ(x) = f(x + Δ), translação espectral por rampa de fase.

    Raises:
        NumericRangeError: Se o suporte transladado se aproxima da borda
    """
    delta = validate_vector(delta, f.dimension, "delta")
    if not delta.any():
        return f
    support = support_box(f.samples, f.axis)
    if support is None:
        return f
    limit = f.extent / 2 - f.spacing
    for (lo, hi), d in zip(support, delta):
        if lo - d < -limit or hi - d > limit:
            raise NumericRangeError(
                f"translação {tuple(delta)} leva o suporte [{lo:.3f}, {hi:.3f}] à borda da grade"
            )
    spectrum = fourier(f)
    mesh = np.meshgrid(*([spectrum.axis] * f.dimension), indexing="ij")
    ramp = np.exp(1j * sum(u * d for u, d in zip(mesh, delta)))
    return f.with_samples(inverse_fourier(spectrum.with_samples(spectrum.samples * ramp)).samples)


# Convolução torcida e produtos


def twisted_convolution(f: GridFunction, g: GridFunction) -> GridFunction:
    """
    (f⋄g)(u) = h^{2N} Σ_t f(u-t) g(t) e^{-iu·Jt}, com f nula fora da caixa.

    Com u·Jt = u_A·t_B - u_B·t_A, para cada u_B o fator e^{iu_B·t_A} entra em g
    e a soma sobre t_A vira uma convolução; resta a soma em t_B contra
    e^{-iu_A·t_B}.
    """
    _require_same_grid(f, g)
    n, m = f.halfdim, f.points
    x, centre = f.axis, m // 2
    first = tuple(range(n))
    kernel = reduce(np.multiply.outer, [np.exp(-1j * np.outer(x, x))] * n)
    kernel = np.transpose(kernel, tuple(range(0, 2 * n, 2)) + tuple(range(1, 2 * n, 2)))
    out = np.zeros((m,) * (2 * n), dtype=complex)
    offsets = np.arange(m)

    for target in np.ndindex(*((m,) * n)):
        columns = [t - offsets + centre for t in target]
        valid = reduce(np.multiply.outer, [(c >= 0) & (c < m) for c in columns])
        clipped = [np.clip(c, 0, m - 1) for c in columns]
        shifted = f.samples[(Ellipsis,) + np.ix_(*clipped)] * valid
        ramp = reduce(np.multiply.outer, [np.exp(1j * x[t] * x) for t in target])
        weighted = g.samples * ramp.reshape(ramp.shape + (1,) * n)
        convolved = scipy.signal.fftconvolve(shifted, weighted, axes=first)
        window = convolved[(slice(centre, centre + m),) * n]
        out[(Ellipsis,) + target] = np.sum(window * kernel, axis=tuple(range(n, 2 * n)))

    return f.with_samples(out * f.spacing ** f.dimension)


def _require_small(f: GridFunction) -> None:
    if f.samples.size > settings.DIRECT_ORACLE_MAX_POINTS:
        raise ArgumentError(
            f"quadratura direta limitada a {settings.DIRECT_ORACLE_MAX_POINTS} pontos, "
            f"grade tem {f.samples.size}"
        )


def twisted_convolution_direct(f: GridFunction, g: GridFunction) -> GridFunction:
    """Quadratura direta O(M^{4N}) de f⋄g, usada como oráculo."""
    _require_same_grid(f, g)
    _require_small(f)
    m, centre = f.points, f.points // 2
    coords = _coordinates(f)
    jcoords = coords @ _symplectic_matrix(f.halfdim).T
    indices = np.stack(
        [i.ravel() for i in np.meshgrid(*([np.arange(m)] * f.dimension), indexing="ij")], axis=1
    )
    f_flat, g_flat = f.samples.ravel(), g.samples.ravel()
    out = np.empty(coords.shape[0], dtype=complex)
    for row in range(coords.shape[0]):
        source = indices[row] - indices + centre
        valid = np.all((source >= 0) & (source < m), axis=1)
        flat = np.ravel_multi_index(tuple(np.clip(source, 0, m - 1).T), f.samples.shape)
        phase = np.exp(-1j * (jcoords @ coords[row]))
        out[row] = np.sum(np.where(valid, f_flat[flat], 0.0) * g_flat * phase)
    return f.with_samples(out.reshape(f.samples.shape) * f.spacing ** f.dimension)


def moyal_times(f: GridFunction, g: GridFunction) -> GridFunction:
    """f×g = (2π)^{-2N}·𝓕⁻¹(𝓕f ⋄ 𝓕g)."""
    _require_same_grid(f, g)
    convolved = twisted_convolution(fourier(f), fourier(g))
    product = inverse_fourier(convolved).samples / (2 * np.pi) ** f.dimension
    return f.with_samples(product)


def moyal_star_direct(
    f: GridFunction, g: GridFunction, params: MoyalParams = MoyalParams()
) -> GridFunction:
    """
    Quadratura direta de (πθ)^{-2N} ∬ f(u+s) g(u+t) e^{(2i/θ) s·Jt} ds dt.

    Com s = x_a - u e t = x_b - u a fase é x_a·Jx_b - x_a·Ju + x_b·Ju.
    """
    _require_same_grid(f, g)
    _require_small(f)
    coords = _coordinates(f)
    form = coords @ _symplectic_matrix(f.halfdim) @ coords.T
    scale = 2j / params.theta
    pairing = np.exp(scale * form)
    left = f.samples.ravel()[None, :] * np.exp(-scale * form.T)
    right = g.samples.ravel()[None, :] * np.exp(scale * form.T)
    values = np.sum(left * (right @ pairing.T), axis=1)
    prefactor = (np.pi * params.theta) ** (-f.dimension) * f.spacing ** (2 * f.dimension)
    return f.with_samples(values.reshape(f.samples.shape) * prefactor)


def to_standard_gauge(f: GridFunction, params: MoyalParams) -> GridFunction:
    """*-isomorfismo φ(f) = (θ/2)^{-N/2} E_{θ/2} f, com φ(f ⋆_θ g) = φ(f)×φ(g)."""
    if params.theta == 2:
        return f
    ratio = params.theta / 2
    return dilate(f, ratio) * ratio ** (-f.halfdim / 2)


def from_standard_gauge(f: GridFunction, params: MoyalParams) -> GridFunction:
    if params.theta == 2:
        return f
    ratio = params.theta / 2
    return dilate(f, 1 / ratio) * ratio ** (f.halfdim / 2)


def moyal_star(f: GridFunction, g: GridFunction, params: MoyalParams = MoyalParams()) -> GridFunction:
    """f ⋆_θ g = (θ/2)^{-N/2} E_{2/θ}(E_{θ/2}f × E_{θ/2}g)."""
    _require_same_grid(f, g)
    if params.theta == 2:
        return moyal_times(f, g)
    ratio = params.theta / 2
    product = moyal_times(dilate(f, ratio), dilate(g, ratio))
    return dilate(product, 1 / ratio) * ratio ** (-f.halfdim / 2)


# Normas e integrais


def integral(f: GridFunction) -> complex:
    return complex(np.sum(f.samples) * f.spacing ** f.dimension)


def l2_norm(f: GridFunction) -> float:
    """‖f‖₂ = (h^{2N} Σ|f|²)^{1/2}."""
    return float(np.sqrt(np.sum(np.abs(f.samples) ** 2) * f.spacing ** f.dimension))


def l2_bound(f: GridFunction, params: MoyalParams = MoyalParams()) -> float:
    """(2πθ)^{-N/2}‖f‖₂, majorante da norma de operador de f."""
    return (2 * np.pi * params.theta) ** (-f.halfdim / 2) * l2_norm(f)


def op_norm_estimate(
    f: GridFunction, params: MoyalParams = MoyalParams(), probes: int = 10
) -> float:
    """
    Limite inferior de ‖f‖_op por iteração de potência de g ↦ f ⋆_θ g.

    O adjunto de g ↦ f⋆g é g ↦ f̄⋆g. Retorna o máximo das razões
    ‖f⋆g‖₂/‖g‖₂ observadas, que não decresce com ``probes``.
    """
    if probes < 1:
        raise ArgumentError(f"probes deve ser ≥ 1, recebido {probes}")
    probe = gaussian(f.halfdim, f.points, f.extent, width=np.sqrt(params.theta / 2))
    probe = probe * (1 / l2_norm(probe))
    conjugate = f.conjugate()
    best = 0.0
    for iteration in range(probes):
        image = moyal_star(f, probe, params)
        ratio = l2_norm(image)
        best = max(best, ratio)
        logger.debug("estimativa de norma %d: %.12f", iteration + 1, ratio)
        back = moyal_star(conjugate, image, params)
        size = l2_norm(back)
        if size == 0.0:
            break
        probe = back * (1 / size)
    return best
