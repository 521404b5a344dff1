import numpy as np
import pytest

from src.exceptions import ArgumentError, NumericRangeError
from src.models.grid import GridFunction, MoyalParams
from src.services import moyal
from src.utils.helpers import gaussian, gaussian_mixture


def relative(value: GridFunction, reference: GridFunction) -> float:
    return moyal.l2_norm(value - reference) / moyal.l2_norm(reference)


def test_fourier_of_gaussian():
    """Testa 𝓕e^{-|t|²/2} = 2π·e^{-|u|²/2} em ℝ²."""
    f = gaussian(1, 256, 20.0)

    spectrum = moyal.fourier(f)

    expected = GridFunction.from_callable(
        lambda u, v: 2 * np.pi * np.exp(-(u**2 + v**2) / 2), 1, 256, spectrum.extent
    )
    assert spectrum.extent == pytest.approx(2 * np.pi * 256 / 20.0)
    assert relative(spectrum, expected) <= 1e-8


def test_fourier_round_trip(offset_gaussians):
    """Testa 𝓕⁻¹𝓕f = f."""
    f, _ = offset_gaussians

    assert relative(moyal.inverse_fourier(moyal.fourier(f)), f) <= 1e-12


def test_parseval_constant(offset_gaussians):
    """Testa ‖𝓕f‖₂ = (2π)^N‖f‖₂."""
    f, _ = offset_gaussians

    expected = 2 * np.pi * moyal.l2_norm(f)
    assert moyal.l2_norm(moyal.fourier(f)) == pytest.approx(expected, rel=1e-10)


def test_l2_norm_of_normalized_gaussian():
    """Testa ‖g‖₂ = 1 para a gaussiana normalizada em ℝ²."""
    f = gaussian(1, 128, 16.0, amplitude=1 / np.sqrt(np.pi))

    assert moyal.l2_norm(f) == pytest.approx(1.0, abs=1e-10)


def test_symplectic_fourier_of_radial_function(standard_gaussian):
    """Testa Ff = 𝓕f para f radial."""
    assert relative(
        moyal.symplectic_fourier(standard_gaussian), moyal.fourier(standard_gaussian)
    ) <= 1e-12


@pytest.mark.parametrize("a", [0.5, 2.0, 4.0])
def test_symplectic_fourier_intertwines_dilations(a):
    """Testa F∘E_a = E_{1/a}∘F."""
    f = gaussian(1, 128, 16.0, width=0.7, center=[0.1, 0.1])

    left = moyal.symplectic_fourier(moyal.dilate(f, a))
    right = moyal.dilate(moyal.symplectic_fourier(f), 1 / a)

    assert relative(left, right) <= 1e-7


def test_dilation_is_unitary_and_invertible(standard_gaussian):
    """Testa ‖E_a f‖ = ‖f‖ e E_{1/a}E_a = id."""
    dilated = moyal.dilate(standard_gaussian, 2.0)

    assert moyal.l2_norm(dilated) == pytest.approx(moyal.l2_norm(standard_gaussian), rel=1e-8)
    assert relative(moyal.dilate(dilated, 0.5), standard_gaussian) <= 1e-7
    assert moyal.dilate(standard_gaussian, 1.0) is standard_gaussian


def test_dilation_out_of_range(standard_gaussian):
    """Testa erro quando o suporte dilatado sai da grade."""
    with pytest.raises(NumericRangeError):
        moyal.dilate(standard_gaussian, 0.1)
    with pytest.raises(ArgumentError):
        moyal.dilate(standard_gaussian, -1.0)


def test_shift_round_trip_and_integral(standard_gaussian):
    """Testa (f_Δ)_{-Δ} = f e ∫f_Δ = ∫f."""
    delta = [0.7, -1.1]

    moved = moyal.shift(standard_gaussian, delta)

    assert relative(moyal.shift(moved, [-0.7, 1.1]), standard_gaussian) <= 1e-10
    assert abs(moyal.integral(moved) - moyal.integral(standard_gaussian)) <= 1e-10
    assert moved.samples[64, 64] == pytest.approx(np.exp(-(0.7**2 + 1.1**2) / 2), abs=1e-10)


def test_shift_overflow(standard_gaussian):
    """Testa erro quando a translação leva o suporte à borda."""
    with pytest.raises(NumericRangeError):
        moyal.shift(standard_gaussian, [5.0, 0.0])


def test_twisted_convolution_matches_direct():
    """Testa a rota por FFT contra a quadratura direta em M=32."""
    f = gaussian(1, 32, 12.0, center=[0.3, 0.0])
    g = gaussian(1, 32, 12.0, width=1.3, center=[0.0, -0.4])

    fast = moyal.twisted_convolution(f, g)
    direct = moyal.twisted_convolution_direct(f, g)

    assert relative(fast, direct) <= 1e-10


def test_twisted_convolution_rejects_grid_mismatch(standard_gaussian):
    """Testa erro com grades diferentes."""
    other = gaussian(1, 64, 16.0)

    with pytest.raises(ArgumentError):
        moyal.twisted_convolution(standard_gaussian, other)


def test_direct_oracle_size_limit(standard_gaussian):
    """Testa o limite de pontos da quadratura direta."""
    with pytest.raises(ArgumentError):
        moyal.twisted_convolution_direct(standard_gaussian, standard_gaussian)


def test_product_duality(offset_gaussians):
    """Testa 𝓕(f⋄g) = 𝓕f×𝓕g."""
    f, g = offset_gaussians

    left = moyal.fourier(moyal.twisted_convolution(f, g))
    right = moyal.moyal_times(moyal.fourier(f), moyal.fourier(g))

    assert moyal.l2_norm(left - right) <= 1e-6 * moyal.l2_norm(f) * moyal.l2_norm(g)


def test_gaussian_idempotent(standard_gaussian):
    """Testa f₀×f₀ = f₀ com f₀ = 2e^{-|x|²/2}."""
    f0 = standard_gaussian * 2.0

    assert relative(moyal.moyal_times(f0, f0), f0) <= 1e-5


def test_moyal_times_is_noncommutative(offset_gaussians):
    """Testa ‖f×g - g×f‖₂ > 1e-3."""
    f, g = offset_gaussians

    commutator = moyal.moyal_times(f, g) - moyal.moyal_times(g, f)

    assert moyal.l2_norm(commutator) > 1e-3


def test_tracial_property(offset_gaussians):
    """Testa ∫(f×g) = ∫f·g."""
    f, g = offset_gaussians

    product = moyal.integral(moyal.moyal_times(f, g))
    pointwise = moyal.integral(f.with_samples(f.samples * g.samples))

    assert abs(product - pointwise) <= 1e-6 * moyal.l2_norm(f) * moyal.l2_norm(g)


def test_defects_shrink_under_grid_refinement():
    """Testa queda ≥ 4× dos defeitos quando M dobra, salvo os já no nível de arredondamento."""

    def defects(points):
        f = gaussian(1, points, 16.0, center=[0.4, -0.3])
        g = gaussian(1, points, 16.0, width=1.2, center=[-0.2, 0.5])
        f0 = gaussian(1, points, 16.0, amplitude=2.0)
        scale = moyal.l2_norm(f) * moyal.l2_norm(g)
        left = moyal.fourier(moyal.twisted_convolution(f, g))
        right = moyal.moyal_times(moyal.fourier(f), moyal.fourier(g))
        product = moyal.integral(moyal.moyal_times(f, g))
        pointwise = moyal.integral(f.with_samples(f.samples * g.samples))
        return {
            "duality_product": moyal.l2_norm(left - right) / scale,
            "tracial": abs(product - pointwise) / scale,
            "idempotent": relative(moyal.moyal_times(f0, f0), f0),
        }

    coarse, fine = defects(16), defects(32)

    assert coarse["idempotent"] > 1e-8
    for name, value in coarse.items():
        assert fine[name] <= value / 4 or value <= 1e-12, name


def test_moyal_star_theta_two_is_times(offset_gaussians):
    """Testa ⋆_2 = ×."""
    f, g = offset_gaussians

    assert relative(moyal.moyal_star(f, g, MoyalParams(2.0)), moyal.moyal_times(f, g)) <= 1e-9


def test_moyal_star_associative():
    """Testa (f⋆g)⋆h = f⋆(g⋆h) com θ = 3."""
    params = MoyalParams(3.0)
    f, g, h = (gaussian(1, 128, 24.0, center=c) for c in ([0.3, 0], [0, -0.2], [-0.1, 0.1]))

    left = moyal.moyal_star(moyal.moyal_star(f, g, params), h, params)
    right = moyal.moyal_star(f, moyal.moyal_star(g, h, params), params)

    assert relative(left, right) <= 1e-5


def test_standard_gauge_is_isomorphism():
    """Testa φ(f⋆_θ g) = φ(f)×φ(g) e φ⁻¹φ = id."""
    params = MoyalParams(2.5)
    f = gaussian(1, 128, 16.0, width=0.8, center=[0.3, -0.2])
    g = gaussian(1, 128, 16.0, width=0.9, center=[-0.2, 0.4])

    left = moyal.to_standard_gauge(moyal.moyal_star(f, g, params), params)
    right = moyal.moyal_times(
        moyal.to_standard_gauge(f, params), moyal.to_standard_gauge(g, params)
    )

    assert relative(left, right) <= 1e-6
    back = moyal.from_standard_gauge(moyal.to_standard_gauge(f, params), params)
    assert relative(back, f) <= 1e-7


def test_scaling_relation_against_direct_quadrature():
    """Testa a rota por dilatação contra a quadratura direta de ⋆_θ no centro da grade."""
    params = MoyalParams(2.5)
    coarse = [gaussian(1, 32, 16.0, center=c) for c in ([0.3, 0.3], [-0.2, -0.2])]
    fine = [gaussian(1, 128, 16.0, center=c) for c in ([0.3, 0.3], [-0.2, -0.2])]

    direct = moyal.moyal_star_direct(*coarse, params)
    scaled = moyal.moyal_star(*fine, params).samples[::4, ::4]

    central = np.abs(direct.axis) <= 4.0
    window = np.ix_(central, central)
    error = np.linalg.norm(scaled[window] - direct.samples[window])
    assert error <= 1e-4 * np.linalg.norm(direct.samples[window])


def test_op_norm_of_idempotent(standard_gaussian):
    """Testa ‖f₀‖_op = 1."""
    f0 = standard_gaussian * 2.0

    assert moyal.op_norm_estimate(f0, MoyalParams(2.0), probes=5) == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("theta", [1.0, 2.0, 4.0])
def test_op_norm_below_l2_bound(rng, theta):
    """Testa estimativa ≤ (2πθ)^{-N/2}‖f‖₂ para misturas gaussianas."""
    params = MoyalParams(theta)
    for _ in range(3):
        f = gaussian_mixture(rng, 1, 128, 28.0)
        assert moyal.op_norm_estimate(f, params, probes=6) <= moyal.l2_bound(f, params) + 1e-6


def test_standard_gauge_needs_wide_grid_for_small_theta():
    """Testa que θ = 1 exige uma grade mais larga que L = 16."""
    rng = np.random.default_rng(3)
    params = MoyalParams(1.0)

    with pytest.raises(NumericRangeError):
        moyal.to_standard_gauge(gaussian_mixture(rng, 1, 128, 16.0), params)
    moyal.to_standard_gauge(gaussian_mixture(rng, 1, 256, 32.0), params)


def test_op_norm_monotone_in_probes(offset_gaussians):
    """Testa que a estimativa não decresce com o número de iterações."""
    f, _ = offset_gaussians

    estimates = [moyal.op_norm_estimate(f, probes=p) for p in (1, 3, 6)]

    assert estimates == sorted(estimates)


def test_op_norm_requires_probe():
    """Testa erro com probes < 1."""
    with pytest.raises(ArgumentError):
        moyal.op_norm_estimate(gaussian(1, 32, 12.0), probes=0)
