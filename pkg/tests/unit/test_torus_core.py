import numpy as np
import pytest
import scipy.signal
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.numpy import arrays

from src.exceptions import ArgumentError
from src.models.covering import CoveringSpec
from src.models.torus import DeformationMatrix, TorusElement
from src.models.tower import TowerSpec
from src.services import torus_core
from src.utils.helpers import irrational_theta

coefficients = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def relative_defect(difference: TorusElement, *factors: TorusElement) -> float:
    scale = np.prod([torus_core.one_norm_bound(f) for f in factors])
    return torus_core.one_norm_bound(difference) / scale


def test_deformation_matrix_skew_symmetric():
    """Testa que a matriz completa é antissimétrica."""
    theta = DeformationMatrix.from_upper(3, [0.1, 0.2, 0.3])

    assert np.array_equal(theta.entries, -theta.entries.T)
    assert theta.upper() == [0.1, 0.2, 0.3]


def test_deformation_matrix_rejects_non_skew():
    """Testa rejeição de matriz não antissimétrica."""
    with pytest.raises(ArgumentError):
        DeformationMatrix.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_make_unitary_origin_is_identity(theta2):
    """Testa que U_0 é a unidade."""
    unit = torus_core.make_unitary((0, 0), theta2)

    assert unit.coefficient((0, 0)) == 1
    assert torus_core.trace(unit) == 1


def test_make_unitary_dimension_mismatch(theta2):
    """Testa erro de dimensão em make_unitary."""
    with pytest.raises(ArgumentError):
        torus_core.make_unitary((1, 0, 0), theta2)


def test_star_product_of_generators(theta2):
    """Testa U_{e1} ⋆ U_{e2} = e^{-πiθ} U_{e1+e2}."""
    u1 = torus_core.make_unitary((1, 0), theta2)
    u2 = torus_core.make_unitary((0, 1), theta2)

    product = torus_core.star_product(u1, u2)

    expected = np.exp(-1j * np.pi * theta2.entries[0, 1])
    assert product.coefficient((1, 1)) == pytest.approx(expected, abs=1e-15)
    assert product.nonzero_count == 1
    assert product.cutoff == 2


def test_star_product_rejects_different_theta(theta2):
    """Testa erro com matrizes de deformação diferentes."""
    other = DeformationMatrix.from_upper(2, [0.25])
    a = torus_core.make_unitary((1, 0), theta2)
    b = torus_core.make_unitary((1, 0), other)

    with pytest.raises(ArgumentError):
        torus_core.star_product(a, b)


def test_star_product_accepts_theta_up_to_rounding():
    """Testa que Θ obtidos por caminhos diferentes de divisão são aceitos."""
    tower = TowerSpec((2, 2))
    direct = tower.level_theta(2)
    covered = CoveringSpec(tower.level_theta(0), (4, 4)).cover_theta
    rounded = DeformationMatrix.from_upper(2, [direct.upper_values[0] * (1 + 2**-52)])

    for theta in (covered, rounded):
        a = torus_core.make_unitary((1, 0), direct)
        b = torus_core.make_unitary((0, 1), theta)
        product = torus_core.star_product(a, b)
        assert product.coefficient((1, 1)) == pytest.approx(
            np.exp(-1j * np.pi * direct.entries[0, 1]), abs=1e-15
        )


def test_star_product_identity(rng, theta3):
    """Testa a ⋆ 1 = a."""
    a = torus_core.random_element(rng, theta3, 2)
    one = TorusElement.identity(theta3)

    product = torus_core.star_product(a, one)

    assert np.allclose(product.coeffs, a.coeffs, atol=1e-15)


@given(
    arrays(np.complex128, (5, 5), elements=coefficients),
    arrays(np.complex128, (3, 3), elements=coefficients),
)
@hypothesis_settings(max_examples=30, deadline=None)
def test_star_product_commutative_is_convolution(a, b):
    """Testa que Θ = 0 reduz ⋆ à convolução dos coeficientes."""
    theta = DeformationMatrix.zero(2)

    product = torus_core.star_product(TorusElement(theta, a, 2), TorusElement(theta, b, 1))

    expected = scipy.signal.convolve(a, b, method="direct")
    scale = max(1.0, float(np.abs(a).sum() * np.abs(b).sum()))
    assert np.allclose(product.coeffs, expected, rtol=0.0, atol=1e-12 * scale)


@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=4))
@hypothesis_settings(max_examples=25, deadline=None)
def test_associativity(seed, n):
    """Testa (a⋆b)⋆c = a⋆(b⋆c) com Θ irracional."""
    rng = np.random.default_rng(seed)
    theta = irrational_theta(rng, n)
    cutoff = 3 if n < 4 else 2
    a, b, c = (torus_core.random_element(rng, theta, cutoff, terms=10) for _ in range(3))

    left = torus_core.star_product(torus_core.star_product(a, b), c)
    right = torus_core.star_product(a, torus_core.star_product(b, c))

    assert relative_defect(torus_core.subtract(left, right), a, b, c) <= 1e-10


@given(st.integers(min_value=0, max_value=2**32 - 1))
@hypothesis_settings(max_examples=25, deadline=None)
def test_involution_reverses_products(seed):
    """Testa (a⋆b)* = b* ⋆ a*."""
    rng = np.random.default_rng(seed)
    theta = irrational_theta(rng, 3)
    a, b = (torus_core.random_element(rng, theta, 2) for _ in range(2))

    left = torus_core.involution(torus_core.star_product(a, b))
    right = torus_core.star_product(torus_core.involution(b), torus_core.involution(a))

    assert relative_defect(torus_core.subtract(left, right), a, b) <= 1e-12


def test_involution_of_scaled_unitary(theta2):
    """Testa (c·U_k)* = conj(c)·U_{-k}."""
    a = torus_core.scale(torus_core.make_unitary((2, -3), theta2), 1 + 2j)

    adjoint = torus_core.involution(a)

    assert adjoint.coefficient((-2, 3)) == 1 - 2j
    assert torus_core.involution(adjoint).coefficient((2, -3)) == 1 + 2j


def test_real_part_is_self_adjoint(rng, theta3):
    a = torus_core.random_element(rng, theta3, 2)

    assert torus_core.add(a, torus_core.involution(a)).is_self_adjoint()
    assert not torus_core.make_unitary((1, 0, 0), theta3).is_self_adjoint()


def test_commutation_relation(rng):
    """Testa U_{e_k} U_{e_j} = e^{2πiΘ_jk} U_{e_j} U_{e_k} para Θ aleatórios."""
    for _ in range(20):
        theta = irrational_theta(rng, 3)
        for j in range(3):
            for k in range(3):
                uj = torus_core.make_unitary(torus_core.unit_vector(3, j), theta)
                uk = torus_core.make_unitary(torus_core.unit_vector(3, k), theta)
                left = torus_core.star_product(uk, uj)
                right = torus_core.scale(
                    torus_core.star_product(uj, uk), torus_core.commutator_phase(theta, j, k)
                )
                assert torus_core.one_norm_bound(torus_core.subtract(left, right)) <= 1e-12


def test_traciality(rng, theta2):
    """Testa τ(a⋆b) = τ(b⋆a)."""
    a, b = (torus_core.random_element(rng, theta2, 3) for _ in range(2))

    ab = torus_core.trace(torus_core.star_product(a, b))
    ba = torus_core.trace(torus_core.star_product(b, a))

    scale = torus_core.one_norm_bound(a) * torus_core.one_norm_bound(b)
    assert abs(ab - ba) <= 1e-12 * scale


def test_trace_of_unitaries(theta2):
    """Testa τ(1) = 1 e τ(U_k) = 0 para k ≠ 0."""
    assert torus_core.trace(TorusElement.identity(theta2)) == 1
    assert torus_core.trace(torus_core.make_unitary((1, -1), theta2)) == 0


def test_l2_inner_orthonormal_basis(theta2):
    """Testa (U_k, U_l) = δ_kl."""
    uk = torus_core.make_unitary((1, 2), theta2)
    ul = torus_core.make_unitary((2, 1), theta2)

    assert torus_core.l2_inner(uk, uk) == pytest.approx(1.0)
    assert abs(torus_core.l2_inner(uk, ul)) == 0


def test_l2_inner_is_parseval(rng, theta3):
    """Testa (a, a) = Σ|c_l|² e positividade."""
    a = torus_core.random_element(rng, theta3, 2)

    value = torus_core.l2_inner(a, a)

    assert abs(value.imag) <= 1e-12
    assert value.real == pytest.approx(float(np.sum(np.abs(a.coeffs) ** 2)), rel=1e-12)


def test_one_norm_bound_of_disjoint_unitaries(theta2):
    """Testa ‖U_j + U_k‖₁ = 2."""
    a = torus_core.add(
        torus_core.make_unitary((1, 0), theta2), torus_core.make_unitary((0, 1), theta2)
    )

    assert torus_core.one_norm_bound(a) == 2


def test_truncate_reports_tail(theta2):
    """Testa a cauda ℓ¹ descartada pelo truncamento."""
    a = TorusElement.from_terms(theta2, {(0, 0): 1.0, (2, 0): 0.5, (0, -3): 0.25j})

    truncated, tail = torus_core.truncate(a, 1)

    assert truncated.cutoff == 1
    assert tail == pytest.approx(0.75)
    assert truncated.coefficient((0, 0)) == 1


def test_operator_norm_of_unitary(theta2):
    """Testa ‖U_k‖ = 1 na base truncada."""
    u = torus_core.make_unitary((1, -1), theta2)

    assert torus_core.approx_operator_norm(u, 4) == pytest.approx(1.0, abs=1e-10)


def test_operator_norm_commutative_limit():
    """Testa ‖1 + U_{e1}‖ → sup|1 + e^{ix}| = 2 em Θ = 0."""
    theta = DeformationMatrix.zero(1)
    a = torus_core.add(TorusElement.identity(theta), torus_core.make_unitary((1,), theta))

    small = torus_core.approx_operator_norm(a, 4)
    large = torus_core.approx_operator_norm(a, 64)

    assert small <= large + 1e-10
    assert large == pytest.approx(2.0, abs=5e-3)
    assert large <= torus_core.one_norm_bound(a) + 1e-10


def test_operator_norm_sandwich(rng, theta2):
    """Testa norma truncada ≤ majorante ℓ¹."""
    for _ in range(10):
        a = torus_core.random_element(rng, theta2, 2)
        assert torus_core.approx_operator_norm(a, 6) <= torus_core.one_norm_bound(a) + 1e-10


def test_operator_norm_requires_basis_cutoff(rng, theta2):
    """Testa erro quando a base é menor que o suporte."""
    a = torus_core.random_element(rng, theta2, 3)

    with pytest.raises(ArgumentError):
        torus_core.approx_operator_norm(a, 2)
