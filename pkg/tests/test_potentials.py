"""Tests for operator symbols and the Hardy-space operators."""
import numpy as np
import numpy.testing as npt
import pytest

from src.core.exceptions import DomainError
from src.potentials.hardy import (
    apply_Bminus,
    apply_Bplus,
    hardy_combination,
    hardy_hodge_decompose,
    multiplier_tables,
    tau_ptm_of_localized,
)
from src.potentials.symbols import (
    K,
    K_MINUS_HALF,
    K_PLUS_HALF,
    LAPLACE_BELTRAMI,
    S,
    S_INV,
    apply_symbol,
    compose,
    get_symbol,
    neg_lb_plus_quarter_pow,
)
from src.spectral.fields import SpectralScalarField, SpectralVectorField, laplace_beltrami
from src.spectral.harmonics import flat_index, num_coeffs
from src.spectral.transforms import GaussGrid, synthesize, synthesize_gradient, synthesize_vector


def random_field(rng, N, drop_constant=False):
    coeffs = rng.standard_normal(num_coeffs(N))
    if drop_constant:
        coeffs[0] = 0.0
    return SpectralScalarField(N, coeffs)


class TestSymbols:
    def test_tables(self):
        npt.assert_allclose(S.table(3), [-1.0, -1.0 / 3, -1.0 / 5, -1.0 / 7])
        npt.assert_allclose(K.table(2), [0.5, 1.0 / 6, 0.1])
        npt.assert_allclose(LAPLACE_BELTRAMI.table(3), [0.0, -2.0, -6.0, -12.0])
        npt.assert_allclose(neg_lb_plus_quarter_pow(2.0).table(2), [0.25, 2.25, 6.25])

    def test_jump_relations(self):
        n = np.arange(30, dtype=float)
        npt.assert_allclose(K_PLUS_HALF.table(29) - K_MINUS_HALF.table(29), 1.0)
        npt.assert_allclose(K_MINUS_HALF.table(29), -n / (2 * n + 1))
        npt.assert_allclose(K_PLUS_HALF.table(29), (n + 1) / (2 * n + 1))

    def test_single_layer_inverse(self):
        npt.assert_allclose(compose(S, S_INV).table(40), 1.0)
        npt.assert_allclose((S @ S_INV).table(5), 1.0)
        assert compose(S, K).name == "S*K"

    def test_compose_needs_symbols(self):
        with pytest.raises(DomainError):
            compose()

    def test_lookup(self):
        assert get_symbol("K") is K
        with pytest.raises(DomainError, match="unknown operator symbol"):
            get_symbol("double_layer_adjoint")

    def test_apply_matches_laplace_beltrami(self, rng):
        f = random_field(rng, 12)
        npt.assert_allclose(apply_symbol(LAPLACE_BELTRAMI, f).coeffs, laplace_beltrami(f).coeffs)

    def test_applying_composition_equals_applying_in_turn(self, rng):
        f = random_field(rng, 10)
        once = apply_symbol(compose(S, K_PLUS_HALF), f)
        twice = apply_symbol(S, apply_symbol(K_PLUS_HALF, f))
        npt.assert_allclose(once.coeffs, twice.coeffs)


class TestMultipliers:
    def test_ranges(self):
        tables = multiplier_tables(200)
        assert np.isnan(tables["plus"][0])
        assert np.all(tables["plus"][1:] >= 1.0 / 3 - 1e-15)
        assert np.all(tables["plus"][1:] < 0.5)
        assert np.all(tables["minus"] > 0.5)
        assert np.all(tables["minus"] <= 1.0)
        assert tables["minus"][0] == 1.0


class TestHardyOperators:
    def test_bplus_annihilates_constants(self):
        field = apply_Bplus(SpectralScalarField.basis(0, 0, 3))
        assert field.energy() == 0.0

    def test_operator_form_of_bplus(self, rng):
        f = random_field(rng, 9, drop_constant=True)
        pts = GaussGrid(12, 24).points
        direct = synthesize_vector(apply_Bplus(f), pts)
        composed = (
            synthesize(apply_symbol(K_MINUS_HALF, f), pts)[:, None] * pts
            + synthesize_gradient(apply_symbol(S, f), pts)
        )
        npt.assert_allclose(direct, composed, atol=1e-11)

    def test_operator_form_of_bminus(self, rng):
        f = random_field(rng, 9)
        pts = GaussGrid(12, 24).points
        direct = synthesize_vector(apply_Bminus(f), pts)
        composed = (
            synthesize(apply_symbol(K_PLUS_HALF, f), pts)[:, None] * pts
            + synthesize_gradient(apply_symbol(S, f), pts)
        )
        npt.assert_allclose(direct, composed, atol=1e-11)

    def test_hardy_basis_is_orthogonal(self):
        N = 10
        grid = GaussGrid(20, 40)
        columns, expected = [], []
        for n in range(N + 1):
            for k in range(-n, n + 1):
                basis = SpectralScalarField.basis(n, k, N)
                if n > 0:
                    columns.append(synthesize_vector(apply_Bplus(basis), grid.points))
                    expected.append(n / (2.0 * n + 1.0))
                columns.append(synthesize_vector(apply_Bminus(basis), grid.points))
                expected.append((n + 1.0) / (2.0 * n + 1.0))
        V = np.stack(columns)
        gram = np.einsum("ipd,jpd,p->ij", V, V, grid.weights)
        npt.assert_allclose(gram, np.diag(expected), atol=1e-12)

    def test_decompose_recovers_single_basis_vector(self):
        N = 8
        grid = GaussGrid.for_degree(N, vector=True)
        samples = synthesize_vector(apply_Bplus(SpectralScalarField.basis(3, 2, N)), grid.points)
        split = hardy_hodge_decompose(samples, grid, N)
        expected = np.zeros(num_coeffs(N))
        expected[flat_index(3, 2)] = 1.0
        npt.assert_allclose(split.plus, expected, atol=1e-12)
        npt.assert_allclose(split.minus, 0.0, atol=1e-12)
        npt.assert_allclose(split.df, 0.0, atol=1e-12)
        assert split.leg_energies()["plus"] == pytest.approx(3.0 / 7.0)

    def test_decompose_separates_all_legs(self, rng):
        N = 7
        legs = [rng.standard_normal(num_coeffs(N)) for _ in range(3)]
        field = SpectralVectorField(N, *legs)
        grid = GaussGrid.for_degree(N, vector=True, oversampling=1.5)
        split = hardy_hodge_decompose(synthesize_vector(field, grid.points), grid, N)
        npt.assert_allclose(split.plus, field.plus, atol=1e-11)
        npt.assert_allclose(split.minus, field.minus, atol=1e-11)
        npt.assert_allclose(split.df, field.df, atol=1e-11)

    def test_hardy_combination(self, rng):
        f_plus = random_field(rng, 3)
        f_minus = random_field(rng, 5)
        combined = hardy_combination(f_plus, f_minus)
        assert combined.max_degree == 5
        assert combined.plus[0] == 0.0
        npt.assert_allclose(combined.plus[1:num_coeffs(3)], f_plus.coeffs[1:])
        npt.assert_allclose(combined.plus[num_coeffs(3):], 0.0)
        npt.assert_allclose(combined.minus, f_minus.coeffs)
        npt.assert_allclose(combined.df, 0.0)

    def test_tau_of_localized_field(self, rng):
        legs = [rng.standard_normal(num_coeffs(6)) for _ in range(3)]
        field = SpectralVectorField(6, *legs)
        tau = tau_ptm_of_localized(SpectralScalarField.zeros(4), field)
        assert tau.max_degree == 4
        npt.assert_allclose(tau.coeffs, legs[1][:num_coeffs(4)])
