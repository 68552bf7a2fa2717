"""Tests for Legendre functions, spherical harmonics, fields and transforms."""
import math

import numpy as np
import numpy.testing as npt
import pytest
from scipy.special import eval_legendre

from src.core.exceptions import DomainError
from src.spectral.fields import (
    SpectralScalarField,
    SpectralVectorField,
    laplace_beltrami,
    read_scalar_json,
    sobolev_norm,
    write_field_json,
)
from src.spectral.harmonics import flat_index, grad_ylm, num_coeffs, ylm_eval, ylm_matrix
from src.spectral.legendre import legendre_all
from src.spectral.transforms import GaussGrid, analyze, project_vector, synthesize, synthesize_gradient, synthesize_vector
from tests.conftest import random_unit_vectors


class TestLegendre:
    def test_value_at_one(self):
        npt.assert_array_equal(legendre_all(1.0, 30), np.ones(31))

    def test_matches_reference(self):
        npt.assert_allclose(legendre_all(0.3, 50), eval_legendre(np.arange(51), 0.3), atol=1e-12)

    def test_argument_range(self):
        with pytest.raises(DomainError):
            legendre_all(1.1, 3)

    def test_array_shape(self):
        assert legendre_all(np.linspace(-1, 1, 7), 4).shape == (5, 7)


class TestHarmonics:
    def test_flat_index(self):
        assert flat_index(0, 0) == 0
        assert flat_index(2, -2) == 4
        assert num_coeffs(3) == 16

    def test_order_above_degree(self):
        with pytest.raises(DomainError):
            ylm_eval(2, 3, np.array([0.0, 0.0, 1.0]))

    def test_zonal_harmonics(self, rng):
        pts = random_unit_vectors(rng, 50)
        for n in (0, 1, 4, 9):
            expected = math.sqrt((2 * n + 1) / (4 * math.pi)) * eval_legendre(n, pts[:, 2])
            npt.assert_allclose(ylm_eval(n, 0, pts), expected, atol=1e-13)

    def test_addition_theorem(self, rng):
        pts = random_unit_vectors(rng, 100)
        Y = ylm_matrix(pts, 30)
        for n in range(31):
            block = Y[:, n * n: (n + 1) * (n + 1)]
            npt.assert_allclose(np.sum(block ** 2, axis=1), (2 * n + 1) / (4 * math.pi), rtol=1e-12)

    def test_orthonormal_on_gauss_grid(self):
        grid = GaussGrid(22, 42)
        Y = ylm_matrix(grid.points, 20)
        gram = Y.T @ (grid.weights[:, None] * Y)
        npt.assert_allclose(gram, np.eye(num_coeffs(20)), atol=1e-12)

    def test_gradient_is_tangent(self, rng):
        pts = random_unit_vectors(rng, 40)
        for n, k in ((1, 0), (3, -2), (7, 5)):
            npt.assert_allclose(np.sum(grad_ylm(n, k, pts) * pts, axis=1), 0.0, atol=1e-12)

    def test_gradient_matches_finite_differences(self, rng):
        pts = random_unit_vectors(rng, 20)
        tangent = np.cross(pts, random_unit_vectors(rng, 20))
        tangent /= np.linalg.norm(tangent, axis=1)[:, None]
        eps = 1e-5
        for n, k in ((2, 1), (5, -3), (8, 0)):
            forward = math.cos(eps) * pts + math.sin(eps) * tangent
            backward = math.cos(eps) * pts - math.sin(eps) * tangent
            numeric = (ylm_eval(n, k, forward) - ylm_eval(n, k, backward)) / (2 * eps)
            analytic = np.sum(grad_ylm(n, k, pts) * tangent, axis=1)
            npt.assert_allclose(numeric, analytic, atol=1e-6)

    def test_gradient_energy(self):
        grid = GaussGrid(22, 42)
        for n, k in ((1, 1), (6, -4), (12, 0)):
            g = grad_ylm(n, k, grid.points)
            energy = grid.weights @ np.sum(g * g, axis=1)
            assert energy == pytest.approx(n * (n + 1), rel=1e-12)

    def test_gradient_at_pole_is_finite(self):
        g = grad_ylm(3, 1, np.array([[0.0, 0.0, 1.0]]))
        assert np.all(np.isfinite(g))


class TestScalarFields:
    def test_analyze_basis_function(self):
        grid = GaussGrid.for_degree(5)
        coeffs = analyze(ylm_eval(5, 3, grid.points), grid, 5).coeffs
        expected = np.zeros(num_coeffs(5))
        expected[flat_index(5, 3)] = 1.0
        npt.assert_allclose(coeffs, expected, atol=1e-12)

    def test_undersized_grid(self):
        with pytest.raises(DomainError):
            analyze(np.zeros(GaussGrid(4, 9).size), GaussGrid(4, 9), 5)

    def test_synthesize_matches_basis_matrix(self, rng):
        f = SpectralScalarField(12, rng.standard_normal(num_coeffs(12)))
        pts = random_unit_vectors(rng, 30)
        npt.assert_allclose(synthesize(f, pts), ylm_matrix(pts, 12) @ f.coeffs, atol=1e-12)

    def test_synthesize_gradient(self, rng):
        pts = random_unit_vectors(rng, 10)
        f = SpectralScalarField.basis(4, -1, 6)
        npt.assert_allclose(synthesize_gradient(f, pts), grad_ylm(4, -1, pts), atol=1e-13)

    def test_laplace_beltrami(self):
        assert laplace_beltrami(SpectralScalarField.basis(0, 0)).coeff(0, 0) == 0.0
        assert laplace_beltrami(SpectralScalarField.basis(3, 2)).coeff(3, 2) == -12.0

    def test_truncate_pads_and_cuts(self, rng):
        f = SpectralScalarField(4, rng.standard_normal(25))
        npt.assert_array_equal(f.truncate(6).coeffs[:25], f.coeffs)
        npt.assert_array_equal(f.truncate(6).truncate(4).coeffs, f.coeffs)

    def test_sobolev_norm(self):
        assert sobolev_norm(SpectralScalarField.basis(2, 0), 1.0) == pytest.approx(2.5)

    def test_rejects_wrong_length(self):
        with pytest.raises(DomainError):
            SpectralScalarField(2, np.zeros(8))

    def test_json_file(self, rng, tmp_path):
        f = SpectralScalarField(5, rng.standard_normal(36))
        npt.assert_array_equal(read_scalar_json(write_field_json(f, tmp_path / "f.json")).coeffs, f.coeffs)


class TestVectorFields:
    def test_projection_recovers_coefficients(self, rng):
        N = 8
        field = SpectralVectorField(
            N,
            rng.standard_normal(num_coeffs(N)),
            rng.standard_normal(num_coeffs(N)),
            rng.standard_normal(num_coeffs(N)),
        )
        grid = GaussGrid.for_degree(N, vector=True)
        recovered = project_vector(synthesize_vector(field, grid.points), grid, N)
        npt.assert_allclose(recovered.plus, field.plus, atol=1e-10)
        npt.assert_allclose(recovered.minus, field.minus, atol=1e-10)
        npt.assert_allclose(recovered.df, field.df, atol=1e-10)

    def test_degree_zero_legs_are_zero(self):
        ones = np.ones(num_coeffs(2))
        field = SpectralVectorField(2, ones, ones, ones)
        assert field.plus[0] == 0.0 and field.df[0] == 0.0 and field.minus[0] == 1.0

    def test_leg_energies(self):
        N = 3
        unit = np.zeros(num_coeffs(N))
        unit[flat_index(3, 1)] = 1.0
        zeros = np.zeros_like(unit)
        energies = SpectralVectorField(N, unit, unit, unit).leg_energies()
        assert energies["plus"] == pytest.approx(3 / 7)
        assert energies["minus"] == pytest.approx(4 / 7)
        assert energies["df"] == pytest.approx(1.0)
        assert SpectralVectorField(N, zeros, zeros, zeros).energy() == 0.0

    def test_toroidal_field_is_tangent(self, rng):
        N = 5
        zeros = np.zeros(num_coeffs(N))
        field = SpectralVectorField(N, zeros, zeros, rng.standard_normal(num_coeffs(N)))
        pts = random_unit_vectors(rng, 25)
        npt.assert_allclose(np.sum(synthesize_vector(field, pts) * pts, axis=1), 0.0, atol=1e-12)
