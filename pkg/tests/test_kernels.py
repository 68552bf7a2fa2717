"""Tests for zonal kernel transforms, Wendland and regularized Green kernels."""
import math

import numpy as np
import numpy.testing as npt
import pytest

from src.core.exceptions import DomainError
from src.geometry.domains import angle_between, unit_vector
from src.kernels.green import (
    GreenDifferenceAtom,
    green_coeffs,
    green_profile,
    reg_green_coeffs,
    reg_green_coeffs_array,
    reg_green_gradient,
    reg_green_laplacian_profile,
    reg_green_profile,
    reg_green_profile_derivative,
)
from src.kernels.wendland import (
    WendlandKernel,
    wendland_coeffs,
    wendland_profile,
    wendland_spatial,
)
from src.kernels.zonal import legendre_transform, radial_legendre_transform, zonal_synthesis
from src.spectral.harmonics import num_coeffs
from tests.conftest import E3, random_unit_vectors


class TestWendland:
    def test_profile(self):
        npt.assert_allclose(wendland_profile([0.0, 0.5, 1.0, 1.5]), [1.0, 0.1875, 0.0, 0.0])

    def test_scale_range(self):
        with pytest.raises(DomainError):
            WendlandKernel(0.0)

    @pytest.mark.parametrize("delta", [0.1, 0.385, 1.0])
    def test_spectrum_matches_quadrature(self, delta):
        oracle = radial_legendre_transform(lambda r: wendland_profile(r / delta) / delta ** 2, 50, delta)
        npt.assert_allclose(wendland_coeffs(delta, 50).coeffs, oracle, rtol=1e-8, atol=1e-13)

    def test_spectrum_base_case(self):
        assert wendland_coeffs(0.5, 0).coeffs[0] == pytest.approx(math.pi / 7, rel=1e-14)

    def test_spectrum_is_positive(self):
        assert np.all(wendland_coeffs(0.3, 120).coeffs > 0.0)

    def test_matrix_and_evaluate_agree(self, rng):
        kernel = WendlandKernel(0.6)
        centers = random_unit_vectors(rng, 30)
        alphas = rng.standard_normal(30)
        samples = random_unit_vectors(rng, 40)
        npt.assert_allclose(kernel.evaluate(centers, alphas, samples), kernel.matrix(samples, centers) @ alphas, atol=1e-13)
        K = kernel.matrix(centers)
        npt.assert_allclose(K, K.T)
        npt.assert_allclose(np.diag(K), 1.0 / 0.36)

    def test_spatial_support(self):
        far = unit_vector(1.0, 0.0, 0.0)
        assert wendland_spatial(0.5, E3, far)[0] == 0.0

    def test_gradient_matches_finite_differences(self, rng):
        kernel = WendlandKernel(0.8)
        center = unit_vector(0.1, 0.2, 0.95)
        pts = random_unit_vectors(rng, 200)
        pts = pts[np.linalg.norm(pts - center, axis=1) < 0.75][:20]
        tangent = np.cross(pts, random_unit_vectors(rng, len(pts)))
        tangent /= np.linalg.norm(tangent, axis=1)[:, None]
        eps = 1e-6
        plus = math.cos(eps) * pts + math.sin(eps) * tangent
        minus = math.cos(eps) * pts - math.sin(eps) * tangent
        numeric = (kernel(center, plus) - kernel(center, minus)) / (2 * eps)
        analytic = np.sum(kernel.gradient(center, pts) * tangent, axis=1)
        npt.assert_allclose(numeric, analytic, atol=1e-6)

    def test_truncated_synthesis_at_center(self):
        coeffs = wendland_coeffs(1.0, 80).coeffs
        assert zonal_synthesis(coeffs, 1.0) == pytest.approx(1.0, abs=1e-3)


class TestGreen:
    def test_singular(self):
        with pytest.raises(DomainError, match="singular"):
            green_profile(1.0)

    def test_coefficients(self):
        c = green_coeffs(4)
        npt.assert_allclose(c, [0.0, -0.5, -1.0 / 6, -1.0 / 12, -1.0 / 20])

    def test_series_at_orthogonal_points(self):
        assert zonal_synthesis(green_coeffs(5000), 0.0) == pytest.approx(float(green_profile(0.0)), abs=1e-4)

    @pytest.mark.parametrize("rho", [0.105, 0.025])
    def test_regularized_coefficients_match_quadrature(self, rho):
        oracle = legendre_transform(lambda t: reg_green_profile(rho, t), 50, breakpoints=[1.0 - rho], nodes=400)
        npt.assert_allclose(reg_green_coeffs_array(rho, 50), oracle, rtol=1e-8, atol=1e-14)

    def test_mean_value(self):
        assert reg_green_coeffs(0.2, 3).coeffs[0] == pytest.approx(0.05)

    def test_rho_range(self):
        with pytest.raises(DomainError):
            reg_green_coeffs_array(2.0, 3)

    @pytest.mark.parametrize("rho", [0.105, 0.006])
    def test_branches_join_smoothly(self, rho):
        t0 = 1.0 - rho
        eps = 1e-13
        lo, hi = reg_green_profile(rho, t0 - eps), reg_green_profile(rho, t0 + eps)
        assert abs(hi - lo) <= 1e-11
        dlo, dhi = reg_green_profile_derivative(rho, t0 - eps), reg_green_profile_derivative(rho, t0 + eps)
        assert abs(dhi - dlo) <= 1e-9 * abs(dlo)

    def test_matches_unregularized_outside_cap(self):
        t = np.linspace(-1.0, 0.8, 50)
        npt.assert_allclose(reg_green_profile(0.1, t), green_profile(t), atol=1e-15)

    def test_laplacian_has_zero_mean(self):
        mean = legendre_transform(lambda t: reg_green_laplacian_profile(0.105, t), 0, breakpoints=[0.895])[0]
        assert mean == pytest.approx(0.0, abs=1e-13)

    def test_gradient_matches_finite_differences(self, rng):
        rho = 0.105
        center = unit_vector(0.3, -0.1, 0.9)
        pts = random_unit_vectors(rng, 30)
        tangent = np.cross(pts, random_unit_vectors(rng, 30))
        tangent /= np.linalg.norm(tangent, axis=1)[:, None]
        eps = 1e-6
        plus = math.cos(eps) * pts + math.sin(eps) * tangent
        minus = math.cos(eps) * pts - math.sin(eps) * tangent
        numeric = (reg_green_profile(rho, plus @ center) - reg_green_profile(rho, minus @ center)) / (2 * eps)
        analytic = np.sum(reg_green_gradient(rho, center, pts) * tangent, axis=1)
        npt.assert_allclose(numeric, analytic, atol=1e-6)


class TestGreenDifferenceAtom:
    def test_laplacian_vanishes_outside_caps(self, rng):
        atom = GreenDifferenceAtom(unit_vector(0.0, 0.3, 1.0), E3, 0.105)
        pts = random_unit_vectors(rng, 10000)
        outside = (pts @ atom.x <= 1.0 - atom.rho) & (pts @ atom.xbar <= 1.0 - atom.rho)
        assert np.count_nonzero(outside) > 8500
        assert np.all(atom.laplacian(pts[outside]) == 0.0)

    def test_laplacian_inside_cap(self):
        atom = GreenDifferenceAtom(E3, -E3, 0.2)
        value = atom.laplacian(E3)[0]
        assert value == pytest.approx(1.0 / (2 * math.pi * 0.2) + 1.0 / (4 * math.pi))

    def test_spectral_laplacian_away_from_cap_edges(self):
        rho, N = 0.105, 400
        n = np.arange(N + 1)
        laplacian_coeffs = -n * (n + 1.0) * reg_green_coeffs_array(rho, N)
        theta = np.linspace(0.8, 2.4, 40)
        spectral = zonal_synthesis(laplacian_coeffs, np.cos(theta))
        npt.assert_allclose(spectral, reg_green_laplacian_profile(rho, np.cos(theta)), atol=2e-2)

    def test_value_is_antisymmetric(self, rng):
        x, xbar = unit_vector(1.0, 0.0, 1.0), E3
        pts = random_unit_vectors(rng, 20)
        forward = GreenDifferenceAtom(x, xbar, 0.05).value(pts)
        backward = GreenDifferenceAtom(xbar, x, 0.05).value(pts)
        npt.assert_allclose(forward, -backward, atol=1e-15)

    def test_gradient_is_tangent(self, rng):
        atom = GreenDifferenceAtom(unit_vector(0.0, 1.0, 1.0), E3, 0.1)
        pts = random_unit_vectors(rng, 50)
        npt.assert_allclose(np.sum(atom.gradient(pts) * pts, axis=1), 0.0, atol=1e-13)


def test_legendre_transform_of_a_polynomial():
    coeffs = legendre_transform(lambda t: t, 3)
    npt.assert_allclose(coeffs, [0.0, 4.0 * math.pi / 3.0, 0.0, 0.0], atol=1e-14)


def test_zonal_synthesis_inverts_transform():
    profile = lambda t: 1.0 + t + 0.5 * t ** 2
    coeffs = legendre_transform(profile, 2)
    t = np.linspace(-1.0, 1.0, 9)
    npt.assert_allclose(zonal_synthesis(coeffs, t), profile(t), atol=1e-13)
    assert num_coeffs(2) == 9
