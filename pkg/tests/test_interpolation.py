"""Tests for Wendland interpolation and the multiscale residual-correction scheme."""
import json

import numpy as np
import numpy.testing as npt
import pytest

from src.core.exceptions import DomainError, IllConditionedError
from src.geometry.domains import SphericalCap, unit_vector
from src.geometry.points import HierarchicalPointSets, PointSet, fibonacci_lattice
from src.interpolation.multiscale import (
    InterpolationModel,
    MultiscaleModel,
    field_sampler,
    interpolate,
    l2_error,
    lebesgue_ratio,
    model_spectral,
    multiscale_fit,
    native_inner_product,
    native_norm,
)
from src.kernels.wendland import WendlandSpectrum, wendland_coeffs
from src.spectral.cubature import gauss_product_rule
from src.spectral.fields import SpectralScalarField
from src.spectral.harmonics import num_coeffs
from src.spectral.transforms import synthesize
from tests.conftest import E3, random_unit_vectors

DIRECTION = unit_vector(0.3, -0.5, 0.8)


def smooth_sampler(points):
    return np.exp(np.asarray(points) @ DIRECTION)


class TestInterpolate:
    def test_reproduces_node_values(self):
        X = PointSet(fibonacci_lattice(200))
        values = smooth_sampler(X.points)
        model = interpolate(X, 0.5, values)
        assert len(model) == 200
        npt.assert_allclose(model.evaluate(X.points), values, atol=1e-8)

    def test_value_count_must_match(self):
        with pytest.raises(DomainError):
            interpolate(fibonacci_lattice(20), 0.5, np.zeros(19))
        with pytest.raises(DomainError):
            InterpolationModel(fibonacci_lattice(3), 0.5, np.zeros(2))

    def test_repeated_node_is_rejected(self):
        nodes = fibonacci_lattice(10)
        values = np.append(smooth_sampler(nodes), 5.0)
        with pytest.raises(DomainError, match="pairwise distinct"):
            interpolate(np.vstack([nodes, nodes[:1]]), 0.8, values)

    def test_nearly_coincident_nodes_are_ill_conditioned(self):
        nodes = fibonacci_lattice(10)
        tangent = np.cross(nodes[0], [1.0, 0.0, 0.0])
        twin = nodes[0] + 1e-9 * tangent / np.linalg.norm(tangent)
        X = np.vstack([nodes, twin / np.linalg.norm(twin)])
        values = np.append(smooth_sampler(nodes), 5.0)
        with pytest.raises(IllConditionedError, match="ill-conditioned node set"):
            interpolate(X, 0.8, values)

    def test_empty_node_set(self, rng):
        model = interpolate(np.zeros((0, 3)), 0.5, [])
        assert len(model) == 0
        npt.assert_array_equal(model.evaluate(random_unit_vectors(rng, 5)), 0.0)
        assert native_norm(model) == 0.0

    def test_native_pythagoras(self, rng):
        f = SpectralScalarField(6, rng.standard_normal(num_coeffs(6)))
        X = PointSet(fibonacci_lattice(150))
        model = interpolate(X, 0.6, synthesize(f, X.points))
        norm = native_norm(model)
        assert native_inner_product(f, model) == pytest.approx(norm ** 2, rel=1e-6)
        assert norm <= native_norm(f, wendland_coeffs(0.6, 6)) * (1.0 + 1e-9)

    def test_native_norm_needs_a_covering_spectrum(self):
        f = SpectralScalarField.basis(2, 1, 3)
        with pytest.raises(DomainError, match="spectrum is required"):
            native_norm(f)
        with pytest.raises(DomainError, match="spectrum covers degree"):
            native_norm(f, wendland_coeffs(0.5, 2))

    def test_native_norm_rejects_truncated_spectrum(self):
        spectrum = WendlandSpectrum(0.5, 2, np.array([1.0, 0.0, 1.0]))
        with pytest.raises(DomainError, match="outside native space"):
            native_norm(SpectralScalarField.basis(1, 0, 2), spectrum)
        assert native_norm(SpectralScalarField.basis(2, 0, 2), spectrum) == pytest.approx(1.0)

    def test_spectral_model_matches_spatial(self, rng):
        model = InterpolationModel(E3.reshape(1, 3), 1.0, np.array([1.0]))
        samples = random_unit_vectors(rng, 50)
        npt.assert_allclose(synthesize(model_spectral(model, 80), samples), model.evaluate(samples), atol=1e-3)

    def test_lebesgue_ratio_is_moderate(self):
        X = PointSet(fibonacci_lattice(300))
        ratio = lebesgue_ratio(X, 2.5 * X.mesh_width, smooth_sampler, fibonacci_lattice(2000))
        assert 0.5 <= ratio <= 20.0


@pytest.fixture(scope="module")
def fibonacci_hierarchy():
    levels = [PointSet(fibonacci_lattice(count)) for count in (100, 400, 1600)]
    return HierarchicalPointSets(levels, 0.5, 0.5, 4.0)


class TestMultiscale:
    def test_errors_decrease_by_level(self, fibonacci_hierarchy):
        model = multiscale_fit(smooth_sampler, fibonacci_hierarchy, nu=2.5)
        rule = gauss_product_rule(80)
        errors = [l2_error(model.partial(count), smooth_sampler, rule) for count in (1, 2, 3)]
        assert errors[1] < 0.9 * errors[0]
        assert errors[2] < 0.9 * errors[1]

    def test_last_level_reproduces_samples(self, fibonacci_hierarchy):
        model = multiscale_fit(smooth_sampler, fibonacci_hierarchy, nu=2.5)
        nodes = fibonacci_hierarchy[2].points
        npt.assert_allclose(model.evaluate(nodes), smooth_sampler(nodes), atol=1e-8)

    def test_nu_must_exceed_one(self, fibonacci_hierarchy):
        with pytest.raises(DomainError):
            multiscale_fit(smooth_sampler, fibonacci_hierarchy, nu=1.0)

    def test_supports_stay_in_complement(self, fibonacci_hierarchy):
        sigma_c = SphericalCap(E3, 1.0).complement()
        model = multiscale_fit(smooth_sampler, fibonacci_hierarchy, nu=2.5, levels=2, sigma_c=sigma_c)
        assert len(model.levels) == 2
        assert all(0 < len(level) < 400 for level in model.levels)
        samples = fibonacci_lattice(3000)
        npt.assert_array_equal(model.evaluate(samples[samples[:, 2] > 0.0]), 0.0)

    def test_json_round_trip(self, fibonacci_hierarchy, tmp_path, rng):
        model = multiscale_fit(smooth_sampler, fibonacci_hierarchy, nu=2.5, levels=2)
        path = model.write_json(tmp_path / "model" / "multiscale.json")
        restored = MultiscaleModel.from_json(json.loads(path.read_text()))
        samples = random_unit_vectors(rng, 30)
        npt.assert_allclose(restored.evaluate(samples), model.evaluate(samples))

    def test_field_sampler(self, rng):
        f = SpectralScalarField.basis(0, 0, 2)
        npt.assert_allclose(field_sampler(f)(random_unit_vectors(rng, 4)), 1.0 / np.sqrt(4 * np.pi))
