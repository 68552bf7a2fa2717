"""Shared fixtures for the test suite."""
import numpy as np
import pytest

from src.geometry.domains import SphericalCap
from src.geometry.points import build_hierarchy, level_one_count
from src.hardy.dictionary import build_dictionary
from src.hardy import test_field as reference

E3 = np.array([0.0, 0.0, 1.0])
SMALL_DEGREE = 40


def random_unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def hierarchy():
    """Two levels, the first at mesh width about 0.174."""
    return build_hierarchy(level_one_count(), 2)


@pytest.fixture(scope="session")
def reference_field():
    return reference.test_field_spectral(SMALL_DEGREE)


@pytest.fixture(scope="session")
def hemisphere():
    return SphericalCap(E3, 1.0)


@pytest.fixture(scope="session")
def s1_dictionary(hierarchy, hemisphere):
    return build_dictionary(hemisphere, 1, hierarchy, max_degree=SMALL_DEGREE, label="S1")


@pytest.fixture(scope="session")
def s2_dictionary(hierarchy):
    return build_dictionary(SphericalCap(E3, 0.2), 1, hierarchy, max_degree=SMALL_DEGREE, label="S2")
