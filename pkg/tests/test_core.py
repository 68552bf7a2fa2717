"""Tests for settings, logging, linear algebra, the worker pool, metrics and report writers."""
import json
import logging
import threading
from pathlib import Path

import numpy as np
import numpy.testing as npt
import pytest
from pydantic import ValidationError

from src.config import Settings, configure_logging, get_output_dir, get_settings, settings
from src.core.exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    HardySBFError,
    IllConditionedError,
    MeshTooCoarseError,
    NumericalError,
)
from src.core.linalg import cholesky_with_jitter, spd_solve
from src.core.metrics import RunMetrics
from src.core.reporting import (
    CONVERGENCE_COLUMNS,
    ConvergenceWriter,
    read_convergence_csv,
    write_json,
    write_rows,
    write_table,
)
from src.core.worker_pool import WorkerPool, parallel_map


class TestExceptions:
    def test_exit_codes(self):
        assert HardySBFError.exit_code == 1
        assert ConfigurationError("x").exit_code == 2
        assert DomainError("x").exit_code == 2
        for cls in (IllConditionedError, MeshTooCoarseError, ConvergenceError):
            assert issubclass(cls, NumericalError)
            assert cls("x").exit_code == 3

    def test_domain_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            raise DomainError("bad argument")


class TestSettings:
    def test_defaults(self):
        fresh = Settings(_env_file=None)
        assert fresh.log_level == "INFO"
        assert fresh.max_workers == 4
        assert fresh.default_degree == 100
        assert fresh.spd_jitter_ladder == [0.0, 1e-14, 1e-12, 1e-10]
        assert fresh.enable_metrics is False

    def test_jitter_ladder_from_environment(self, monkeypatch):
        monkeypatch.setenv("HARDY_SPD_JITTER_LADDER", "1e-10, 0, 1e-12")
        monkeypatch.setenv("HARDY_MAX_WORKERS", "2")
        fresh = Settings(_env_file=None)
        assert fresh.spd_jitter_ladder == [0.0, 1e-12, 1e-10]
        assert fresh.max_workers == 2

    @pytest.mark.parametrize(
        "overrides",
        [{"log_level": "LOUD"}, {"spd_jitter_ladder": [-1.0]}, {"spd_jitter_ladder": []}, {"max_workers": 0}],
    )
    def test_invalid_values(self, overrides):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, **overrides)

    def test_accessors(self):
        assert get_settings() is settings
        assert get_output_dir() == settings.output_dir

    def test_configure_logging(self):
        root = logging.getLogger()
        try:
            configure_logging(Settings(_env_file=None, log_level="WARNING", json_logs=False))
            assert root.level == logging.WARNING
            configure_logging(Settings(_env_file=None, debug_mode=True))
            assert root.level == logging.DEBUG
        finally:
            configure_logging(Settings(_env_file=None))


class TestLinearAlgebra:
    def test_spd_solve(self, rng):
        A = rng.standard_normal((6, 6))
        matrix = A @ A.T + 6.0 * np.eye(6)
        rhs = rng.standard_normal(6)
        npt.assert_allclose(matrix @ spd_solve(matrix, rhs), rhs, atol=1e-12)

    def test_empty_system(self):
        assert spd_solve(np.zeros((0, 0)), np.zeros(0)).shape == (0,)

    def test_jitter_rescues_semidefinite_matrix(self):
        _, shift = cholesky_with_jitter(np.ones((3, 3)))
        assert 0.0 < shift <= 1e-10

    def test_indefinite_matrix_fails(self):
        with pytest.raises(IllConditionedError, match="jitter ladder"):
            cholesky_with_jitter(np.array([[1.0, 2.0], [2.0, 1.0]]), ladder=[0.0, 1e-12])

    def test_non_finite_matrix_fails(self):
        with pytest.raises(IllConditionedError, match="non-finite"):
            spd_solve(np.array([[np.nan, 0.0], [0.0, 1.0]]), np.ones(2))


class TestWorkerPool:
    def test_results_keep_input_order(self):
        assert WorkerPool(3).map(lambda x: x * x, range(10)) == [x * x for x in range(10)]

    def test_single_worker_runs_inline(self):
        seen = []
        WorkerPool(1).map(lambda x: seen.append(threading.current_thread().name), [1, 2])
        assert set(seen) == {threading.current_thread().name}

    def test_parallel_map(self):
        assert parallel_map(str, [1, 2, 3], max_workers=2) == ["1", "2", "3"]

    def test_errors_propagate(self):
        def fail(x):
            raise DomainError(f"bad item {x}")

        with pytest.raises(DomainError):
            WorkerPool(2).map(fail, [1, 2])


class TestMetrics:
    def test_write_textfile(self, tmp_path):
        metrics = RunMetrics()
        with metrics.time_level("S1", 1):
            pass
        metrics.record_dictionary("S1", 1, 244)
        metrics.record_fits(15)
        text = metrics.write(tmp_path / "run" / "metrics.prom").read_text()
        assert "S1:1" in metrics.timings
        assert "hardy_fits_total 15.0" in text
        assert 'hardy_dictionary_atoms{sigma="S1",level="1"} 244.0' in text
        assert 'hardy_level_seconds_count{sigma="S1"} 1.0' in text

    def test_registries_are_private(self):
        first, second = RunMetrics(), RunMetrics()
        first.record_fits(3)
        assert second.registry.get_sample_value("hardy_fits_total") == 0.0


class TestReporting:
    def test_convergence_writer(self, tmp_path):
        path = tmp_path / "out" / "convergence.csv"
        row = {
            "sigma": "S2", "n": 1, "h_n": 0.17401, "num_atoms": 11, "delta_n": 0.38456,
            "rho_n": 0.105, "lambda": 1e-6, "rel_error": 0.0123456789012, "envelope": 1.0,
        }
        with ConvergenceWriter(path) as writer:
            writer.write(row)
        rows = read_convergence_csv(path)
        assert list(rows[0]) == list(CONVERGENCE_COLUMNS)
        assert rows[0]["sigma"] == "S2"
        assert rows[0]["rel_error"] == "0.0123456789"
        assert float(rows[0]["lambda"]) == 1e-6

    def test_write_json_handles_numpy(self, tmp_path):
        payload = {"array": np.arange(3), "value": np.float64(0.5), "count": np.int64(4), "path": Path("a/b")}
        loaded = json.loads(write_json(payload, tmp_path / "doc.json").read_text())
        assert loaded == {"array": [0, 1, 2], "value": 0.5, "count": 4, "path": "a/b"}
        with pytest.raises(TypeError):
            write_json({"thing": object()}, tmp_path / "bad.json")

    def test_write_table(self, tmp_path):
        path = write_table(np.array([[1.0, 2.5], [3.0, 4.0]]), tmp_path / "grid.csv", ("a", "b"), comment="L=4")
        lines = path.read_text().splitlines()
        assert lines == ["# L=4", "a,b", "1,2.5", "3,4"]

    def test_write_rows(self, tmp_path):
        path = write_rows([{"c": 0.5, "active": 1}], tmp_path / "bep.csv", ("c", "active"))
        assert path.read_text().splitlines() == ["c,active", "0.5,1"]
