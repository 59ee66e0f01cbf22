"""Data generation: the indicator-plus-noise model and its CSV round trip."""

import math

import numpy as np
import pytest

from convexfit.geometry import Ball, Polytope
from convexfit.model import (
    ModelConfig,
    Sample,
    config_from_json,
    config_to_json,
    generate_sample,
    read_sample,
    write_sample,
)

from helpers import TRIANGLE

LEFT_HALF = Polytope([[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [0.0, 1.0]])
EMPTY_TRUTH = Polytope([[0.3, 0.3]])  # zero-area polytope


class TestConfig:
    def test_validation(self):
        ModelConfig(d=2, n=10, truth=TRIANGLE, sigma=0.5)
        with pytest.raises(ValueError):
            ModelConfig(d=1, n=10, truth=TRIANGLE, sigma=0.5)
        with pytest.raises(ValueError):
            ModelConfig(d=2, n=-1, truth=TRIANGLE, sigma=0.5)
        with pytest.raises(ValueError):
            ModelConfig(d=3, n=10, truth=TRIANGLE, sigma=0.5)  # dim mismatch
        with pytest.raises(ValueError):
            ModelConfig(d=2, n=10, truth=TRIANGLE, sigma=0.0)
        with pytest.raises(ValueError):
            ModelConfig(d=2, n=10, truth=TRIANGLE, sigma=0.5, noise_kind="cauchy")

    def test_json_round_trip(self):
        for truth in (TRIANGLE, Ball((0.5, 0.5), 0.25)):
            cfg = ModelConfig(
                d=2, n=50, truth=truth, sigma=0.7, noise_kind="scaled_rademacher",
                seed=99,
            )
            assert config_from_json(config_to_json(cfg)) == cfg


class TestGenerate:
    def test_determinism(self):
        cfg = ModelConfig(d=2, n=500, truth=TRIANGLE, sigma=0.5, seed=42)
        a = generate_sample(cfg)
        b = generate_sample(cfg)
        assert a == b
        np.testing.assert_array_equal(a.x, b.x)
        np.testing.assert_array_equal(a.y, b.y)
        c = generate_sample(ModelConfig(d=2, n=500, truth=TRIANGLE, sigma=0.5, seed=43))
        assert not np.array_equal(a.y, c.y)

    def test_shapes_and_range(self):
        cfg = ModelConfig(d=3, n=200, truth=Ball((0.5,) * 3, 0.5), sigma=1.0, seed=0)
        s = generate_sample(cfg)
        assert s.x.shape == (200, 3)
        assert s.y.shape == (200,)
        assert s.x.min() >= 0.0 and s.x.max() <= 1.0
        assert s.n == 200
        assert len(s.rows) == 200

    def test_empty_sample(self):
        s = generate_sample(ModelConfig(d=2, n=0, truth=TRIANGLE, sigma=0.5))
        assert s.n == 0
        assert s.x.shape == (0, 2)

    def test_noiseless_limit(self):
        cfg = ModelConfig(d=2, n=2000, truth=LEFT_HALF, sigma=1e-12, seed=3)
        s = generate_sample(cfg)
        signal = (s.x[:, 0] <= 0.5).astype(float)
        assert np.max(np.abs(s.y - signal)) <= 1e-9

    def test_pure_noise_moments(self):
        cfg = ModelConfig(d=2, n=100_000, truth=EMPTY_TRUTH, sigma=0.5, seed=4)
        s = generate_sample(cfg)
        assert abs(float(s.y.mean())) <= 5 * 0.5 / math.sqrt(cfg.n)
        assert float(s.y.std()) == pytest.approx(0.5, abs=0.01)

    def test_ball_coverage_fraction(self):
        cfg = ModelConfig(
            d=2, n=100_000, truth=Ball((0.5, 0.5), 0.5), sigma=1e-12, seed=5
        )
        s = generate_sample(cfg)
        frac = float(np.mean(s.y > 0.5))
        p = math.pi / 4
        assert abs(frac - p) <= 3 * math.sqrt(p * (1 - p) / cfg.n)

    def test_rademacher_values(self):
        cfg = ModelConfig(
            d=2, n=5000, truth=EMPTY_TRUTH, sigma=0.7,
            noise_kind="scaled_rademacher", seed=6,
        )
        s = generate_sample(cfg)
        assert set(np.round(np.abs(s.y), 12)) == {0.7}
        # both signs occur at roughly equal rates
        assert abs(float(np.mean(s.y > 0)) - 0.5) < 0.05

    @pytest.mark.parametrize("kind", ["gaussian", "scaled_rademacher"])
    def test_noise_mgf_bound(self, kind):
        # subgaussian check at desk scale: E[e^(u xi)] <= e^(u^2 s^2 / 2)
        sigma = 0.8
        cfg = ModelConfig(
            d=2, n=100_000, truth=EMPTY_TRUTH, sigma=sigma, noise_kind=kind, seed=7
        )
        xi = generate_sample(cfg).y
        for u in (-1.0, -0.5, 0.5, 1.0):
            vals = np.exp(u * xi)
            se = float(vals.std(ddof=1)) / math.sqrt(len(vals))
            bound = math.exp(u * u * sigma * sigma / 2.0)
            assert float(vals.mean()) <= bound * (1.0 + 5.0 * se)


class TestSampleType:
    def test_row_validation(self):
        cfg = ModelConfig(d=2, n=2, truth=TRIANGLE, sigma=0.5)
        Sample(cfg, np.array([[0.1, 0.2], [0.3, 0.4]]), np.array([0.0, 1.0]))
        with pytest.raises(ValueError):
            Sample(cfg, np.array([[0.1, 0.2, 0.3]]), np.array([0.0]))
        with pytest.raises(ValueError):
            Sample(cfg, np.array([[0.1, 1.2], [0.3, 0.4]]), np.array([0.0, 1.0]))
        with pytest.raises(ValueError):
            Sample(cfg, np.array([[0.1, 0.2], [0.3, 0.4]]), np.array([0.0, np.nan]))


class TestPersistence:
    def test_round_trip(self, tmp_path):
        for kind, truth, d in (
            ("gaussian", TRIANGLE, 2),
            ("scaled_rademacher", Ball((0.5,) * 3, 0.25), 3),
        ):
            cfg = ModelConfig(d=d, n=40, truth=truth, sigma=0.3, noise_kind=kind, seed=8)
            s = generate_sample(cfg)
            path = tmp_path / f"{kind}.csv"
            write_sample(s, path)
            assert read_sample(path) == s

    def test_file_shape(self, tmp_path):
        cfg = ModelConfig(d=3, n=7, truth=Ball((0.5,) * 3, 0.5), sigma=0.5, seed=9)
        path = tmp_path / "seven.csv"
        write_sample(generate_sample(cfg), path)
        lines = path.read_text().splitlines()
        data = [ln for ln in lines if not ln.startswith("#") and not ln.startswith("x")]
        assert len(data) == 7
        assert all(len(ln.split(",")) == 4 for ln in data)

    def test_wrong_column_count_names_line(self, tmp_path):
        cfg = ModelConfig(d=2, n=3, truth=TRIANGLE, sigma=0.5, seed=10)
        path = tmp_path / "bad.csv"
        write_sample(generate_sample(cfg), path)
        lines = path.read_text().splitlines()
        lines[3] = lines[3].rsplit(",", 1)[0]  # drop a field from the 2nd data row
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ValueError, match=r":4:"):
            read_sample(path)

    def test_row_count_mismatch(self, tmp_path):
        cfg = ModelConfig(d=2, n=3, truth=TRIANGLE, sigma=0.5, seed=11)
        path = tmp_path / "short.csv"
        write_sample(generate_sample(cfg), path)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        with pytest.raises(ValueError):
            read_sample(path)

    def test_garbage_file(self, tmp_path):
        path = tmp_path / "junk.csv"
        path.write_text("not a dataset\n")
        with pytest.raises(ValueError):
            read_sample(path)
