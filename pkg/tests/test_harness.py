"""Study runner, rate fitting, tail tables, and the CSV/SVG emitters."""

import math

import numpy as np
import pytest

from convexfit.estimator import SearchConfig
from convexfit.geometry import Ball, GridPolytope, Polytope
from convexfit.harness import (
    RiskCurve,
    RiskRow,
    RPolicy,
    StudyConfig,
    emit_csv,
    emit_svg_plot,
    fit_rate,
    parse_truth,
    run_risk_study,
    study_config_from_json,
    tail_study,
)

from helpers import TRIANGLE

FAST_SEARCH = SearchConfig(steps=800, restarts=3)


def synthetic_curve(means, ns=(100, 200, 400, 800, 1600)):
    rows = tuple(RiskRow(n, m, 0.0, 10) for n, m in zip(ns, means))
    return RiskCurve(rows)


class TestPolicyAndConfig:
    def test_policy_validation(self):
        RPolicy("fixed", 3)
        RPolicy("convex_rate")
        RPolicy("adaptive")
        with pytest.raises(ValueError):
            RPolicy("fixed")
        with pytest.raises(ValueError):
            RPolicy("fixed", 2)
        with pytest.raises(ValueError):
            RPolicy("convex_rate", 3)
        with pytest.raises(ValueError):
            RPolicy("newton")

    def test_study_config_validation(self):
        ok = dict(
            d=2, sigma=0.5, truth=TRIANGLE, n_grid=(50, 100), replicates=2,
            r_policy=RPolicy("fixed", 3),
        )
        StudyConfig(**ok)
        with pytest.raises(ValueError):
            StudyConfig(**{**ok, "n_grid": (100, 50)})
        with pytest.raises(ValueError):
            StudyConfig(**{**ok, "n_grid": ()})
        with pytest.raises(ValueError):
            StudyConfig(**{**ok, "replicates": 0})
        with pytest.raises(ValueError):
            StudyConfig(**{**ok, "d": 3})  # truth dimension mismatch
        with pytest.raises(ValueError):
            StudyConfig(**{**ok, "sigma": 0.0})

    def test_config_from_json(self):
        cfg = study_config_from_json(
            {
                "d": 2,
                "sigma": 0.5,
                "truth": "triangle",
                "n_grid": [50, 100],
                "replicates": 3,
                "r_policy": {"kind": "fixed", "r": 3},
                "search": {"steps": 500, "restarts": 2, "seed": 1},
                "seed": 9,
                "m": 8,
            }
        )
        assert cfg.truth == TRIANGLE
        assert cfg.r_policy == RPolicy("fixed", 3)
        assert cfg.search.resolved_steps(None) == 500 if cfg.search.steps else True
        assert cfg.search.steps == 500
        assert cfg.seed == 9
        assert cfg.m == 8
        # bare-string policy shorthand
        cfg2 = study_config_from_json(
            {
                "d": 2,
                "sigma": 0.5,
                "truth": "ball",
                "n_grid": [50, 100],
                "replicates": 1,
                "r_policy": "convex_rate",
            }
        )
        assert cfg2.r_policy == RPolicy("convex_rate")
        assert cfg2.truth == Ball((0.5, 0.5), 0.25)


class TestParseTruth:
    def test_shorthands(self):
        assert parse_truth("ball", 2) == Ball((0.5, 0.5), 0.25)
        assert parse_truth("ball", 3) == Ball((0.5, 0.5, 0.5), 0.25)
        assert parse_truth("triangle", 2) == TRIANGLE
        with pytest.raises(ValueError):
            parse_truth("triangle", 3)

    def test_json_string_and_object(self):
        text = '{"variant": "poly", "dim": 2, "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}'
        p = parse_truth(text, 2)
        assert isinstance(p, Polytope)
        with pytest.raises(ValueError):
            parse_truth("not json", 2)


class TestFitRate:
    def test_exact_power_law(self):
        ns = (100, 200, 400, 800, 1600)
        fit = fit_rate(synthetic_curve([5.0 / n for n in ns], ns), transform="log_n")
        assert fit.slope == pytest.approx(-1.0, abs=1e-9)
        assert fit.r2 == pytest.approx(1.0, abs=1e-12)
        assert fit.transform == "log_n"

    def test_body_rate_law(self):
        ns = (100, 200, 400, 800, 1600)
        means = [0.7 * (math.log(n) / n) ** (2.0 / 3.0) for n in ns]
        fit = fit_rate(synthetic_curve(means, ns), transform="log_n_over_ln_n")
        assert fit.slope == pytest.approx(-2.0 / 3.0, abs=1e-9)

    def test_constant_rows(self):
        fit = fit_rate(synthetic_curve([0.25] * 5), transform="log_n")
        assert fit.slope == pytest.approx(0.0, abs=1e-12)

    def test_nonpositive_rows_excluded(self):
        ns = (100, 200, 400, 800)
        rows = tuple(
            RiskRow(n, m, 0.0, 5) for n, m in zip(ns, [1.0 / n for n in ns[:3]] + [0.0])
        )
        fit = fit_rate(RiskCurve(rows), transform="log_n")
        assert fit.slope == pytest.approx(-1.0, abs=1e-9)

    def test_too_few_usable_rows(self):
        with pytest.raises(ValueError):
            fit_rate(synthetic_curve([0.1, 0.05], ns=(100, 200)), transform="log_n")
        with pytest.raises(ValueError):
            fit_rate(synthetic_curve([0.1, 0.0, 0.0], ns=(100, 200, 400)))

    def test_unknown_transform(self):
        with pytest.raises(ValueError):
            fit_rate(synthetic_curve([0.1] * 5), transform="sqrt_n")


class TestRiskStudy:
    def test_determinism(self):
        cfg = StudyConfig(
            d=2, sigma=0.5, truth=TRIANGLE, n_grid=(40, 80), replicates=1,
            r_policy=RPolicy("fixed", 3), search=FAST_SEARCH, seed=5, m=6,
        )
        a = run_risk_study(cfg)
        b = run_risk_study(cfg)
        assert a == b
        assert [row.n for row in a.rows] == [40, 80]
        assert all(row.replicates == 1 for row in a.rows)
        assert all(row.ci == 0.0 for row in a.rows)

    def test_noiseless_sanity_ceiling(self):
        from convexfit.bounds import noiseless_risk_bound

        truth = GridPolytope([[0.25, 0.25], [0.75, 0.25], [0.5, 0.75]], resolution=8)
        cfg = StudyConfig(
            d=2, sigma=1e-12, truth=truth, n_grid=(50, 100), replicates=3,
            r_policy=RPolicy("fixed", 3), search=FAST_SEARCH, seed=6, m=8,
        )
        curve = run_risk_study(cfg)
        ceiling = 10.0 * noiseless_risk_bound(8, 2)
        for row in curve.rows:
            assert 0.0 <= row.mean <= ceiling
            assert row.mean < 0.5  # and the fits are actually close

    def test_ball_truth_risk_decreases(self):
        cfg = StudyConfig(
            d=2, sigma=0.5, truth=Ball((0.5, 0.5), 0.25), n_grid=(100, 400),
            replicates=6, r_policy=RPolicy("convex_rate"),
            search=SearchConfig(steps=2000, restarts=3), seed=7, m=16,
        )
        curve = run_risk_study(cfg)
        assert curve.rows[-1].mean < curve.rows[0].mean

    def test_replicate_failure_carries_context(self):
        # d=3 with r=3 passes config validation but fails in the estimator
        cfg = StudyConfig(
            d=3, sigma=0.5, truth=Ball((0.5, 0.5, 0.5), 0.25), n_grid=(10, 12),
            replicates=1, r_policy=RPolicy("fixed", 3), search=FAST_SEARCH, seed=8,
        )
        with pytest.raises(RuntimeError, match=r"replicate failed at n=10"):
            run_risk_study(cfg)

    def test_adaptive_policy_runs(self):
        cfg = StudyConfig(
            d=2, sigma=0.5, truth=TRIANGLE, n_grid=(60,), replicates=2,
            r_policy=RPolicy("adaptive"), search=SearchConfig(steps=400, restarts=2),
            seed=9, m=6,
        )
        curve = run_risk_study(cfg)
        assert len(curve.rows) == 1
        assert curve.rows[0].mean >= 0.0


@pytest.fixture(scope="module")
def table():
    cfg = StudyConfig(
        d=2, sigma=0.5, truth=TRIANGLE, n_grid=(80,), replicates=200,
        r_policy=RPolicy("fixed", 3), search=SearchConfig(steps=600, restarts=2),
        seed=10, m=6,
    )
    return tail_study(cfg, r=3, x_grid=[-100, -50, 0, 50, 200, 800])


class TestTailStudy:
    def test_survival_monotone_and_bounded(self, table):
        surv = [row.survival for row in table.rows]
        assert all(b <= a for a, b in zip(surv, surv[1:]))
        assert all(0.0 <= s <= 1.0 for s in surv)
        assert table.n == 80
        assert table.replicates == 200

    def test_total_mass_at_very_negative_x(self, table):
        # every loss is >= 0, so x below -n*recenter catches all mass
        floor = -table.n * table.recenter
        assert table.rows[0].x <= floor
        assert table.rows[0].survival == 1.0

    def test_bound_column_formula(self, table):
        from convexfit.bounds import deviation_rate, log_deviation_prefactor

        rate = deviation_rate(0.5)
        log_pref = log_deviation_prefactor(0.5, 2)
        for row in table.rows:
            ex = log_pref - rate * row.x
            want = math.inf if ex > 709.0 else math.exp(ex)
            assert row.bound == want

    def test_validation(self):
        cfg = StudyConfig(
            d=2, sigma=0.5, truth=TRIANGLE, n_grid=(80,), replicates=50,
            r_policy=RPolicy("fixed", 3), search=FAST_SEARCH, seed=11, m=6,
        )
        with pytest.raises(ValueError, match="replicates"):
            tail_study(cfg, r=3, x_grid=[0.0])
        big = StudyConfig(
            d=2, sigma=0.5, truth=TRIANGLE, n_grid=(80,), replicates=200,
            r_policy=RPolicy("fixed", 3), search=FAST_SEARCH, seed=11, m=6,
        )
        with pytest.raises(ValueError):
            tail_study(big, r=2, x_grid=[0.0])
        with pytest.raises(ValueError):
            tail_study(big, r=3, x_grid=[])


class TestEmitters:
    def test_risk_csv_shape(self, tmp_path):
        curve = synthetic_curve([0.5, 0.4, 0.3, 0.2, 0.1])
        path = tmp_path / "risk.csv"
        emit_csv(curve, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "n,mean,ci,replicates"
        assert len(lines) == 6
        assert lines[1].split(",") == ["100", "0.5", "0.0", "10"]

    def test_csv_byte_stability(self, tmp_path):
        curve = synthetic_curve([1 / 3, 0.25, 0.2, 1 / 7, 0.125])
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(curve, p1)
        emit_csv(curve, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_csv_dict_rows(self, tmp_path):
        rows = [{"check": "a", "pass": True}, {"check": "b", "pass": False}]
        path = tmp_path / "rows.csv"
        emit_csv(rows, path)
        assert path.read_text().splitlines()[0] == "check,pass"

    def test_empty_table_refused_without_file(self, tmp_path):
        path = tmp_path / "never.csv"
        with pytest.raises(ValueError):
            emit_csv(RiskCurve(()), path)
        with pytest.raises(ValueError):
            emit_csv([], path)
        assert not path.exists()

    def test_unwritable_path_context(self, tmp_path):
        curve = synthetic_curve([0.1, 0.2, 0.3, 0.4, 0.5])
        with pytest.raises(OSError, match="cannot write"):
            emit_csv(curve, tmp_path / "missing_dir" / "x.csv")

    def test_svg_plot(self, tmp_path):
        ns = (100, 200, 400, 800, 1600)
        curve = synthetic_curve([5.0 / n for n in ns], ns)
        fitted = RiskCurve(curve.rows, fit_rate(curve, transform="log_n"))
        path = tmp_path / "plot.svg"
        emit_svg_plot(fitted, path)
        text = path.read_text()
        assert text.startswith("<svg")
        assert "slope" in text
        path2 = tmp_path / "plot2.svg"
        emit_svg_plot(fitted, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_svg_without_fit(self, tmp_path):
        curve = synthetic_curve([0.5, 0.4, 0.3, 0.2, 0.1])
        path = tmp_path / "nofit.svg"
        emit_svg_plot(curve, path)
        assert path.read_text().startswith("<svg")
