"""Acceptance suite: one test per numbered criterion, pinned tolerances.

Each test carries the ``criterion`` marker; a conftest hook prints one
PASS/FAIL/SKIP line per criterion (visible with ``pytest -s`` or
``-rA``).  Criterion 12 needs an externally exported bc.csv (columns
recyrs, censrec, group) at the repo root, in tests/data/, or via the
MRLIFE_BC_CSV environment variable; it is skipped, not failed, when the
file is absent.
"""
import math
import os
import pathlib
import time

import numpy as np
import pytest
from click.testing import CliRunner

from mrlife import (DISTRIBUTION_TAGS, CensoredSample, ResidualLifeQuery,
                    convert_genf_to_orig, convert_gengamma_from_orig,
                    convert_gengamma_to_orig, fit, make_distribution,
                    mrl_quadrature_oracle, percentile_residual_life,
                    predict_residual_life, residual_life_table, save_model)
from mrlife.cli import main as cli_main
from mrlife.distributions import GenFOrig, GenGamma, GenGammaOrig
from mrlife.regression import Covariate, CovariateSchema, SurvivalModel

from conftest import sample_params, weibull_censored_sample

WEIBULL_MEAN_GOLDEN = [
    5.280618, 5.125825, 4.994025, 4.878801, 4.776287, 4.683907, 4.599837,
    4.522725, 4.451537, 4.385457, 4.323832, 4.266128, 4.211904, 4.160787,
    4.112464, 4.066666, 4.023161, 3.981746, 3.942246,
]

GAMMA_MEAN_GOLDEN = [
    7.498217, 7.389908, 7.302911, 7.230487, 7.168736, 7.115159, 7.068047,
    7.026172, 6.988622, 6.954700, 6.923859, 6.895665, 6.869766, 6.845874,
    6.823747, 6.803186, 6.784020, 6.766103, 6.74931,
]

WEIBULL_ALL_GOLDEN = [
    (5.280618, 4.151524, 6.619995),
    (5.125825, 3.988283, 6.423757),
    (4.994025, 3.851217, 6.253251),
    (4.878801, 3.733262, 6.102230),
    (4.776287, 3.629997, 5.966703),
    (4.683907, 3.538406, 5.843883),
    (4.599837, 3.456318, 5.731711),
    (4.522725, 3.382114, 5.628606),
    (4.451537, 3.314545, 5.533322),
    (4.385457, 3.252635, 5.444853),
    (4.323832, 3.195598, 5.362376),
    (4.266128, 3.142799, 5.285206),
    (4.211904, 3.093714, 5.212767),
    (4.160787, 3.047908, 5.144570),
    (4.112464, 3.005015, 5.080196),
    (4.066666, 2.964725, 5.019284),
    (4.023161, 2.926773, 4.961518),
    (3.981746, 2.890929, 4.906624),
    (3.942246, 2.856997, 4.854361),
]

DEGENERATE_FINITE_GOLDEN = [
    (0.01972296, 0.013693147, 0.02376936),
    (0.01745426, 0.012114707, 0.02103170),
    (0.01556040, 0.010797874, 0.01874721),
    (0.01396275, 0.009687539, 0.01682059),
    (0.01260229, 0.008742418, 0.01518039),
    (0.01143404, 0.007931086, 0.01377220),
    (0.01042322, 0.007229272, 0.01255397),
]

SEQ_1_TO_10 = [1.0 + 0.5 * i for i in range(19)]
QUANTILE_GRID = (0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95)
TOL = 5e-6


def bc_csv_path():
    candidates = [os.environ.get("MRLIFE_BC_CSV", "")]
    here = pathlib.Path(__file__).resolve().parent
    candidates += [str(here.parent / "bc.csv"), str(here / "data" / "bc.csv")]
    for cand in candidates:
        if cand and os.path.exists(cand):
            return cand
    return None


@pytest.mark.criterion(1, "Weibull mean table reproduces the 19 printed values")
def test_criterion_01_weibull_golden_table():
    started = time.perf_counter()
    d = make_distribution("weibull", {"shape": 1.272, "scale": 6.191})
    table = residual_life_table(d, ResidualLifeQuery(values=SEQ_1_TO_10))
    elapsed = time.perf_counter() - started
    assert len(table) == 19
    for got, want in zip(table.columns["mean"], WEIBULL_MEAN_GOLDEN):
        assert got == pytest.approx(want, abs=TOL)
    assert elapsed < 1.0


@pytest.mark.criterion(2, "gamma table identical under (shape, scale) and "
                          "(shape, rate) parameterizations")
def test_criterion_02_gamma_dual_parameterization():
    by_scale = make_distribution("gamma", {"shape": 1.272, "scale": 6.191})
    by_rate = make_distribution("gamma", {"shape": 1.272, "rate": 1.0 / 6.191})
    t1 = residual_life_table(by_scale, ResidualLifeQuery(values=SEQ_1_TO_10))
    t2 = residual_life_table(by_rate, ResidualLifeQuery(values=SEQ_1_TO_10))
    for got, want in zip(t1.columns["mean"], GAMMA_MEAN_GOLDEN):
        assert got == pytest.approx(want, abs=TOL)
    assert t1.columns["mean"] == t2.columns["mean"]  # bit-identical


@pytest.mark.criterion(3, "Weibull mean/median/percentile table at p=0.7")
def test_criterion_03_all_table():
    d = make_distribution("weibull", {"shape": 1.272, "scale": 6.191})
    table = residual_life_table(
        d, ResidualLifeQuery(values=SEQ_1_TO_10, p=0.7, type="all"))
    assert table.column_names == ["mean", "median", "percentile"]
    for i, row in enumerate(WEIBULL_ALL_GOLDEN):
        for name, want in zip(("mean", "median", "percentile"), row):
            assert table.columns[name][i] == pytest.approx(want, abs=TOL), \
                (i, name)


@pytest.mark.criterion(4, "degenerate Weibull rows: finite for 15..21, "
                          "(NaN, Inf, Inf) for 22..30")
def test_criterion_04_degeneracy_pattern():
    d = make_distribution("weibull", {"shape": 2.9, "scale": 2.2})
    table = residual_life_table(
        d, ResidualLifeQuery(values=list(range(15, 31)), p=0.7, type="all"))
    for i, value in enumerate(range(15, 22)):
        mean, med, pct = (table.columns[c][i]
                          for c in ("mean", "median", "percentile"))
        want = DEGENERATE_FINITE_GOLDEN[i]
        assert mean == pytest.approx(want[0], abs=TOL), value
        assert med == pytest.approx(want[1], abs=TOL), value
        assert pct == pytest.approx(want[2], abs=TOL), value
    for i in range(7, 16):
        mean, med, pct = (table.columns[c][i]
                          for c in ("mean", "median", "percentile"))
        assert math.isnan(mean)
        assert med == math.inf
        assert pct == math.inf


@pytest.mark.criterion(5, "closed-form MRL vs quadrature oracle <= 1e-6 "
                          "relative on randomized grids")
def test_criterion_05_oracle_equivalence_suite():
    started = time.perf_counter()
    rng = np.random.default_rng(5150)
    checked = 0
    for tag in DISTRIBUTION_TAGS:
        for _ in range(20):
            d = make_distribution(tag, sample_params(tag, rng))
            for q in QUANTILE_GRID:
                x = d.quantile(q)
                closed = d.mrl(x)
                oracle = mrl_quadrature_oracle(d, x)
                assert math.isfinite(closed), (tag, d.params(), q)
                assert math.isfinite(oracle), (tag, d.params(), q)
                assert abs(closed - oracle) <= 1e-6 * abs(oracle), \
                    (tag, d.params(), q, closed, oracle)
                checked += 1
    elapsed = time.perf_counter() - started
    assert checked == len(DISTRIBUTION_TAGS) * 20 * len(QUANTILE_GRID)
    assert elapsed < 120.0


@pytest.mark.criterion(6, "MRL(0) equals the mean within 1e-9 relative")
def test_criterion_06_mrl_at_zero_is_mean():
    rng = np.random.default_rng(606)
    for tag in DISTRIBUTION_TAGS:
        for _ in range(20):
            d = make_distribution(tag, sample_params(tag, rng))
            mean = d.mean()
            if math.isnan(mean):
                continue
            assert d.mrl(0.0) == pytest.approx(mean, rel=1e-9), (tag, d.params())


@pytest.mark.criterion(7, "parameterization conversions preserve pdf (1e-12) "
                          "and MRL (1e-9)")
def test_criterion_07_conversions():
    rng = np.random.default_rng(707)
    for _ in range(5):
        # generalized gamma, forward (mu, sigma, Q>0) -> (shape, scale, k)
        mu = float(rng.uniform(-1.0, 1.0))
        sigma = float(rng.uniform(0.3, 1.5))
        q = float(rng.uniform(0.3, 2.0))
        prentice = GenGamma(mu, sigma, q)
        orig = GenGammaOrig(*convert_gengamma_to_orig(mu, sigma, q))
        ts = rng.uniform(0.05, 8.0, size=20)
        for t in ts:
            assert prentice.pdf(float(t)) == pytest.approx(orig.pdf(float(t)),
                                                           rel=1e-12)
        for x in (0.4, 1.3, 3.0):
            assert prentice.mrl(x) == pytest.approx(orig.mrl(x), rel=1e-9)

        # generalized gamma, reverse (shape, scale, k) -> (mu, sigma, Q)
        shape = float(rng.uniform(0.5, 3.0))
        scale = float(rng.uniform(0.3, 5.0))
        k = float(rng.uniform(0.3, 4.0))
        back = GenGamma(*convert_gengamma_from_orig(shape, scale, k))
        source = GenGammaOrig(shape, scale, k)
        for t in ts:
            assert back.pdf(float(t)) == pytest.approx(source.pdf(float(t)),
                                                       rel=1e-12)
        for x in (0.4, 1.3, 3.0):
            assert back.mrl(x) == pytest.approx(source.mrl(x), rel=1e-9)

        # generalized F (mu, sigma, Q, P>0) -> (mu, sigma, s1, s2)
        params = {"mu": float(rng.uniform(-0.5, 0.5)),
                  "sigma": float(rng.uniform(0.4, 1.2)),
                  "Q": float(rng.uniform(-1.0, 1.0)),
                  "P": float(rng.uniform(0.3, 2.0))}
        direct = make_distribution("genf", params)
        orig_f = GenFOrig(*convert_genf_to_orig(params["mu"], params["sigma"],
                                                params["Q"], params["P"]))
        for t in ts:
            assert direct.pdf(float(t)) == pytest.approx(orig_f.pdf(float(t)),
                                                         rel=1e-12)
        if not math.isnan(orig_f.mean()):
            for x in (0.4, 1.3, 3.0):
                assert direct.mrl(x) == pytest.approx(orig_f.mrl(x), rel=1e-9)


@pytest.mark.criterion(8, "generalized F with s2 <= sigma is NaN for mean "
                          "and MRL everywhere")
def test_criterion_08_genf_undefined_region():
    rng = np.random.default_rng(808)
    for _ in range(20):
        sigma = float(rng.uniform(0.5, 3.0))
        s2 = sigma * float(rng.uniform(0.2, 1.0))  # s2 <= sigma
        d = make_distribution("genf.orig", {
            "mu": float(rng.uniform(-1.0, 1.0)), "sigma": sigma,
            "s1": float(rng.uniform(0.5, 4.0)), "s2": s2})
        assert math.isnan(d.mean())
        for x in (0.0, 0.3, 1.0, 4.0, 20.0):
            assert math.isnan(d.mrl(x))
    # the complementary s2 > sigma region must agree with the oracle
    for _ in range(10):
        d = make_distribution("genf.orig", sample_params("genf.orig", rng))
        x = d.quantile(0.5)
        assert d.mrl(x) == pytest.approx(mrl_quadrature_oracle(d, x), rel=1e-6)


@pytest.mark.criterion(9, "percentile round-trip within 1e-8; exponential "
                          "percentile x-invariant to 1e-12")
def test_criterion_09_percentile_round_trip():
    rng = np.random.default_rng(909)
    tags = list(DISTRIBUTION_TAGS)
    for i in range(1000):
        tag = tags[i % len(tags)]
        d = make_distribution(tag, sample_params(tag, rng))
        x = d.quantile(float(rng.uniform(0.02, 0.95)))
        alpha = float(rng.uniform(0.02, 0.98))
        q = percentile_residual_life(d, x, alpha)
        assert math.isfinite(q)
        target = 1.0 - (1.0 - alpha) * d.survival(x)
        assert d.cdf(x + q) == pytest.approx(target, abs=1e-8), (tag, d.params())
    for _ in range(50):
        rate = float(np.exp(rng.uniform(np.log(0.05), np.log(20.0))))
        alpha = float(rng.uniform(0.05, 0.95))
        d = make_distribution("exponential", {"rate": rate})
        baseline = percentile_residual_life(d, 0.0, alpha)
        for x in (0.3, 1.7, 4.0 / rate):
            q = percentile_residual_life(d, x, alpha)
            assert abs(q - baseline) <= 1e-12 * max(1.0, baseline)


@pytest.mark.criterion(10, "error contracts: parameter-name, factor-level and "
                           "missing-column messages with the right exit codes")
def test_criterion_10_error_contracts(tmp_path):
    runner = CliRunner()
    res = runner.invoke(cli_main, [
        "residlife", "--values", "1:10:0.5", "--dist", "weibull",
        "--params", "shape=1.272,not_scale=6.191"])
    assert res.exit_code == 2
    assert ("incorrect parameters entered. Parameters for weibull are shape "
            "and scale") in res.output

    schema = CovariateSchema((
        Covariate(name="age", kind="numeric"),
        Covariate(name="group", kind="categorical",
                  levels=("Good", "Medium", "Poor")),
    ))
    model = SurvivalModel(dist="weibull",
                          baseline={"shape": 1.4, "scale": 4.0},
                          coefficients=(math.log(4.0), 0.01, 0.2, -0.3),
                          schema=schema)
    model_path = tmp_path / "model.json"
    save_model(model, model_path)

    bad_level = tmp_path / "bad_level.csv"
    bad_level.write_text("age,group\n43,Medium\n35,Good\n39,Terrible\n")
    res = runner.invoke(cli_main, ["predict", "--model", str(model_path),
                                   "--life", "4", "--newdata", str(bad_level)])
    assert res.exit_code == 1
    assert "Incorrect Level Entered" in res.output

    missing_col = tmp_path / "missing_col.csv"
    missing_col.write_text("group\nMedium\nGood\nPoor\n")
    res = runner.invoke(cli_main, ["predict", "--model", str(model_path),
                                   "--life", "4", "--newdata", str(missing_col)])
    assert res.exit_code == 1
    assert "age" in res.output

    ok = tmp_path / "ok.csv"
    ok.write_text("age,group\n43,Medium\n")
    res = runner.invoke(cli_main, ["predict", "--model", str(model_path),
                                   "--life", "4", "--newdata", str(ok)])
    assert res.exit_code == 0


@pytest.mark.criterion(11, "fit recovery: seeded Weibull within 5%, "
                           "exponential MLE analytic within 1e-6")
def test_criterion_11_fit_recovery():
    started = time.perf_counter()
    time_v, event = weibull_censored_sample(5000, 1.5, 4.0, 0.2, seed=1101)
    result, _ = fit("weibull", CensoredSample.from_lists(time_v, event))
    assert result.estimates["shape"] == pytest.approx(1.5, rel=0.05)
    assert result.estimates["scale"] == pytest.approx(4.0, rel=0.05)
    assert result.converged

    rng = np.random.default_rng(1102)
    t = rng.exponential(scale=3.0, size=2000)
    result2, _ = fit("exponential",
                     CensoredSample.from_lists(t, np.ones_like(t)))
    assert result2.estimates["rate"] == pytest.approx(len(t) / t.sum(), rel=1e-6)
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0


@pytest.mark.criterion(12, "conditional bc.csv reference fits (skipped when "
                           "the file is absent)")
def test_criterion_12_bc_reference_fits():
    path = bc_csv_path()
    if path is None:
        pytest.skip("bc.csv not present (export it per the README recipe)")
    import csv as csv_mod
    with open(path, newline="") as fh:
        rows = list(csv_mod.DictReader(fh))
    time_v = [float(r["recyrs"]) for r in rows]
    event = [float(r["censrec"]) for r in rows]
    sample = CensoredSample.from_lists(time_v, event)

    result, _ = fit("weibull", sample)
    assert result.estimates["shape"] == pytest.approx(1.271519, rel=1e-3)
    assert result.estimates["scale"] == pytest.approx(6.191377, rel=1e-3)
    lo, hi = result.ci95["shape"]
    assert lo == pytest.approx(1.153372, rel=2e-2)
    assert hi == pytest.approx(1.401770, rel=2e-2)

    _, gg_model = fit("gengamma.orig", sample)
    table = predict_residual_life(gg_model, life=1.0, type="mean")
    assert table.columns["mean"][0] == pytest.approx(7.193907, rel=1e-3)
