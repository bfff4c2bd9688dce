#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgf/experiment.hpp"
#include "lrgf/rng.hpp"
#include "lrgf/stats.hpp"

using namespace lrgf;

TEST_CASE("compensated summation") {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(xs) == doctest::Approx(2.0));
}

TEST_CASE("scaling exponent on exact power data") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {512.0, 1024.0, 2048.0}) pts.emplace_back(n, std::pow(n, -1.6));
    auto fit = estimate_scaling_exponent(pts);
    CHECK(fit.slope == doctest::Approx(-1.6).epsilon(1e-12));
    CHECK(fit.half_width == doctest::Approx(0.0).epsilon(1e-9));

    // constant factors land in the intercept
    pts.clear();
    for (double n : {64.0, 128.0, 256.0, 512.0}) pts.emplace_back(n, 3.0 / n);
    fit = estimate_scaling_exponent(pts);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_scaling_exponent(
                        std::vector<std::pair<double, double>>{{2.0, 1.0},
                                                               {4.0, 0.5}}),
                    ContractError);
}

TEST_CASE("normality diagnostics on reference samples") {
    RngStream rng(31, 0);
    std::vector<double> normals(100000);
    for (auto& x : normals) x = rng.next_normal();
    auto d = normality_diagnostics(normals);
    CHECK(std::abs(d.skewness) < 4.0 * d.skewness_se);
    CHECK(std::abs(d.excess_kurtosis) < 4.0 * d.excess_kurtosis_se);
    CHECK(d.ks_distance < 0.01);

    // (chisq_1 - 1)/sqrt(2): excess kurtosis 12
    std::vector<double> chis(100000);
    for (auto& x : chis) {
        const double z = rng.next_normal();
        x = (z * z - 1.0) / std::sqrt(2.0);
    }
    d = normality_diagnostics(chis);
    CHECK(std::abs(d.excess_kurtosis - 12.0) < 4.0 * d.excess_kurtosis_se);
    CHECK(d.skewness > 1.0);

    CHECK_THROWS_AS(normality_diagnostics(std::vector<double>(100, 1.0)),
                    ContractError);
    std::vector<double> degenerate(600, 2.5);
    CHECK_THROWS_AS(normality_diagnostics(degenerate), ContractError);
}

TEST_CASE("config validation errors") {
    ExperimentConfig c;
    c.model = SpectralModel::white_noise(1);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {64, 32};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.ladder = {32, 64};
    c.replicates = 50;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.replicates = 200;
    c.validate();

    // margin must cover the lag
    c.lag = {2};
    c.margin = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.margin = 2;
    c.validate();

    // exact sampler window bound
    c.sampler = SamplerKind::Exact;
    c.ladder = {32, 64, 8192};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig c;
    c.model = SpectralModel::isotropic(1, -0.35);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {256, 512};
    c.replicates = 150;
    c.margin = 0;
    c.kappa = 4;
    c.seed = 99;
    c.nu = 1.0 + 2.0 * (-0.35);
    const auto j = config_to_json(c);
    const auto back = config_from_json(j);
    CHECK(config_to_json(back) == j);
}

TEST_CASE("regime routing refuses the wrong normalization") {
    // non-central model refuses nu = d/2, citing the inequality
    ExperimentConfig c;
    c.model = SpectralModel::isotropic(1, -0.35);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {64, 128, 256};
    c.replicates = 100;
    c.nu = 0.5;
    try {
        run_experiment(c);
        FAIL("expected admissibility refusal");
    } catch (const AdmissibilityError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("-d/4") != std::string::npos);
    }

    // central model refuses the non-central normalization
    c.model = SpectralModel::isotropic(1, -0.1);
    c.nu = 1.0 + 2.0 * (-0.1);
    CHECK_THROWS_AS(run_experiment(c), AdmissibilityError);

    // one-direction anomaly refuses nu = d/2 = 1
    c.model = SpectralModel::one_direction(-0.35, 1.0);
    c.lag = {1, 0};
    c.margin = 1;
    c.nu = 1.0;
    CHECK_THROWS_AS(run_experiment(c), AdmissibilityError);
}

TEST_CASE("experiment reports regenerate bit-identically") {
    ExperimentConfig c;
    c.model = SpectralModel::isotropic(1, -0.1);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {48};
    c.replicates = 120;
    c.kappa = 2;
    c.seed = 7;
    c.nu = 0.5;
    c.threads = 1;
    const auto r1 = run_experiment(c);
    ExperimentConfig c2 = c;
    c2.threads = 2;  // speed only
    const auto r2 = run_experiment(c2);
    CHECK(r1.to_json().dump() == r2.to_json().dump());
    CHECK(r1.per_n_csv() == r2.per_n_csv());
    CHECK(r1.config_hash == r2.config_hash);
    // thread count does not enter the hash
    CHECK(r1.config_hash.size() == 16);
}

TEST_CASE("experiment moments line up with the exact pairing variance") {
    ExperimentConfig c;
    c.model = SpectralModel::isotropic(1, -0.1);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {32};
    c.replicates = 1500;
    c.sampler = SamplerKind::Exact;
    c.seed = 21;
    c.nu = 0.5;
    c.threads = 2;
    const auto report = run_experiment(c);
    const auto& row = report.per_n.front();
    REQUIRE(row.has_wick);
    CHECK(std::abs(row.raw_variance - row.wick_variance) <
          4.0 * row.moments.variance_se /
              (32.0 /* n^{2 nu} = n */));
    CHECK(std::abs(row.moments.mean) < 4.0 * row.moments.mean_se);
    CHECK(report.reference_kind == "clt_variance");
}

TEST_CASE("doubling replicates shrinks the variance SE like sqrt(2)") {
    ExperimentConfig c;
    c.model = SpectralModel::white_noise(1);
    c.statistic = StatisticKind::EmpiricalCovariance;
    c.lag = {0};
    c.ladder = {128};
    c.replicates = 600;
    c.seed = 3;
    c.nu = 0.5;
    const auto r1 = run_experiment(c);
    c.replicates = 1200;
    const auto r2 = run_experiment(c);
    const double ratio = r2.per_n.front().moments.variance_se /
                         r1.per_n.front().moments.variance_se;
    CHECK(std::abs(ratio - 1.0 / std::sqrt(2.0)) < 0.2);
}
