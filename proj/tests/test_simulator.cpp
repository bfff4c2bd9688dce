#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgf/covariance.hpp"
#include "lrgf/io.hpp"
#include "lrgf/quadratic_form.hpp"
#include "lrgf/simulate.hpp"
#include "lrgf/stats.hpp"

using namespace lrgf;

TEST_CASE("sample mean basics") {
    FieldSample ones(1, 4, 0, {1, 1, 1, 1}, FieldMeta{});
    CHECK(sample_mean(ones) == doctest::Approx(1.0));
    FieldSample f(1, 4, 0, {1, 2, 3, 4}, FieldMeta{});
    CHECK(sample_mean(f) == doctest::Approx(2.5));
    // margins excluded
    FieldSample g(1, 2, 1, {100, 1, 3, 100}, FieldMeta{});
    CHECK(sample_mean(g) == doctest::Approx(2.0));
}

TEST_CASE("white noise synthesis has unit per-site variance") {
    auto wn = SpectralModel::white_noise(1);
    std::vector<double> sites;
    for (int r = 0; r < 500; ++r) {
        auto f = simulate_spectral(wn, 64, 0, 1, RngStream(42, r));
        for (long i = 1; i <= 64; ++i) sites.push_back(f.at(i));
    }
    const auto ms = summarize_moments(sites);
    const double se = std::sqrt(2.0 / static_cast<double>(sites.size()));
    CHECK(std::abs(ms.variance - 1.0) < 4.0 * se);
    CHECK(std::abs(ms.mean) < 4.0 * ms.mean_se);
}

TEST_CASE("synthesis determinism across thread counts and runs") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    auto f1 = simulate_spectral(iso, 128, 2, 4, RngStream(7, 3));
    auto f2 = simulate_spectral(iso, 128, 2, 4, RngStream(7, 3));
    CHECK(f1.values() == f2.values());
    auto f3 = simulate_spectral(iso, 128, 2, 4, RngStream(7, 4));
    CHECK(f1.values() != f3.values());

    auto e1 = simulate_exact(iso, 32, 1, RngStream(9, 5));
    auto e2 = simulate_exact(iso, 32, 1, RngStream(9, 5));
    CHECK(e1.values() == e2.values());
}

TEST_CASE("synthesized lattice covariance matches the model up to kappa bias") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    const auto series = covariance_series_1d(iso, 3);
    const long h0[1] = {0};
    // lag 0 is exact by construction (cell masses sum to the full integral)
    for (int kappa : {1, 2, 4, 8}) {
        const double g0 = spectral_grid_covariance(iso, 256, 3, kappa,
                                                   std::span<const long>(h0, 1));
        CHECK(g0 == doctest::Approx(series[0]).epsilon(1e-10));
    }
    // small-lag bias decays as kappa grows
    const long h1[1] = {1};
    double prev = 1e9;
    for (int kappa : {1, 2, 4, 8}) {
        const double bias =
            std::abs(spectral_grid_covariance(iso, 256, 3, kappa,
                                              std::span<const long>(h1, 1)) -
                     series[1]);
        CHECK(bias <= prev * 1.05 + 1e-12);
        prev = bias;
    }
}

TEST_CASE("spectral sampler covariance bias decays with kappa (MC)") {
    // spec invariant: |sample covariance bias at h = 0| decreases
    // monotonically within SE along kappa in {1, 2, 4, 8}
    auto iso = SpectralModel::isotropic(1, -0.3);
    const auto series = covariance_series_1d(iso, 1);
    const long reps = 400, n = 64;
    double prev_bias = 1e9, prev_se = 0.0;
    for (int kappa : {1, 2, 4, 8}) {
        std::vector<double> vals;
        for (long r = 0; r < reps; ++r) {
            auto f = simulate_spectral(iso, n, 0, kappa,
                                       RngStream(1000 + kappa, r));
            vals.push_back(empirical_cov1(f, 0));
        }
        const auto ms = summarize_moments(vals);
        const double bias = std::abs(ms.mean - series[0]);
        CHECK(bias <= prev_bias + 4.0 * (ms.mean_se + prev_se));
        prev_bias = bias;
        prev_se = ms.mean_se;
    }
}

TEST_CASE("exact sampler pinned cases") {
    auto wn = SpectralModel::white_noise(1);
    // n = 1: scalar N(0, r(0)); check over replicates
    std::vector<double> xs;
    for (int r = 0; r < 4000; ++r)
        xs.push_back(simulate_exact(wn, 1, 0, RngStream(3, r)).at(1));
    auto ms = summarize_moments(xs);
    CHECK(std::abs(ms.variance - 1.0) < 4.0 * ms.variance_se);

    // n = 16 white noise: i.i.d. standard normals, lag-1 covariance ~ 0
    std::vector<double> lag1;
    for (int r = 0; r < 2000; ++r) {
        auto f = simulate_exact(wn, 16, 1, RngStream(4, r));
        lag1.push_back(empirical_cov1(f, 1));
    }
    ms = summarize_moments(lag1);
    CHECK(std::abs(ms.mean) < 4.0 * ms.mean_se);
}

TEST_CASE("exact sampler is stationary with the model covariance") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    const auto series = covariance_series_1d(iso, 3);
    const long reps = 2000, n = 32;
    std::vector<std::vector<double>> rhats(4);
    for (long r = 0; r < reps; ++r) {
        auto f = simulate_exact(iso, n, 3, RngStream(5, r));
        for (long h = 0; h <= 3; ++h)
            rhats[static_cast<std::size_t>(h)].push_back(
                empirical_cov1(f, h));
    }
    for (long h = 0; h <= 3; ++h) {
        const auto ms = summarize_moments(rhats[static_cast<std::size_t>(h)]);
        CHECK(std::abs(ms.mean - series[static_cast<std::size_t>(h)]) <
              4.0 * ms.mean_se);
    }
}

TEST_CASE("mean of the field average is zero") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    std::vector<double> means;
    for (int r = 0; r < 2000; ++r)
        means.push_back(sample_mean(simulate_exact(iso, 24, 0, RngStream(6, r))));
    const auto ms = summarize_moments(means);
    CHECK(std::abs(ms.mean) < 4.0 * ms.mean_se);
}

TEST_CASE("centered and uncentered covariances converge together") {
    // n^{d/2} (r-hat(h) - r-tilde-hat(h)) -> 0 for f in L2: the sample max
    // over replicates shrinks with n
    auto iso = SpectralModel::isotropic(1, -0.1);
    const long h1[1] = {1};
    double prev = 1e18;
    for (long n : {16L, 64L, 256L}) {
        double worst = 0.0;
        for (int r = 0; r < 50; ++r) {
            auto f = simulate_spectral(iso, n, 1, 2, RngStream(8, r));
            const double gap =
                std::sqrt(static_cast<double>(n)) *
                std::abs(empirical_cov(f, std::span<const long>(h1, 1)) -
                         empirical_cov_centered(f, std::span<const long>(h1, 1)));
            worst = std::max(worst, gap);
        }
        CHECK(worst < prev * 1.10 + 1e-9);
        prev = worst;
    }
}

TEST_CASE("exact sampler window bound and metadata round trip") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    CHECK_THROWS_AS(simulate_exact(iso, 5000, 0, RngStream(1, 1)),
                    ContractError);

    auto f = simulate_spectral(iso, 16, 2, 4, RngStream(21, 9));
    const auto sidecar = io::field_sidecar(f);
    const FieldMeta meta = io::field_meta_from_json(sidecar);
    CHECK(meta.model == f.meta().model);
    CHECK(meta.n == f.meta().n);
    CHECK(meta.margin == f.meta().margin);
    CHECK(meta.kappa == f.meta().kappa);
    CHECK(meta.seed == f.meta().seed);
    CHECK(meta.stream == f.meta().stream);
    CHECK(meta.method == f.meta().method);
}

TEST_CASE("resource guard on the frequency grid") {
    auto iso = SpectralModel::isotropic(1, -0.3);
    CHECK_THROWS_AS(simulate_spectral(iso, 1 << 24, 0, 8, RngStream(1, 1)),
                    ResourceError);
}
