#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgf/condition_h.hpp"

using namespace lrgf;

namespace {

QuadraticFormSpec form_with_beta(int d, double beta) {
    auto spec = d == 1 ? QuadraticFormSpec::covariance_lag1(0)
                       : QuadraticFormSpec::covariance_lag2(0, 0);
    if (beta == 0.0) return spec;
    spec.with_symbol_metadata(
        beta, spec.l2_zero(),
        [beta, d](std::span<const double> t) {
            double v = 1.0;
            for (double tk : t)
                v *= std::pow(std::abs(tk), 2.0 * beta / d);
            return v;
        });
    return spec;
}

}  // namespace

TEST_CASE("analytic region verdicts for the product-bound criterion") {
    // alpha + beta < -1/4 holds in d = 1
    auto holds = check_condition_h(SpectralModel::isotropic(1, -0.35),
                                   form_with_beta(1, 0.0),
                                   ConditionHMode::Analytic);
    CHECK(holds.status == ConditionHStatus::HoldsByLemma);
    CHECK(holds.criterion == "product-bound region");

    auto fails = check_condition_h(SpectralModel::isotropic(1, -0.1),
                                   form_with_beta(1, 0.0),
                                   ConditionHMode::Analytic);
    CHECK(fails.status == ConditionHStatus::FailsLemmaRegion);
}

TEST_CASE("analytic region verdict for the two-line criterion") {
    auto holds = check_condition_h(
        SpectralModel::two_lines(-0.3, -0.3, 1.0, -1.0), form_with_beta(2, 0.0),
        ConditionHMode::Analytic);
    CHECK(holds.status == ConditionHStatus::HoldsByLemma);
    CHECK(holds.criterion == "two-line region");

    auto fails = check_condition_h(
        SpectralModel::two_lines(-0.2, -0.2, 1.0, -1.0), form_with_beta(2, 0.0),
        ConditionHMode::Analytic);
    CHECK(fails.status == ConditionHStatus::FailsLemmaRegion);
}

TEST_CASE("kinds without an analytic region refuse analytic mode") {
    CHECK_THROWS_AS(check_condition_h(SpectralModel::one_direction(-0.35, 1.0),
                                      form_with_beta(2, 0.0),
                                      ConditionHMode::Analytic),
                    ContractError);
    CHECK_THROWS_AS(check_condition_h(SpectralModel::white_noise(1),
                                      form_with_beta(1, 0.0),
                                      ConditionHMode::Analytic),
                    ContractError);
}

TEST_CASE("verdict monotonicity in alpha inside the open region") {
    // if (alpha, beta) holds and alpha' <= alpha stays above -d/2, the
    // verdict stays HoldsByLemma
    const double beta = -0.05;
    double alpha = -0.30;
    auto first = check_condition_h(SpectralModel::isotropic(1, alpha),
                                   form_with_beta(1, beta),
                                   ConditionHMode::Analytic);
    REQUIRE(first.status == ConditionHStatus::HoldsByLemma);
    for (double a2 : {-0.35, -0.40, -0.45, -0.49}) {
        auto v = check_condition_h(SpectralModel::isotropic(1, a2),
                                   form_with_beta(1, beta),
                                   ConditionHMode::Analytic);
        CHECK(v.status == ConditionHStatus::HoldsByLemma);
    }
}

TEST_CASE("numeric path stabilizes at an interior point") {
    NumericHOptions opts;
    opts.base_samples = 1L << 15;
    const auto v = check_condition_h(SpectralModel::isotropic(1, -0.35),
                                     form_with_beta(1, -0.05),
                                     ConditionHMode::Numeric, opts);
    CHECK(v.status == ConditionHStatus::NumericFinite);
    CHECK(v.estimate > 0.0);
    CHECK(v.doubling_estimates.size() == 5);
    CHECK(v.drift < 0.10);
}

TEST_CASE("numeric path flags the strongly divergent corner") {
    NumericHOptions opts;
    opts.base_samples = 1L << 15;
    const auto v = check_condition_h(SpectralModel::isotropic(1, -0.05),
                                     form_with_beta(1, -0.05),
                                     ConditionHMode::Numeric, opts);
    CHECK(v.status == ConditionHStatus::NumericUnstable);
    CHECK(v.drift >= 0.10);
}

TEST_CASE("auto mode prefers the analytic region") {
    auto v = check_condition_h(SpectralModel::isotropic(1, -0.35),
                               form_with_beta(1, 0.0));
    CHECK(v.status == ConditionHStatus::HoldsByLemma);
    // no analytic region: auto falls back to the numeric path
    NumericHOptions opts;
    opts.base_samples = 1L << 13;
    auto v2 = check_condition_h(SpectralModel::one_direction(-0.35, 1.0),
                                form_with_beta(2, 0.0), ConditionHMode::Auto,
                                opts);
    CHECK((v2.status == ConditionHStatus::NumericFinite ||
           v2.status == ConditionHStatus::NumericUnstable));
}
