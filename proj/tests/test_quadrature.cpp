#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgf/error.hpp"
#include "lrgf/quadrature.hpp"
#include "lrgf/rng.hpp"
#include "lrgf/special.hpp"

using namespace lrgf;

TEST_CASE("smooth integrals at tight tolerance") {
    quad::Options opts;
    opts.abs_tol = 1e-12;
    const double v = quad::integrate_value(
        [](double x) { return std::sin(x); }, 0.0, kPi, opts);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    opts.max_initial_width = 0.1;
    const double w = quad::integrate_value(
        [](double x) { return std::cos(40.0 * x); }, 0.0, kPi, opts);
    CHECK(std::abs(w) < 1e-11);
}

TEST_CASE("power singularities integrate to the antiderivative value") {
    quad::Options opts;
    opts.abs_tol = 1e-10;
    for (double s : {-0.9, -0.7, -0.3, 0.4}) {
        const double v = quad::integrate_value(
            [s](double x) { return std::pow(std::abs(x), s); }, -kPi, kPi,
            opts, {{0.0, s}});
        const double expect = 2.0 * std::pow(kPi, s + 1.0) / (s + 1.0);
        CHECK(v == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("interior singular point between asymmetric bounds") {
    quad::Options opts;
    opts.abs_tol = 1e-10;
    const double s = -0.6;
    const double v = quad::integrate_value(
        [s](double x) { return std::pow(std::abs(x - 1.0), s); }, 0.0, 3.0,
        opts, {{1.0, s}});
    const double expect =
        (std::pow(1.0, s + 1.0) + std::pow(2.0, s + 1.0)) / (s + 1.0);
    CHECK(v == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("singular factor against an oscillation") {
    quad::Options opts;
    opts.abs_tol = 1e-11;
    opts.max_initial_width = kPi / 12.0;
    // reference from the two-regime transform
    const double ref = special::power_law_cosine_transform(-0.7, 6);
    const double v = quad::integrate_value(
        [](double x) { return std::pow(std::abs(x), -0.7) * std::cos(6.0 * x); },
        -kPi, kPi, opts, {{0.0, -0.7}});
    CHECK(v == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("non-integrable exponents are reported as divergence") {
    quad::Options opts;
    opts.abs_tol = 1e-8;
    CHECK_THROWS_AS(quad::integrate_value(
                        [](double x) { return std::pow(std::abs(x), -1.4); },
                        -kPi, kPi, opts, {{0.0, -1.4}}),
                    DivergenceError);
    // boundary case ~ 1/|x| diverges logarithmically
    CHECK_THROWS_AS(quad::integrate_value(
                        [](double x) { return 1.0 / std::abs(x); }, -kPi, kPi,
                        opts, {{0.0, -1.0}}),
                    DivergenceError);
}

TEST_CASE("panel budget failure is reported") {
    quad::Options opts;
    opts.abs_tol = 1e-13;
    opts.max_panels = 8;
    opts.max_initial_width = 1e-3;  // forces more segments than the budget
    CHECK_THROWS_AS(quad::integrate_value([](double x) { return std::sin(x); },
                                          0.0, kPi, opts),
                    QuadratureBudgetError);
}

TEST_CASE("nested 2-d integration with a singular diagonal slice") {
    // f(x, y) = |x - y|^{-1/2} over [0,1]^2 = 8/3
    const double v = quad::integrate2d(
        [](double x, double y) {
            return std::pow(std::abs(x - y), -0.5);
        },
        0.0, 1.0, 0.0, 1.0, 1e-8,
        [](double y) {
            return std::vector<quad::SingularCut>{{y, -0.5}};
        },
        {{0.0, 0.5}, {1.0, 0.5}});
    CHECK(v == doctest::Approx(8.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("oscillatory power transform agrees across regimes") {
    // h = 24 uses quadrature, h = 25 the Gamma/tail series
    for (double s : {-0.7, -0.2}) {
        quad::Options opts;
        opts.abs_tol = 1e-12;
        for (long h : {23L, 24L, 25L, 26L, 40L}) {
            opts.max_initial_width = kPi / (2.0 * static_cast<double>(h));
            const double direct =
                2.0 * quad::integrate_value(
                          [s, h](double x) {
                              return std::pow(x, s) *
                                     std::cos(static_cast<double>(h) * x);
                          },
                          0.0, kPi, opts, {{0.0, s}});
            const double fast = special::power_law_cosine_transform(s, h);
            CHECK(fast == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("tail constant matches the far-lag covariance decay") {
    // alpha = -0.25: c = 2 Gamma(1/2) cos(pi/4) = sqrt(2 pi)
    CHECK(special::covariance_tail_constant(-0.25, 1.0) ==
          doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-12));
    // alpha -> 0: the constant vanishes
    CHECK(special::covariance_tail_constant(-1e-9, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(special::covariance_tail_constant(-0.6, 1.0),
                    ContractError);
    CHECK_THROWS_AS(special::covariance_tail_constant(-0.25, 0.0),
                    ContractError);

    // numeric check at alpha = -0.35: r(h) h^{2a+1} near c_alpha at h = 5000
    const double c = special::covariance_tail_constant(-0.35, 1.0);
    const double r = special::power_law_cosine_transform(-0.7, 5000);
    CHECK(r * std::pow(5000.0, 0.3) == doctest::Approx(c).epsilon(2e-4));
    // and at alpha = -0.35 within 2% already by h = 5000 per the slow decay
    const double c2 = special::covariance_tail_constant(-0.35, 1.0);
    CHECK(std::abs(r * std::pow(5000.0, 0.3) / c2 - 1.0) < 0.02);
}

TEST_CASE("rng streams are deterministic and distinct") {
    RngStream a(1234, 7);
    RngStream b(1234, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(1234, 8);
    int differ = 0;
    RngStream a2(1234, 7);
    for (int i = 0; i < 64; ++i)
        if (a2.next_u64() != c.next_u64()) ++differ;
    CHECK(differ == 64);
}

TEST_CASE("rng normals have sane moments") {
    RngStream rng(99, 0);
    const long n = 200000;
    double sum = 0.0, sq = 0.0, quart = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        sum += x;
        sq += x * x;
        quart += x * x * x * x;
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(quart / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("rng counter positioning reproduces") {
    RngStream a(5, 1);
    for (int i = 0; i < 7; ++i) a.next_u64();
    const auto mark = a.counter();
    const auto v1 = a.next_u64();
    RngStream b(5, 1);
    b.set_counter(mark);
    CHECK(b.next_u64() == v1);
}
