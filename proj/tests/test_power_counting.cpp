#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lrgf/power_counting.hpp"
#include "lrgf/rng.hpp"

using namespace lrgf;

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rank over the rationals") {
    std::vector<std::vector<Rational>> rows = {
        {Rational(1), Rational(2)},
        {Rational(2), Rational(4)},
        {Rational(0), Rational(1)},
    };
    CHECK(rational_rank(rows) == 2);
    CHECK(rational_rank({}) == 0);
}

namespace {

std::vector<int> full_mixing_subset() {
    return {8, 9, 10, 11, 12, 13, 14, 15};  // L9..L16
}

}  // namespace

TEST_CASE("two-line problem reproduces the closed form symbolically") {
    const auto prob = two_line_condition_h_problem(Rational(1), Rational(-1));
    CHECK(prob.size() == 16);
    CHECK(rational_rank(prob.functionals) == 8);

    const auto d = power_counting_d_inf(prob, full_mixing_subset());
    // 8 - 6 + 4 alpha_p + 4 alpha_q + 4 beta
    const SymbolicExponent expect{Rational(2), Rational(4), Rational(4),
                                  Rational(4)};
    CHECK(d == expect);

    // exact evaluation at 10 random rational parameter triples
    RngStream rng(77, 0);
    for (int i = 0; i < 10; ++i) {
        const Rational ap(-(static_cast<long long>(rng.next_u64() % 49) + 1),
                          100);
        const Rational aq(-(static_cast<long long>(rng.next_u64() % 49) + 1),
                          100);
        const Rational b(-(static_cast<long long>(rng.next_u64() % 99)), 100);
        const Rational lhs = d.eval(ap, aq, b);
        const Rational rhs = Rational(2) + Rational(4) * ap +
                             Rational(4) * aq + Rational(4) * b;
        CHECK(lhs == rhs);  // zero tolerance
    }

    // the example triple: alpha_p = alpha_q = -3/10, beta = 0 -> -2/5
    CHECK(d.eval(Rational(-3, 10), Rational(-3, 10), Rational(0)) ==
          Rational(-2, 5));
}

TEST_CASE("closed form is stable across slopes p != q") {
    for (auto [p, q] : std::vector<std::pair<Rational, Rational>>{
             {Rational(2), Rational(1)},
             {Rational(1, 2), Rational(-3)},
             {Rational(5, 3), Rational(0)}}) {
        const auto prob = two_line_condition_h_problem(p, q);
        const auto d = power_counting_d_inf(prob, full_mixing_subset());
        const SymbolicExponent expect{Rational(2), Rational(4), Rational(4),
                                      Rational(4)};
        CHECK(d == expect);
    }
}

TEST_CASE("W = T gives zero") {
    const auto prob = two_line_condition_h_problem(Rational(1), Rational(-1));
    std::vector<int> all;
    for (int i = 0; i < 16; ++i) all.push_back(i);
    const auto d = power_counting_d_inf(prob, all);
    CHECK(d == SymbolicExponent{});
}

TEST_CASE("subset index errors") {
    const auto prob = two_line_condition_h_problem(Rational(1), Rational(-1));
    CHECK_THROWS_AS(power_counting_d_inf(prob, {16}), ContractError);
    CHECK_THROWS_AS(power_counting_d_inf(prob, {3, 3}), ContractError);
}

TEST_CASE("enumeration finds the maximizing padded subset") {
    const auto prob = two_line_condition_h_problem(Rational(1), Rational(-1));
    const auto subsets = enumerate_padded_subsets(prob);
    CHECK(!subsets.empty());

    // evaluate every candidate at a strict-inequality parameter point and
    // check the mixing family L9..L16 attains the maximum
    const Rational ap(-3, 10), aq(-3, 10), b(0);
    const auto ref =
        power_counting_d_inf(prob, full_mixing_subset()).eval(ap, aq, b);
    bool found_ref = false;
    for (const auto& w : subsets) {
        const auto val = power_counting_d_inf(prob, w).eval(ap, aq, b);
        CHECK_FALSE(ref < val);
        if (w == full_mixing_subset()) found_ref = true;
    }
    CHECK(found_ref);
}
