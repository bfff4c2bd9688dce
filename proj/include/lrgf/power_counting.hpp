#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrgf/error.hpp"

namespace lrgf {

// Exact rational arithmetic (64-bit numerator/denominator, 128-bit
// intermediates, always reduced).
class Rational {
public:
    Rational() = default;
    Rational(long long num) : num_(num), den_(1) {}
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    std::string str() const;

private:
    long long num_ = 0;
    long long den_ = 1;
};

// Exponent that is affine in the model parameters (alpha_p, alpha_q, beta).
struct SymbolicExponent {
    Rational constant{0};
    Rational coef_alpha_p{0};
    Rational coef_alpha_q{0};
    Rational coef_beta{0};

    SymbolicExponent operator+(const SymbolicExponent& o) const {
        return {constant + o.constant, coef_alpha_p + o.coef_alpha_p,
                coef_alpha_q + o.coef_alpha_q, coef_beta + o.coef_beta};
    }
    bool operator==(const SymbolicExponent& o) const {
        return constant == o.constant && coef_alpha_p == o.coef_alpha_p &&
               coef_alpha_q == o.coef_alpha_q && coef_beta == o.coef_beta;
    }
    Rational eval(const Rational& alpha_p, const Rational& alpha_q,
                  const Rational& beta) const {
        return constant + coef_alpha_p * alpha_p + coef_alpha_q * alpha_q +
               coef_beta * beta;
    }
    std::string str() const;
};

// A family T = {L_1, ..., L_K} of linear functionals over the integration
// variables, each carrying the exponent gamma_k of |L_k| in the integrand.
struct PowerCountingProblem {
    std::vector<std::vector<Rational>> functionals;  // rows: coefficients
    std::vector<SymbolicExponent> exponents;

    std::size_t size() const { return functionals.size(); }
    std::size_t variables() const {
        return functionals.empty() ? 0 : functionals.front().size();
    }
    void validate() const;
};

// rank over the rationals (fraction-free Gaussian elimination)
int rational_rank(const std::vector<std::vector<Rational>>& rows);

// d_inf(W) = rank(T) - rank(W) + sum_{k not in W} gamma_k, W given by
// indices into the problem (0-based). Throws ContractError if an index is
// out of range or repeated.
SymbolicExponent power_counting_d_inf(const PowerCountingProblem& problem,
                                      const std::vector<int>& subset);

// All span-closed padded proper subsets W of T (span(W) intersect T = W and
// every member is a combination of the others); |T| <= 20.
std::vector<std::vector<int>> enumerate_padded_subsets(
    const PowerCountingProblem& problem);

// The integrability-at-infinity problem for the anisotropic two-line check:
// variables u = (x1, x2, y1, y2, t1, t2, s1, s2); L_1..L_4 the line forms
// with exponents 2 alpha_p / 2 alpha_q, L_5..L_8 = t, s coordinates with
// exponent beta, L_9..L_16 the (1+|.|)^{-1} mixing factors with exponent -1.
PowerCountingProblem two_line_condition_h_problem(const Rational& p,
                                                  const Rational& q);

}  // namespace lrgf
