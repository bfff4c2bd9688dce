#include "lrgf/power_counting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lrgf {

namespace {

long long checked_ll(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error("rational arithmetic overflow");
    return static_cast<long long>(v);
}

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const long long g = gcd_ll(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational Rational::operator+(const Rational& o) const {
    const __int128 n = static_cast<__int128>(num_) * o.den_ +
                       static_cast<__int128>(o.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * o.den_;
    const __int128 g = [](__int128 a, __int128 b) {
        if (a < 0) a = -a;
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }(n, d);
    if (g > 1) return Rational(checked_ll(n / g), checked_ll(d / g));
    return Rational(checked_ll(n), checked_ll(d));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    const long long g1 = gcd_ll(num_, o.den_);
    const long long g2 = gcd_ll(o.num_, den_);
    const __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
    const __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
    return Rational(checked_ll(n), checked_ll(d));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw Error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ <
           static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

std::string SymbolicExponent::str() const {
    std::ostringstream os;
    os << constant.str();
    if (!coef_alpha_p.is_zero()) os << " + " << coef_alpha_p.str() << "*ap";
    if (!coef_alpha_q.is_zero()) os << " + " << coef_alpha_q.str() << "*aq";
    if (!coef_beta.is_zero()) os << " + " << coef_beta.str() << "*b";
    return os.str();
}

void PowerCountingProblem::validate() const {
    if (functionals.size() != exponents.size())
        throw ContractError("functionals and exponents must pair up");
    for (const auto& row : functionals)
        if (row.size() != variables())
            throw ContractError("functionals must share one variable space");
}

int rational_rank(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    std::vector<std::vector<Rational>> m = rows;
    const std::size_t ncols = m.front().size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (m[r][col].is_zero()) continue;
            const Rational factor = m[r][col] / m[row][col];
            for (std::size_t c = col; c < ncols; ++c)
                m[r][c] = m[r][c] - factor * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::vector<Rational>> gather(
    const PowerCountingProblem& problem, const std::vector<int>& subset) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(subset.size());
    for (int k : subset) {
        if (k < 0 || static_cast<std::size_t>(k) >= problem.size())
            throw ContractError("subset index outside the functional family");
        rows.push_back(problem.functionals[static_cast<std::size_t>(k)]);
    }
    return rows;
}

}  // namespace

SymbolicExponent power_counting_d_inf(const PowerCountingProblem& problem,
                                      const std::vector<int>& subset) {
    problem.validate();
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ContractError("subset indices must be distinct");

    const int rank_t = rational_rank(problem.functionals);
    const int rank_w = rational_rank(gather(problem, subset));

    SymbolicExponent sum;
    std::size_t si = 0;
    for (std::size_t k = 0; k < problem.size(); ++k) {
        if (si < sorted.size() && sorted[si] == static_cast<int>(k)) {
            ++si;
            continue;
        }
        sum = sum + problem.exponents[k];
    }
    sum.constant = sum.constant + Rational(rank_t - rank_w);
    return sum;
}

namespace {

// Incremental row-echelon form over the rationals.
class Echelon {
public:
    // Reduces `row` against the current rows; if independent, absorbs it
    // and returns true.
    bool add(std::vector<Rational> row) {
        if (!reduce(row)) return false;
        std::size_t lead = 0;
        while (row[lead].is_zero()) ++lead;
        rows_.push_back(std::move(row));
        leads_.push_back(lead);
        return true;
    }

    bool contains(std::vector<Rational> row) const { return !reduce(row); }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    // Returns true if a nonzero remainder is left after reduction.
    bool reduce(std::vector<Rational>& row) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t lead = leads_[r];
            if (row[lead].is_zero()) continue;
            const Rational factor = row[lead] / rows_[r][lead];
            for (std::size_t c = lead; c < row.size(); ++c)
                row[c] = row[c] - factor * rows_[r][c];
        }
        for (const Rational& v : row)
            if (!v.is_zero()) return true;
        return false;
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> leads_;
};

}  // namespace

std::vector<std::vector<int>> enumerate_padded_subsets(
    const PowerCountingProblem& problem) {
    problem.validate();
    const std::size_t k = problem.size();
    if (k > 20)
        throw ContractError("subset enumeration supports families up to 20");

    std::vector<std::vector<int>> out;
    const std::uint32_t limit = 1u << k;
    for (std::uint32_t bits = 0; bits + 1 < limit; ++bits) {  // skip W = T
        std::vector<int> subset;
        for (std::size_t i = 0; i < k; ++i)
            if (bits & (1u << i)) subset.push_back(static_cast<int>(i));

        Echelon span;
        for (int idx : subset)
            span.add(problem.functionals[static_cast<std::size_t>(idx)]);
        const int rank_w = span.rank();

        // span-closed: no functional outside W lies in span(W)
        bool closed = true;
        for (std::size_t i = 0; i < k && closed; ++i) {
            if (bits & (1u << i)) continue;
            if (span.contains(problem.functionals[i])) closed = false;
        }
        if (!closed) continue;

        // padded: each member is spanned by the others
        bool padded = true;
        for (std::size_t j = 0; j < subset.size() && padded; ++j) {
            Echelon rest;
            for (std::size_t i = 0; i < subset.size(); ++i)
                if (i != j)
                    rest.add(problem.functionals[static_cast<std::size_t>(
                        subset[i])]);
            if (rest.rank() != rank_w) padded = false;
        }
        if (!padded) continue;
        out.push_back(std::move(subset));
    }
    return out;
}

PowerCountingProblem two_line_condition_h_problem(const Rational& p,
                                                  const Rational& q) {
    // variables: x1 x2 y1 y2 t1 t2 s1 s2
    PowerCountingProblem prob;
    auto row = [](std::initializer_list<std::pair<int, Rational>> terms) {
        std::vector<Rational> r(8, Rational(0));
        for (const auto& [idx, c] : terms) r[static_cast<std::size_t>(idx)] = c;
        return r;
    };
    const Rational one(1);
    const SymbolicExponent two_ap{Rational(0), Rational(2), Rational(0),
                                  Rational(0)};
    const SymbolicExponent two_aq{Rational(0), Rational(0), Rational(2),
                                  Rational(0)};
    const SymbolicExponent beta{Rational(0), Rational(0), Rational(0),
                                Rational(1)};
    const SymbolicExponent minus_one{Rational(-1), Rational(0), Rational(0),
                                     Rational(0)};

    // L1..L4: the singular line forms of x and y
    prob.functionals.push_back(row({{0, one}, {1, p}}));
    prob.exponents.push_back(two_ap);
    prob.functionals.push_back(row({{0, one}, {1, q}}));
    prob.exponents.push_back(two_aq);
    prob.functionals.push_back(row({{2, one}, {3, p}}));
    prob.exponents.push_back(two_ap);
    prob.functionals.push_back(row({{2, one}, {3, q}}));
    prob.exponents.push_back(two_aq);
    // L5..L8: t and s coordinates
    for (int i = 4; i < 8; ++i) {
        prob.functionals.push_back(row({{i, one}}));
        prob.exponents.push_back(beta);
    }
    // L9..L16: the mixing factors x+t, y-t, x+s, y-s (per coordinate)
    prob.functionals.push_back(row({{0, one}, {4, one}}));   // x1 + t1
    prob.functionals.push_back(row({{1, one}, {5, one}}));   // x2 + t2
    prob.functionals.push_back(row({{2, one}, {4, -one}}));  // y1 - t1
    prob.functionals.push_back(row({{3, one}, {5, -one}}));  // y2 - t2
    prob.functionals.push_back(row({{0, one}, {6, one}}));   // x1 + s1
    prob.functionals.push_back(row({{1, one}, {7, one}}));   // x2 + s2
    prob.functionals.push_back(row({{2, one}, {6, -one}}));  // y1 - s1
    prob.functionals.push_back(row({{3, one}, {7, -one}}));  // y2 - s2
    for (int i = 0; i < 8; ++i) prob.exponents.push_back(minus_one);

    prob.validate();
    return prob;
}

}  // namespace lrgf
