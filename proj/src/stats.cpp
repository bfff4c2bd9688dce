#include "lrgf/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "lrgf/error.hpp"

namespace lrgf {

double compensated_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

namespace {

struct CentralSums {
    double mean = 0.0;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;  // central moments (biased, /n)
};

CentralSums central_moments(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    CentralSums cs;
    cs.mean = compensated_sum(xs) / n;
    std::vector<double> p2(xs.size()), p3(xs.size()), p4(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - cs.mean;
        const double d2 = d * d;
        p2[i] = d2;
        p3[i] = d2 * d;
        p4[i] = d2 * d2;
    }
    cs.m2 = compensated_sum(p2) / n;
    cs.m3 = compensated_sum(p3) / n;
    cs.m4 = compensated_sum(p4) / n;
    return cs;
}

double skew_of(const CentralSums& cs) {
    return cs.m3 / std::pow(cs.m2, 1.5);
}
double exkurt_of(const CentralSums& cs) {
    return cs.m4 / (cs.m2 * cs.m2) - 3.0;
}

}  // namespace

MomentSummary summarize_moments(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 4) throw ContractError("moment summary needs at least 4 samples");
    const double nd = static_cast<double>(n);

    const CentralSums cs = central_moments(xs);
    if (cs.m2 <= 0.0) throw ContractError("degenerate sample: zero variance");

    MomentSummary out;
    out.count = static_cast<long>(n);
    out.mean = cs.mean;
    out.variance = cs.m2 * nd / (nd - 1.0);
    out.mean_se = std::sqrt(out.variance / nd);
    out.skewness = skew_of(cs);
    out.excess_kurtosis = exkurt_of(cs);

    // Jackknife over leave-one-out recomputation, done in O(n) by peeling
    // each sample out of the shared power sums.
    const double s1 = cs.mean * nd;
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = xs[i] * xs[i];
        s2 = compensated_sum(p);
        for (std::size_t i = 0; i < n; ++i) p[i] *= xs[i];
        s3 = compensated_sum(p);
        for (std::size_t i = 0; i < n; ++i) p[i] *= xs[i];
        s4 = compensated_sum(p);
    }
    double jvar_acc = 0.0, jvar_sq = 0.0;
    double jsk_acc = 0.0, jsk_sq = 0.0;
    double jku_acc = 0.0, jku_sq = 0.0;
    const double m = nd - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        const double q1 = s1 - x;
        const double q2 = s2 - x * x;
        const double q3 = s3 - x * x * x;
        const double q4 = s4 - x * x * x * x;
        const double mu = q1 / m;
        const double c2 = q2 / m - mu * mu;
        const double c3 = q3 / m - 3.0 * mu * q2 / m + 2.0 * mu * mu * mu;
        const double c4 = q4 / m - 4.0 * mu * q3 / m +
                          6.0 * mu * mu * q2 / m - 3.0 * mu * mu * mu * mu;
        const double v = c2 * m / (m - 1.0);
        const double sk = c3 / std::pow(c2, 1.5);
        const double ku = c4 / (c2 * c2) - 3.0;
        jvar_acc += v;
        jvar_sq += v * v;
        jsk_acc += sk;
        jsk_sq += sk * sk;
        jku_acc += ku;
        jku_sq += ku * ku;
    }
    auto jackknife_se = [nd](double acc, double sq) {
        const double mean = acc / nd;
        const double var = std::max(0.0, sq / nd - mean * mean);
        return std::sqrt((nd - 1.0) * var);
    };
    out.variance_se = jackknife_se(jvar_acc, jvar_sq);
    out.skewness_se = jackknife_se(jsk_acc, jsk_sq);
    out.excess_kurtosis_se = jackknife_se(jku_acc, jku_sq);
    return out;
}

double ks_distance_fitted_normal(std::span<const double> xs) {
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const CentralSums cs = central_moments(xs);
    const double sd = std::sqrt(cs.m2 * n / (n - 1.0));
    boost::math::normal_distribution<double> normal(cs.mean, sd);
    double dmax = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double phi = boost::math::cdf(normal, sorted[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        dmax = std::max({dmax, std::abs(phi - lo), std::abs(phi - hi)});
    }
    return dmax;
}

NormalityDiagnostics normality_diagnostics(std::span<const double> xs) {
    if (xs.size() < 500)
        throw ContractError("normality diagnostics need >= 500 samples");
    const MomentSummary ms = summarize_moments(xs);
    NormalityDiagnostics out;
    out.count = ms.count;
    out.skewness = ms.skewness;
    out.skewness_se = ms.skewness_se;
    out.excess_kurtosis = ms.excess_kurtosis;
    out.excess_kurtosis_se = ms.excess_kurtosis_se;
    out.ks_distance = ks_distance_fitted_normal(xs);
    return out;
}

SlopeFit estimate_scaling_exponent(
    std::span<const std::pair<double, double>> n_and_var) {
    const std::size_t k = n_and_var.size();
    if (k < 3)
        throw ContractError("scaling regression needs at least 3 points");
    std::vector<double> lx(k), ly(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(n_and_var[i].first > 0.0) || !(n_and_var[i].second > 0.0))
            throw ContractError("scaling regression needs positive inputs");
        lx[i] = std::log(n_and_var[i].first);
        ly[i] = std::log(n_and_var[i].second);
    }
    const double n = static_cast<double>(k);
    const double mx = compensated_sum(lx) / n;
    const double my = compensated_sum(ly) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double res = ly[i] - fit.intercept - fit.slope * lx[i];
        ssr += res * res;
    }
    const double df = n - 2.0;
    const double se = std::sqrt(std::max(0.0, ssr / df) / sxx);
    boost::math::students_t_distribution<double> t(df);
    fit.half_width = boost::math::quantile(t, 0.975) * se;
    return fit;
}

}  // namespace lrgf
