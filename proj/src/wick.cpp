#include "lrgf/wick.hpp"

#include <algorithm>
#include <cmath>

namespace lrgf {

namespace {

struct Interval {
    long lo, hi;  // inclusive; empty if lo > hi
    long length() const { return hi - lo + 1; }
};

// S_m = { i : i in [1, n], i - m in [1, n] } per axis.
Interval support_interval(long n, long m) {
    return {std::max(1L, 1L + m), std::min(n, n + m)};
}

// #{ i : i in A, i + u in B }
long overlap_count(Interval a, Interval b, long u) {
    const long lo = std::max(a.lo, b.lo - u);
    const long hi = std::min(a.hi, b.hi - u);
    return std::max(0L, hi - lo + 1);
}

}  // namespace

double wick_variance_qn(const LagCovariance& cov,
                        const QuadraticFormSpec& spec, long n) {
    const int d = cov.dimension();
    if (d != spec.dimension()) throw ContractError("dimension mismatch");
    long double acc = 0.0L;
    const auto& ws = spec.weights();
    if (d == 1) {
        for (const auto& wm : ws) {
            const long m = wm.lag[0];
            if (std::labs(m) >= n) continue;
            const Interval sm = support_interval(n, m);
            for (const auto& wm2 : ws) {
                const long mp = wm2.lag[0];
                if (std::labs(mp) >= n) continue;
                const Interval smp = support_interval(n, mp);
                const double gg = wm.value * wm2.value;
                for (long u = smp.lo - sm.hi; u <= smp.hi - sm.lo; ++u) {
                    const long count = overlap_count(sm, smp, u);
                    if (count == 0) continue;
                    acc += gg * count *
                           (cov.at(u) * cov.at(u + m - mp) +
                            cov.at(u - mp) * cov.at(u + m));
                }
            }
        }
        const double n2 = static_cast<double>(n) * n;
        return static_cast<double>(acc) / n2;
    }

    for (const auto& wm : ws) {
        const long m1 = wm.lag[0], m2 = wm.lag[1];
        if (std::labs(m1) >= n || std::labs(m2) >= n) continue;
        const Interval sm1 = support_interval(n, m1);
        const Interval sm2 = support_interval(n, m2);
        for (const auto& wm2 : ws) {
            const long p1 = wm2.lag[0], p2 = wm2.lag[1];
            if (std::labs(p1) >= n || std::labs(p2) >= n) continue;
            const Interval sp1 = support_interval(n, p1);
            const Interval sp2 = support_interval(n, p2);
            const double gg = wm.value * wm2.value;
            for (long u1 = sp1.lo - sm1.hi; u1 <= sp1.hi - sm1.lo; ++u1) {
                const long c1 = overlap_count(sm1, sp1, u1);
                if (c1 == 0) continue;
                for (long u2 = sp2.lo - sm2.hi; u2 <= sp2.hi - sm2.lo; ++u2) {
                    const long c2 = overlap_count(sm2, sp2, u2);
                    if (c2 == 0) continue;
                    acc += gg * c1 * c2 *
                           (cov.at(u1, u2) *
                                cov.at(u1 + m1 - p1, u2 + m2 - p2) +
                            cov.at(u1 - p1, u2 - p2) *
                                cov.at(u1 + m1, u2 + m2));
                }
            }
        }
    }
    const double nd = static_cast<double>(n) * n;
    return static_cast<double>(acc) / (nd * nd);
}

double wick_variance_qn(const SpectralModel& model,
                        const QuadraticFormSpec& spec, long n) {
    const long reach = n + 2 * spec.support_radius();
    LagCovariance cov(model, reach);
    return wick_variance_qn(cov, spec, n);
}

double wick_variance_rhat(const LagCovariance& cov, std::span<const long> h,
                          long n) {
    const int d = cov.dimension();
    if (static_cast<int>(h.size()) != d)
        throw ContractError("lag dimension mismatch");
    long double acc = 0.0L;
    if (d == 1) {
        const long h1 = h[0];
        for (long u = -(n - 1); u <= n - 1; ++u) {
            const double count = static_cast<double>(n - std::labs(u));
            acc += count * (cov.at(u) * cov.at(u) +
                            cov.at(u + h1) * cov.at(u - h1));
        }
        const double n2 = static_cast<double>(n) * n;
        return static_cast<double>(acc) / n2;
    }
    const long h1 = h[0], h2 = h[1];
    for (long u1 = -(n - 1); u1 <= n - 1; ++u1) {
        const double c1 = static_cast<double>(n - std::labs(u1));
        for (long u2 = -(n - 1); u2 <= n - 1; ++u2) {
            const double c2 = static_cast<double>(n - std::labs(u2));
            const double r = cov.at(u1, u2);
            const double cross =
                cov.at(u1 + h1, u2 + h2) * cov.at(u1 - h1, u2 - h2);
            if (r == 0.0 && cross == 0.0) continue;
            acc += c1 * c2 * (r * r + cross);
        }
    }
    const double nd = static_cast<double>(n) * n;
    return static_cast<double>(acc) / (nd * nd);
}

double wick_variance_rhat(const SpectralModel& model, std::span<const long> h,
                          long n) {
    long reach = n - 1;
    for (long hk : h) reach += std::labs(hk);
    LagCovariance cov(model, reach);
    return wick_variance_rhat(cov, h, n);
}

}  // namespace lrgf
