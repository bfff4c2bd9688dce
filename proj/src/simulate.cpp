#include "lrgf/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "lrgf/covariance.hpp"
#include "lrgf/fft.hpp"
#include "lrgf/quadrature.hpp"

namespace lrgf {

namespace {

constexpr long kMaxGridCells = 1L << 26;
constexpr long kMaxExactWindow = 4096;

long grid_points(long n, long margin, int kappa) {
    long N = kappa * (n + 2 * margin);
    if (N % 2 != 0) ++N;  // even grid: index negation has no fixed point
    return N;
}

// ---- spectral mass grids ----------------------------------------------

bool cell_delicate_1d(const SpectralModel& model, double lo, double hi,
                      double pad) {
    for (const auto& cut : model.density_cuts_1d())
        if (cut.x > lo - pad && cut.x < hi + pad) return true;
    return false;
}

bool cell_delicate_2d(const SpectralModel& model, double x1lo, double x1hi,
                      double x2lo, double x2hi, double pad) {
    switch (model.kind()) {
        case ModelKind::WhiteNoise:
            return false;
        case ModelKind::Isotropic: {
            if (model.alpha() >= 0.0) return false;
            const double d1 = std::max({x1lo, -x1hi, 0.0});
            const double d2 = std::max({x2lo, -x2hi, 0.0});
            return std::hypot(d1, d2) < pad;
        }
        case ModelKind::Product:
            return (x1lo < pad && x1hi > -pad) || (x2lo < pad && x2hi > -pad);
        default: {
            // Singular lines: check the inner cuts over the cell's x2 range.
            const double slope =
                1.0 + std::abs(model.slope_p()) + std::abs(model.slope_q());
            for (double x2 : {x2lo, 0.5 * (x2lo + x2hi), x2hi}) {
                for (const auto& cut : model.density_inner_cuts(x2))
                    if (cut.x > x1lo - pad * slope && cut.x < x1hi + pad * slope)
                        return true;
            }
            return false;
        }
    }
}

// Tensor Gauss-Legendre 7 for smooth cells.
constexpr int kGl7 = 7;
constexpr double kGl7Nodes[kGl7] = {
    -0.949107912342759, -0.741531185599394, -0.405845151377397, 0.0,
    0.405845151377397, 0.741531185599394, 0.949107912342759};
constexpr double kGl7Weights[kGl7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

std::vector<double> build_masses(const SpectralModel& model, long N) {
    const int d = model.dimension();
    const double delta = kTwoPi / static_cast<double>(N);
    const double cell_tol = 1e-13;
    const double cell_tol_2d = 1e-9;

    // Boundary via the symmetric form so x = 0 is hit exactly at k = N/2.
    auto edge = [N](long k) {
        return kPi * static_cast<double>(2 * k - N) / static_cast<double>(N);
    };
    if (d == 1) {
        std::vector<double> mass(static_cast<std::size_t>(N), 0.0);
        quad::Options opts;
        opts.abs_tol = cell_tol;
        const auto cuts = model.density_cuts_1d();
        for (long k = 0; k < N / 2; ++k) {
            const double lo = edge(k);
            const double hi = edge(k + 1);
            double m;
            if (cell_delicate_1d(model, lo, hi, delta)) {
                m = quad::integrate_value(
                    [&model](double x) { return model.density1(x); }, lo, hi,
                    opts, cuts);
            } else {
                double acc = 0.0;
                const double mid = 0.5 * (lo + hi), hw = 0.5 * delta;
                for (int i = 0; i < kGl7; ++i)
                    acc += kGl7Weights[i] *
                           model.density1(mid + hw * kGl7Nodes[i]);
                m = acc * hw;
            }
            mass[static_cast<std::size_t>(k)] = m;
            mass[static_cast<std::size_t>(N - 1 - k)] = m;  // f is even
        }
        return mass;
    }

    std::vector<double> mass(static_cast<std::size_t>(N) * N, 0.0);
    auto inner_cuts = [&model](double y) { return model.density_inner_cuts(y); };

    if (model.kind() == ModelKind::OneDirection) {
        // Exact: integrate ftilde(x1 + p x2)/(2 pi) over the cell through
        // its double antiderivative.
        const double p = model.slope_p();
        auto cell_mass = [&](double a, double b, double c, double d) {
            if (p == 0.0)
                return (d - c) *
                       (model.ftilde_antiderivative(b) -
                        model.ftilde_antiderivative(a)) /
                       kTwoPi;
            auto g = [&](double u) { return model.ftilde_antiderivative2(u); };
            return (g(b + p * d) - g(b + p * c) - g(a + p * d) +
                    g(a + p * c)) /
                   (p * kTwoPi);
        };
        for (long k1 = 0; k1 < N / 2; ++k1) {
            for (long k2 = 0; k2 < N; ++k2) {
                const double m = cell_mass(edge(k1), edge(k1 + 1), edge(k2),
                                           edge(k2 + 1));
                mass[static_cast<std::size_t>(k1) * N + k2] = m;
                mass[static_cast<std::size_t>(N - 1 - k1) * N +
                     (N - 1 - k2)] = m;
            }
        }
        return mass;
    }

    for (long k1 = 0; k1 < N / 2; ++k1) {
        const double x1lo = edge(k1);
        const double x1hi = edge(k1 + 1);
        for (long k2 = 0; k2 < N; ++k2) {
            const double x2lo = edge(k2);
            const double x2hi = edge(k2 + 1);
            double m;
            if (cell_delicate_2d(model, x1lo, x1hi, x2lo, x2hi, 2.0 * delta)) {
                // Slice kinks where a singular line crosses the cell's x1
                // edges bound the outer refinement.
                std::vector<quad::SingularCut> outer =
                    model.density_outer_cuts();
                if (model.kind() == ModelKind::TwoLines) {
                    for (double slope : {model.slope_p(), model.slope_q()}) {
                        if (slope == 0.0) continue;
                        const double e =
                            2.0 * (slope == model.slope_p()
                                       ? model.alpha_p()
                                       : model.alpha_q()) +
                            1.0;
                        outer.push_back({-x1lo / slope, e});
                        outer.push_back({-x1hi / slope, e});
                    }
                }
                m = quad::integrate2d(
                    [&model](double x1, double x2) {
                        return model.density2(x1, x2);
                    },
                    x1lo, x1hi, x2lo, x2hi, cell_tol_2d, inner_cuts, outer);
            } else {
                double acc = 0.0;
                const double m1 = 0.5 * (x1lo + x1hi), m2 = 0.5 * (x2lo + x2hi);
                const double hw = 0.5 * delta;
                for (int i = 0; i < kGl7; ++i) {
                    double row = 0.0;
                    for (int j = 0; j < kGl7; ++j)
                        row += kGl7Weights[j] *
                               model.density2(m1 + hw * kGl7Nodes[i],
                                              m2 + hw * kGl7Nodes[j]);
                    acc += kGl7Weights[i] * row;
                }
                m = acc * hw * hw;
            }
            mass[static_cast<std::size_t>(k1) * N + k2] = m;
            mass[static_cast<std::size_t>(N - 1 - k1) * N + (N - 1 - k2)] = m;
        }
    }
    return mass;
}

const std::vector<double>& mass_grid(const SpectralModel& model, long N) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<std::vector<double>>> cache;
    std::ostringstream key;
    key << model.describe() << "#" << N;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key.str());
        if (it != cache.end()) return *it->second;
    }
    auto built = std::make_shared<std::vector<double>>(build_masses(model, N));
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(key.str(), std::move(built));
    return *it->second;
}

FieldMeta make_meta(const SpectralModel& model, long n, long margin, int kappa,
                    const RngStream& rng, const char* method) {
    FieldMeta meta;
    meta.model = model.describe();
    meta.n = n;
    meta.margin = margin;
    meta.kappa = kappa;
    meta.seed = rng.seed();
    meta.stream = rng.stream();
    meta.method = method;
    return meta;
}

}  // namespace

FieldSample simulate_spectral(const SpectralModel& model, long n, long margin,
                              int kappa, RngStream rng) {
    const int d = model.dimension();
    if (d < 1 || d > 2)
        throw ContractError("spectral synthesis supports d in {1, 2}");
    if (n < 1 || margin < 0 || kappa < 1)
        throw ContractError("bad synthesis window");
    const long N = grid_points(n, margin, kappa);
    const long cells = d == 1 ? N : N * N;
    if (cells > kMaxGridCells)
        throw ResourceError("frequency grid exceeds memory budget");

    const std::vector<double>& mass = mass_grid(model, N);
    const double delta = kTwoPi / static_cast<double>(N);
    const std::complex<double> ihalf(0.0, delta * 0.5 - kPi);

    std::vector<std::complex<double>> coeff(static_cast<std::size_t>(cells));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (d == 1) {
        for (long k = 0; k < N / 2; ++k) {
            const double g1 = rng.next_normal();
            const double g2 = rng.next_normal();
            const std::complex<double> z(g1 * inv_sqrt2, g2 * inv_sqrt2);
            const double a = std::sqrt(mass[static_cast<std::size_t>(k)]);
            coeff[static_cast<std::size_t>(k)] = a * z;
            coeff[static_cast<std::size_t>(N - 1 - k)] = a * std::conj(z);
        }
        fft::transform1(coeff.data(), N, +1);
    } else {
        for (long k1 = 0; k1 < N / 2; ++k1) {
            for (long k2 = 0; k2 < N; ++k2) {
                const double g1 = rng.next_normal();
                const double g2 = rng.next_normal();
                const std::complex<double> z(g1 * inv_sqrt2, g2 * inv_sqrt2);
                const double a =
                    std::sqrt(mass[static_cast<std::size_t>(k1) * N + k2]);
                coeff[static_cast<std::size_t>(k1) * N + k2] = a * z;
                coeff[static_cast<std::size_t>(N - 1 - k1) * N +
                      (N - 1 - k2)] = a * std::conj(z);
            }
        }
        fft::transform2(coeff.data(), N, N, +1);
    }

    const long side = n + 2 * margin;
    auto wrap = [N](long j) {
        long r = j % N;
        if (r < 0) r += N;
        return r;
    };
    std::vector<double> values;
    double max_im = 0.0;
    long double sumsq = 0.0L;
    if (d == 1) {
        values.resize(static_cast<std::size_t>(side));
        for (long j = 1 - margin; j <= n + margin; ++j) {
            const std::complex<double> phase =
                std::exp(ihalf * static_cast<double>(j));
            const std::complex<double> v =
                phase * coeff[static_cast<std::size_t>(wrap(j))];
            values[static_cast<std::size_t>(j - (1 - margin))] = v.real();
            max_im = std::max(max_im, std::abs(v.imag()));
            sumsq += v.real() * v.real();
        }
    } else {
        values.resize(static_cast<std::size_t>(side) * side);
        std::vector<std::complex<double>> phases(static_cast<std::size_t>(side));
        for (long j = 1 - margin; j <= n + margin; ++j)
            phases[static_cast<std::size_t>(j - (1 - margin))] =
                std::exp(ihalf * static_cast<double>(j));
        for (long j1 = 1 - margin; j1 <= n + margin; ++j1) {
            const long r1 = wrap(j1);
            for (long j2 = 1 - margin; j2 <= n + margin; ++j2) {
                const std::complex<double> v =
                    phases[static_cast<std::size_t>(j1 - (1 - margin))] *
                    phases[static_cast<std::size_t>(j2 - (1 - margin))] *
                    coeff[static_cast<std::size_t>(r1) * N + wrap(j2)];
                values[static_cast<std::size_t>(j1 - (1 - margin)) * side +
                       (j2 - (1 - margin))] = v.real();
                max_im = std::max(max_im, std::abs(v.imag()));
                sumsq += v.real() * v.real();
            }
        }
    }
    const double rms = std::sqrt(static_cast<double>(
        sumsq / static_cast<long double>(values.size())));
    if (max_im > 1e-8 * std::max(rms, 1e-300))
        throw SymmetryError("Hermitian symmetry violated in synthesis");

    return FieldSample(d, n, margin, std::move(values),
                       make_meta(model, n, margin, kappa, rng, "spectral"));
}

namespace {

using FactorPtr = std::shared_ptr<Eigen::MatrixXd>;

FactorPtr exact_factor(const SpectralModel& model, long n, long margin) {
    static std::mutex mutex;
    static std::map<std::string, FactorPtr> cache;
    std::ostringstream key;
    key << model.describe() << "#n" << n << "#m" << margin;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key.str());
        if (it != cache.end()) return it->second;
    }

    const int d = model.dimension();
    const long side = n + 2 * margin;
    const long size = d == 1 ? side : side * side;
    LagCovariance cov(model, side - 1);
    Eigen::MatrixXd c(size, size);
    if (d == 1) {
        for (long a = 0; a < side; ++a)
            for (long b = 0; b < side; ++b) c(a, b) = cov.at(a - b);
    } else {
        for (long a = 0; a < size; ++a) {
            const long a1 = a / side, a2 = a % side;
            for (long b = 0; b < size; ++b) {
                const long b1 = b / side, b2 = b % side;
                c(a, b) = cov.at(a1 - b1, a2 - b2);
            }
        }
    }

    const double jitter = 1e-10 * c(0, 0);
    Eigen::LLT<Eigen::MatrixXd> llt(c);
    if (llt.info() != Eigen::Success) {
        c.diagonal().array() += jitter;
        llt.compute(c);
        if (llt.info() != Eigen::Success)
            throw Error(
                "exact sampler: covariance matrix is not positive definite "
                "beyond 1e-10 jitter (covariance computation bug?)");
    }
    auto factor = std::make_shared<Eigen::MatrixXd>(llt.matrixL());
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key.str(), factor);
    return factor;
}

}  // namespace

FieldSample simulate_exact(const SpectralModel& model, long n, long margin,
                           RngStream rng) {
    const int d = model.dimension();
    if (d < 1 || d > 2) throw ContractError("exact sampler supports d in {1, 2}");
    const long side = n + 2 * margin;
    const long size = d == 1 ? side : side * side;
    if (size > kMaxExactWindow)
        throw ContractError("exact sampler limited to (n+2m)^d <= 4096");

    FactorPtr factor = exact_factor(model, n, margin);
    Eigen::VectorXd z(size);
    for (long i = 0; i < size; ++i) z(i) = rng.next_normal();
    Eigen::VectorXd x = (*factor) * z;
    std::vector<double> values(x.data(), x.data() + size);
    return FieldSample(d, n, margin, std::move(values),
                       make_meta(model, n, margin, 0, rng, "exact"));
}

double spectral_grid_covariance(const SpectralModel& model, long n,
                                long margin, int kappa,
                                std::span<const long> h) {
    const int d = model.dimension();
    if (static_cast<int>(h.size()) != d)
        throw ContractError("lag dimension mismatch");
    const long N = grid_points(n, margin, kappa);
    const std::vector<double>& mass = mass_grid(model, N);
    const double delta = kTwoPi / static_cast<double>(N);
    long double acc = 0.0L;
    if (d == 1) {
        const double hd = static_cast<double>(h[0]);
        for (long k = 0; k < N; ++k) {
            const double x = -kPi + (static_cast<double>(k) + 0.5) * delta;
            acc += mass[static_cast<std::size_t>(k)] * std::cos(hd * x);
        }
    } else {
        const double h1 = static_cast<double>(h[0]);
        const double h2 = static_cast<double>(h[1]);
        for (long k1 = 0; k1 < N; ++k1) {
            const double x1 = -kPi + (static_cast<double>(k1) + 0.5) * delta;
            for (long k2 = 0; k2 < N; ++k2) {
                const double x2 =
                    -kPi + (static_cast<double>(k2) + 0.5) * delta;
                acc += mass[static_cast<std::size_t>(k1) * N + k2] *
                       std::cos(h1 * x1 + h2 * x2);
            }
        }
    }
    return static_cast<double>(acc);
}

}  // namespace lrgf
