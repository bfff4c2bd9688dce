#include "lrgf/experiment.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "lrgf/condition_h.hpp"
#include "lrgf/covariance.hpp"
#include "lrgf/double_ito.hpp"
#include "lrgf/limit_laws.hpp"
#include "lrgf/simulate.hpp"
#include "lrgf/version.hpp"
#include "lrgf/wick.hpp"

namespace lrgf {

void ExperimentConfig::validate() const {
    if (ladder.empty()) throw ConfigError("ladder must not be empty");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw ConfigError("ladder must be strictly increasing");
    if (ladder.front() < 2) throw ConfigError("ladder entries must be >= 2");
    if (replicates < 100)
        throw ConfigError("variance claims need replicates >= 100");
    if (margin < 0 || kappa < 1) throw ConfigError("bad margin or oversample");
    if (statistic == StatisticKind::QuadraticForm) {
        if (!spec) throw ConfigError("quadratic-form statistic needs a spec");
        if (spec->dimension() != model.dimension())
            throw ConfigError("spec dimension does not match model");
    } else {
        if (static_cast<int>(lag.size()) != model.dimension())
            throw ConfigError("lag dimension does not match model");
        long need = 0;
        for (long h : lag) need = std::max(need, std::labs(h));
        if (margin < need)
            throw ConfigError("margin must cover the requested lag");
    }
    if (sampler == SamplerKind::Exact) {
        const long side = ladder.back() + 2 * margin;
        const long window = model.dimension() == 1 ? side : side * side;
        if (window > 4096)
            throw ConfigError("exact sampler only if (n+2m)^d <= 4096");
    }
}

ExperimentConfig config_from_json(const io::Json& j) {
    try {
        ExperimentConfig c;
        c.model = io::model_from_json(j.at("model"));
        const std::string stat = j.value("statistic", "empirical_covariance");
        if (stat == "quadratic_form") {
            c.statistic = StatisticKind::QuadraticForm;
            c.spec = io::spec_from_json(j.at("spec"));
        } else if (stat == "empirical_covariance") {
            c.statistic = StatisticKind::EmpiricalCovariance;
            c.lag = j.at("lag").get<std::vector<long>>();
        } else {
            throw ConfigError("unknown statistic kind: " + stat);
        }
        c.ladder = j.at("ladder").get<std::vector<long>>();
        c.replicates = j.at("replicates").get<long>();
        c.margin = j.value("margin", 0L);
        c.kappa = j.value("oversample", 4);
        const std::string sampler = j.value("sampler", "spectral");
        if (sampler == "spectral")
            c.sampler = SamplerKind::Spectral;
        else if (sampler == "exact")
            c.sampler = SamplerKind::Exact;
        else
            throw ConfigError("unknown sampler: " + sampler);
        c.seed = j.value("seed", 1ULL);
        c.nu = j.at("nu").get<double>();
        c.threads = j.value("threads", 1);
        return c;
    } catch (const io::Json::exception& e) {
        throw ConfigError(std::string("bad experiment config: ") + e.what());
    }
}

io::Json config_to_json(const ExperimentConfig& c) {
    io::Json j;
    j["model"] = io::model_to_json(c.model);
    j["statistic"] = c.statistic == StatisticKind::QuadraticForm
                         ? "quadratic_form"
                         : "empirical_covariance";
    if (c.statistic == StatisticKind::QuadraticForm)
        j["spec"] = io::spec_to_json(*c.spec);
    else
        j["lag"] = c.lag;
    j["ladder"] = c.ladder;
    j["replicates"] = c.replicates;
    j["margin"] = c.margin;
    j["oversample"] = c.kappa;
    j["sampler"] = c.sampler == SamplerKind::Spectral ? "spectral" : "exact";
    j["seed"] = c.seed;
    j["nu"] = c.nu;
    j["threads"] = c.threads;
    return j;
}

RegimeRule regime_rule(const SpectralModel& model, double beta,
                       std::span<const long> lag) {
    const double d = static_cast<double>(model.dimension());
    std::ostringstream ineq;
    switch (model.kind()) {
        case ModelKind::WhiteNoise:
            return {d / 2.0, "central", "flat spectrum (f in L2)"};
        case ModelKind::Isotropic:
        case ModelKind::Product: {
            const double s = model.alpha() + beta;
            if (s < -d / 4.0) {
                ineq << "alpha + beta = " << s << " < -d/4 = " << -d / 4.0;
                return {d + 2.0 * model.alpha() + 2.0 * beta, "non-central",
                        ineq.str()};
            }
            ineq << "alpha + beta = " << s << " > -d/4 = " << -d / 4.0;
            return {d / 2.0, "central", ineq.str()};
        }
        case ModelKind::TwoLines: {
            const double s = model.alpha_p() + model.alpha_q() + beta;
            if (s < -0.5) {
                ineq << "alpha_p + alpha_q + beta = " << s << " < -1/2";
                return {2.0 + 2.0 * model.alpha_p() + 2.0 * model.alpha_q() +
                            2.0 * beta,
                        "non-central", ineq.str()};
            }
            ineq << "alpha_p + alpha_q + beta = " << s << " >= -1/2";
            return {1.0, "central", ineq.str()};
        }
        case ModelKind::OneDirection: {
            const double alpha = model.alpha();
            bool off_line = true;
            if (lag.size() == 2) {
                off_line = static_cast<double>(lag[1]) !=
                           model.slope_p() * static_cast<double>(lag[0]);
            }
            if (alpha < -0.25 && off_line) {
                ineq << "alpha = " << alpha << " < -1/4 (one-direction memory, "
                     << "h2 != p h1)";
                return {(4.0 * alpha + 3.0) / 2.0, "one-direction", ineq.str()};
            }
            ineq << "alpha = " << alpha << " > -1/4 (f in L2)";
            return {1.0, "central", ineq.str()};
        }
    }
    throw ContractError("unknown model kind");
}

namespace {

double reference_covariance(const ExperimentConfig& c) {
    if (c.model.kind() == ModelKind::OneDirection) {
        const SpectralModel& m = c.model;
        return covariance_one_direction(
            m.slope_p(), [&m](double u) { return m.ftilde(u); }, c.lag[0],
            c.lag[1], 1e-10, {{0.0, 2.0 * m.alpha()}});
    }
    if (c.model.dimension() == 1) return covariance(c.model, c.lag[0], 1e-10);
    return covariance(c.model, c.lag[0], c.lag[1], 1e-9);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();

    const double beta =
        config.statistic == StatisticKind::QuadraticForm ? config.spec->beta()
                                                         : 0.0;
    const RegimeRule rule = regime_rule(
        config.model, beta,
        std::span<const long>(config.lag.data(), config.lag.size()));
    if (std::abs(config.nu - rule.nu) > 1e-9) {
        std::ostringstream msg;
        msg << "declared normalization n^" << config.nu
            << " is not admissible: the " << rule.regime
            << " regime applies because " << rule.inequality
            << "; expected nu = " << rule.nu;
        throw AdmissibilityError(msg.str());
    }
    if (rule.regime == "non-central") {
        // Non-central normalization needs the integrability condition.
        const QuadraticFormSpec gate_spec =
            config.statistic == StatisticKind::QuadraticForm
                ? *config.spec
                : QuadraticFormSpec::covariance_lag(
                      config.model.dimension(),
                      std::span<const long>(config.lag.data(),
                                            config.lag.size()));
        const auto verdict =
            check_condition_h(config.model, gate_spec, ConditionHMode::Analytic);
        if (verdict.status != ConditionHStatus::HoldsByLemma)
            throw AdmissibilityError(
                "non-central normalization refused: integrability condition "
                "not established (" +
                verdict.detail + ")");
    }

    // Centering reference: r(h) or E[Q_n] per ladder point.
    double rh = 0.0;
    if (config.statistic == StatisticKind::EmpiricalCovariance)
        rh = reference_covariance(config);

    ExperimentReport report;
    report.config = config_to_json(config);
    {
        io::Json hashable = report.config;
        hashable.erase("threads");
        report.config_hash = io::fnv1a_hex(hashable.dump());
    }
    report.version = kVersion;

    const bool fast_cov =
        config.model.dimension() == 1
            ? (config.model.kind() != ModelKind::TwoLines &&
               config.model.has_constant_l1())
            : (config.model.kind() == ModelKind::OneDirection ||
               config.model.kind() == ModelKind::WhiteNoise ||
               (config.model.kind() == ModelKind::Product &&
                config.model.has_constant_l1()));

    for (long n : config.ladder) {
        std::vector<double> scaled(static_cast<std::size_t>(config.replicates));
        double center = rh;
        if (config.statistic == StatisticKind::QuadraticForm)
            center = expected_q(config.model, *config.spec, n, 1e-10);
        const double scale = std::pow(static_cast<double>(n), config.nu);

        std::atomic<long> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]() {
            try {
                for (;;) {
                    const long r = next.fetch_add(1);
                    if (r >= config.replicates) return;
                    RngStream rng(config.seed,
                                  static_cast<std::uint64_t>(r));
                    const FieldSample field =
                        config.sampler == SamplerKind::Spectral
                            ? simulate_spectral(config.model, n, config.margin,
                                                config.kappa, rng)
                            : simulate_exact(config.model, n, config.margin,
                                             rng);
                    double value;
                    if (config.statistic == StatisticKind::QuadraticForm) {
                        value = quadratic_form(field, *config.spec);
                    } else {
                        value = empirical_cov(
                            field, std::span<const long>(config.lag.data(),
                                                         config.lag.size()));
                    }
                    scaled[static_cast<std::size_t>(r)] =
                        (value - center) * scale;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(config.replicates);
            }
        };
        const int nthreads = std::max(1, config.threads);
        if (nthreads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);

        PerNStats row;
        row.n = n;
        row.moments = summarize_moments(scaled);
        row.ks_distance = ks_distance_fitted_normal(scaled);
        row.raw_variance = row.moments.variance / (scale * scale);
        if (fast_cov) {
            if (config.statistic == StatisticKind::QuadraticForm)
                row.wick_variance =
                    wick_variance_qn(config.model, *config.spec, n);
            else
                row.wick_variance = wick_variance_rhat(
                    config.model,
                    std::span<const long>(config.lag.data(),
                                          config.lag.size()),
                    n);
            row.has_wick = true;
        }
        report.per_n.push_back(row);
        report.samples.push_back(std::move(scaled));
    }

    if (report.per_n.size() >= 3) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : report.per_n)
            pts.emplace_back(static_cast<double>(row.n), row.raw_variance);
        report.slope = estimate_scaling_exponent(pts);
        report.has_slope = true;
    }

    // Theoretical reference for the normalized statistic's variance.
    try {
        if (rule.regime == "central") {
            const QuadraticFormSpec ref_spec =
                config.statistic == StatisticKind::QuadraticForm
                    ? *config.spec
                    : QuadraticFormSpec::covariance_lag(
                          config.model.dimension(),
                          std::span<const long>(config.lag.data(),
                                                config.lag.size()));
            report.reference_value = clt_variance(config.model, ref_spec);
            report.reference_kind = "clt_variance";
        } else if (rule.regime == "non-central") {
            DoubleItoOptions opts;
            opts.count = 0;  // only the grid second moment is needed
            if (config.model.dimension() == 2) {
                opts.resolution = 128;
                opts.radius = 50.0;
            }
            const QuadraticFormSpec ref_spec =
                config.statistic == StatisticKind::QuadraticForm
                    ? *config.spec
                    : QuadraticFormSpec::covariance_lag(
                          config.model.dimension(),
                          std::span<const long>(config.lag.data(),
                                                config.lag.size()));
            DoubleItoSampler sampler(config.model, ref_spec, opts);
            report.reference_value = sampler.second_moment();
            report.reference_kind = "double_ito_second_moment";
        } else {
            const auto est = sigma2_one_direction(
                config.model.alpha(),
                static_cast<long>(std::lround(config.model.slope_p())),
                config.model.ftilde_scale());
            report.reference_value = est.value;
            report.reference_kind = "sigma2_one_direction";
        }
    } catch (const Error&) {
        report.reference_kind = "none";
        report.reference_value = 0.0;
    }
    return report;
}

io::Json ExperimentReport::to_json() const {
    io::Json j;
    j["config_hash"] = config_hash;
    j["version"] = version;
    j["config"] = config;
    io::Json rows = io::Json::array();
    for (const auto& row : per_n) {
        io::Json r;
        r["n"] = row.n;
        r["mean"] = row.moments.mean;
        r["mean_se"] = row.moments.mean_se;
        r["var"] = row.moments.variance;
        r["var_se"] = row.moments.variance_se;
        r["skew"] = row.moments.skewness;
        r["skew_se"] = row.moments.skewness_se;
        r["exkurt"] = row.moments.excess_kurtosis;
        r["exkurt_se"] = row.moments.excess_kurtosis_se;
        r["ks"] = row.ks_distance;
        r["raw_var"] = row.raw_variance;
        if (row.has_wick) r["wick_var"] = row.wick_variance;
        rows.push_back(r);
    }
    j["per_n"] = rows;
    if (has_slope) {
        j["slope"] = io::Json{{"value", slope.slope},
                              {"half_width", slope.half_width}};
    }
    j["reference"] = io::Json{{"kind", reference_kind},
                              {"value", reference_value}};
    return j;
}

std::string ExperimentReport::per_n_csv() const {
    std::ostringstream os;
    os << "n,mean,mean_se,var,var_se,skew,skew_se,exkurt,exkurt_se,ks,"
          "raw_var,wick_var\n";
    for (const auto& row : per_n) {
        os << row.n << "," << io::format_double(row.moments.mean) << ","
           << io::format_double(row.moments.mean_se) << ","
           << io::format_double(row.moments.variance) << ","
           << io::format_double(row.moments.variance_se) << ","
           << io::format_double(row.moments.skewness) << ","
           << io::format_double(row.moments.skewness_se) << ","
           << io::format_double(row.moments.excess_kurtosis) << ","
           << io::format_double(row.moments.excess_kurtosis_se) << ","
           << io::format_double(row.ks_distance) << ","
           << io::format_double(row.raw_variance) << ",";
        if (row.has_wick) os << io::format_double(row.wick_variance);
        os << "\n";
    }
    return os.str();
}

std::string ExperimentReport::samples_csv() const {
    std::ostringstream os;
    os << "replicate,n,statistic,value\n";
    const char* name = config.contains("spec") ? "qform_centered_scaled"
                                               : "rhat_centered_scaled";
    for (std::size_t ni = 0; ni < samples.size(); ++ni) {
        const long n = per_n[ni].n;
        for (std::size_t r = 0; r < samples[ni].size(); ++r)
            os << r << "," << n << "," << name << ","
               << io::format_double(samples[ni][r]) << "\n";
    }
    return os.str();
}

}  // namespace lrgf
