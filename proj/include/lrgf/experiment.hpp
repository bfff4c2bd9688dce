#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrgf/io.hpp"
#include "lrgf/quadratic_form.hpp"
#include "lrgf/spectral_model.hpp"
#include "lrgf/stats.hpp"

namespace lrgf {

enum class SamplerKind { Spectral, Exact };
enum class StatisticKind { QuadraticForm, EmpiricalCovariance };

struct ExperimentConfig {
    SpectralModel model = SpectralModel::white_noise(1);
    StatisticKind statistic = StatisticKind::EmpiricalCovariance;
    std::optional<QuadraticFormSpec> spec;  // QuadraticForm statistic
    std::vector<long> lag;                  // EmpiricalCovariance statistic
    std::vector<long> ladder{1024};
    long replicates = 2000;
    long margin = 0;
    int kappa = 4;
    SamplerKind sampler = SamplerKind::Spectral;
    std::uint64_t seed = 1;
    double nu = 0.5;  // statistic scaled by n^nu
    int threads = 1;  // speed only; excluded from the config hash

    void validate() const;  // throws ConfigError
};

ExperimentConfig config_from_json(const io::Json& j);
io::Json config_to_json(const ExperimentConfig& config);

// The normalization the paper's results prescribe for this (model,
// statistic), with the inequality that justifies it; run_experiment refuses
// a declared nu from the wrong regime (AdmissibilityError naming the
// inequality).
struct RegimeRule {
    double nu;
    std::string regime;      // "central" | "non-central" | "one-direction"
    std::string inequality;  // the defining inequality, for messages
};
RegimeRule regime_rule(const SpectralModel& model, double beta,
                       std::span<const long> lag);

struct PerNStats {
    long n = 0;
    MomentSummary moments;   // of the n^nu-scaled centered statistic
    double ks_distance = 0.0;
    double raw_variance = 0.0;       // MC variance before scaling
    double wick_variance = 0.0;      // exact, when a fast path exists
    bool has_wick = false;
};

struct ExperimentReport {
    std::string config_hash;
    io::Json config;
    std::string version;
    std::vector<PerNStats> per_n;
    SlopeFit slope;  // log Var(raw statistic) vs log n (>= 3 ladder points)
    bool has_slope = false;
    std::string reference_kind;  // "clt_variance" | "double_ito_second_moment"
                                 // | "sigma2_one_direction" | "none"
    double reference_value = 0.0;
    // per-replicate scaled statistics, per ladder point (for dumps)
    std::vector<std::vector<double>> samples;

    io::Json to_json() const;
    std::string per_n_csv() const;
    std::string samples_csv() const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace lrgf
