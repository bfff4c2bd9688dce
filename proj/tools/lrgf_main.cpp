#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "lrgf/condition_h.hpp"
#include "lrgf/covariance.hpp"
#include "lrgf/double_ito.hpp"
#include "lrgf/experiment.hpp"
#include "lrgf/io.hpp"
#include "lrgf/simulate.hpp"
#include "lrgf/version.hpp"

namespace {

using lrgf::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitAdmissibility = 2;
constexpr int kExitResource = 3;
constexpr int kExitConfig = 4;

Json load_json(const std::string& path) {
    try {
        return Json::parse(lrgf::io::read_text_file(path));
    } catch (const Json::exception& e) {
        throw lrgf::ConfigError(std::string("cannot parse ") + path + ": " +
                                e.what());
    }
}

std::filesystem::path out_path(const std::string& dir,
                               const std::string& name) {
    std::filesystem::path p = dir.empty() ? "." : dir;
    std::filesystem::create_directories(p);
    return p / name;
}

struct CommonArgs {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int threads = 1;
    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON input file");
        app->add_option("--seed", seed, "master seed");
        app->add_option("--threads", threads, "worker threads (speed only)");
        app->add_option("--out", out, "output directory");
        app->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
};

int run(int argc, char** argv) {
    CLI::App app{"long-memory Gaussian random fields: simulation and "
                 "quadratic-form statistics"};
    app.set_version_flag("--version", lrgf::kVersion);
    app.require_subcommand(1);

    // simulate: one field realization -> CSV + JSON sidecar
    auto* sim = app.add_subcommand("simulate", "draw one field realization");
    CommonArgs sim_args;
    sim_args.attach(sim);
    long sim_n = 64, sim_margin = 0, sim_stream = 0;
    int sim_kappa = 4;
    std::string sim_method = "spectral";
    sim->add_option("--n", sim_n, "window side");
    sim->add_option("--margin", sim_margin, "margin");
    sim->add_option("--oversample", sim_kappa, "frequency oversampling");
    sim->add_option("--stream", sim_stream, "replicate stream index");
    sim->add_option("--method", sim_method, "spectral|exact")
        ->check(CLI::IsMember({"spectral", "exact"}));

    // covariance: model + lag radius -> CSV
    auto* cov = app.add_subcommand("covariance", "covariance table to CSV");
    CommonArgs cov_args;
    cov_args.attach(cov);
    long cov_radius = 3;
    double cov_tol = 1e-8;
    cov->add_option("--radius", cov_radius, "max |h|");
    cov->add_option("--tol", cov_tol, "quadrature tolerance");

    // check-h: model + spec -> verdict JSON
    auto* checkh = app.add_subcommand("check-h", "integrability verdict");
    CommonArgs checkh_args;
    checkh_args.attach(checkh);
    std::string checkh_mode = "auto";
    checkh->add_option("--mode", checkh_mode, "auto|analytic|numeric")
        ->check(CLI::IsMember({"auto", "analytic", "numeric"}));
    long checkh_base = 1L << 17;
    checkh->add_option("--base-samples", checkh_base,
                       "numeric path base sample count");

    // limit: limit-law sampling -> CSV + JSON metadata
    auto* limit = app.add_subcommand("limit", "sample the limit law");
    CommonArgs limit_args;
    limit_args.attach(limit);
    long limit_m = 512, limit_count = 100000;
    double limit_r = 200.0;
    limit->add_option("--resolution", limit_m, "grid points per axis");
    limit->add_option("--radius", limit_r, "frequency cutoff R");
    limit->add_option("--count", limit_count, "number of samples");

    // experiment: config file -> report
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo ladder");
    CommonArgs exp_args;
    exp_args.attach(exp);
    bool exp_has_seed = false;
    exp->add_flag("--override-seed", exp_has_seed,
                  "use --seed instead of the config seed");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        if (sim_args.config.empty())
            throw lrgf::ConfigError("simulate needs --config MODEL.json");
        const auto model = lrgf::io::model_from_json(load_json(sim_args.config));
        lrgf::RngStream rng(sim_args.seed,
                            static_cast<std::uint64_t>(sim_stream));
        const lrgf::FieldSample field =
            sim_method == "spectral"
                ? lrgf::simulate_spectral(model, sim_n, sim_margin, sim_kappa,
                                          rng)
                : lrgf::simulate_exact(model, sim_n, sim_margin, rng);
        lrgf::io::write_text_file(out_path(sim_args.out, "field.csv").string(),
                                  lrgf::io::field_csv(field));
        lrgf::io::write_text_file(
            out_path(sim_args.out, "field.json").string(),
            lrgf::io::field_sidecar(field).dump(2) + "\n");
        std::cout << "wrote field.csv and field.json\n";
        return kExitOk;
    }

    if (cov->parsed()) {
        if (cov_args.config.empty())
            throw lrgf::ConfigError("covariance needs --config MODEL.json");
        const auto model = lrgf::io::model_from_json(load_json(cov_args.config));
        const auto table = lrgf::covariance_table(model, cov_radius, cov_tol);
        lrgf::io::write_text_file(
            out_path(cov_args.out, "covariance.csv").string(),
            lrgf::io::covariance_table_csv(table));
        std::cout << "wrote covariance.csv\n";
        return kExitOk;
    }

    if (checkh->parsed()) {
        if (checkh_args.config.empty())
            throw lrgf::ConfigError(
                "check-h needs --config with {model, spec}");
        const Json j = load_json(checkh_args.config);
        const auto model = lrgf::io::model_from_json(j.at("model"));
        const auto spec = lrgf::io::spec_from_json(j.at("spec"));
        lrgf::ConditionHMode mode = lrgf::ConditionHMode::Auto;
        if (checkh_mode == "analytic") mode = lrgf::ConditionHMode::Analytic;
        if (checkh_mode == "numeric") mode = lrgf::ConditionHMode::Numeric;
        lrgf::NumericHOptions opts;
        opts.base_samples = checkh_base;
        opts.seed = checkh_args.seed;
        const auto verdict = lrgf::check_condition_h(model, spec, mode, opts);
        Json out;
        switch (verdict.status) {
            case lrgf::ConditionHStatus::HoldsByLemma:
                out["status"] = "holds_by_lemma";
                break;
            case lrgf::ConditionHStatus::FailsLemmaRegion:
                out["status"] = "fails_lemma_region";
                break;
            case lrgf::ConditionHStatus::NumericFinite:
                out["status"] = "numeric_finite";
                break;
            case lrgf::ConditionHStatus::NumericUnstable:
                out["status"] = "numeric_unstable";
                break;
        }
        out["criterion"] = verdict.criterion;
        out["detail"] = verdict.detail;
        if (!verdict.doubling_estimates.empty()) {
            out["estimate"] = verdict.estimate;
            out["std_error"] = verdict.std_error;
            out["drift"] = verdict.drift;
            out["doubling_estimates"] = verdict.doubling_estimates;
        }
        const std::string text = out.dump(2) + "\n";
        lrgf::io::write_text_file(
            out_path(checkh_args.out, "verdict.json").string(), text);
        std::cout << text;
        return kExitOk;
    }

    if (limit->parsed()) {
        if (limit_args.config.empty())
            throw lrgf::ConfigError("limit needs --config with {model, spec}");
        const Json j = load_json(limit_args.config);
        const auto model = lrgf::io::model_from_json(j.at("model"));
        const auto spec = lrgf::io::spec_from_json(j.at("spec"));
        lrgf::DoubleItoOptions opts;
        opts.resolution = limit_m;
        opts.radius = limit_r;
        opts.count = limit_count;
        opts.seed = limit_args.seed;
        opts.threads = limit_args.threads;
        const auto est = lrgf::sample_double_ito(model, spec, opts);
        lrgf::io::write_text_file(
            out_path(limit_args.out, "limit_samples.csv").string(),
            lrgf::io::samples_csv(est.samples));
        Json meta;
        meta["resolution"] = est.resolution;
        meta["radius"] = est.radius;
        meta["second_moment"] = est.second_moment;
        meta["tail_bound"] = est.tail_bound;
        meta["count"] = static_cast<long>(est.samples.size());
        meta["seed"] = limit_args.seed;
        lrgf::io::write_text_file(
            out_path(limit_args.out, "limit_meta.json").string(),
            meta.dump(2) + "\n");
        std::cout << "wrote limit_samples.csv and limit_meta.json\n";
        return kExitOk;
    }

    if (exp->parsed()) {
        if (exp_args.config.empty())
            throw lrgf::ConfigError("experiment needs --config CONFIG.json");
        lrgf::ExperimentConfig config =
            lrgf::config_from_json(load_json(exp_args.config));
        if (exp_has_seed) config.seed = exp_args.seed;
        config.threads = exp_args.threads;
        const auto report = lrgf::run_experiment(config);
        lrgf::io::write_text_file(
            out_path(exp_args.out, "report.json").string(),
            report.to_json().dump(2) + "\n");
        if (exp_args.format == "csv") {
            lrgf::io::write_text_file(
                out_path(exp_args.out, "per_n.csv").string(),
                report.per_n_csv());
            lrgf::io::write_text_file(
                out_path(exp_args.out, "samples.csv").string(),
                report.samples_csv());
        }
        std::cout << "wrote report.json"
                  << (exp_args.format == "csv" ? ", per_n.csv, samples.csv"
                                               : "")
                  << "\n";
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lrgf::AdmissibilityError& e) {
        std::cerr << "admissibility refusal: " << e.what() << "\n";
        return kExitAdmissibility;
    } catch (const lrgf::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const lrgf::QuadratureBudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitResource;
    } catch (const lrgf::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const lrgf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
