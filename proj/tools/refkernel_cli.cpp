// Command line front end: protocol runs over CSV datasets, single-model
// fit/score, and the embedded self check.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid flags or config,
// 3 missing or unreadable dataset, 4 model file problem, 5 dimension
// mismatch between a model and its input.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "refkernel/dataset.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/experiment.hpp"
#include "refkernel/model_io.hpp"
#include "refkernel/pipeline.hpp"
#include "refkernel/self_check.hpp"
#include "refkernel/standardize.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitDataset = 3;
constexpr int kExitModel = 4;
constexpr int kExitDimension = 5;

constexpr std::uint64_t kDefaultSeed = 1;

// Seed priority: explicit flag, then config value (when the command has
// one), then the REFKERNEL_SEED environment variable, then 1.
std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("REFKERNEL_SEED");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0') {
        throw refkernel::FormatError("REFKERNEL_SEED is not an integer: " + std::string(v));
    }
    return parsed;
}

int run_experiment_command(const std::string& config_path,
                           const std::vector<std::string>& overrides, const std::string& out_dir,
                           std::optional<std::uint64_t> seed_flag, std::size_t jobs) {
    refkernel::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = refkernel::parse_config_file(config_path);
        }
        for (const std::string& assignment : overrides) {
            refkernel::apply_override(cfg, assignment);
        }
        if (seed_flag) {
            cfg.master_seed = *seed_flag;
        } else if (!cfg.master_seed_set) {
            if (const auto env = env_seed()) cfg.master_seed = *env;
        }
        refkernel::validate_config(cfg);
    } catch (const refkernel::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    for (const std::string& ds : cfg.datasets) {
        if (!std::filesystem::exists(ds)) {
            std::cerr << "dataset not found: " << ds << "\n";
            return kExitDataset;
        }
    }

    try {
        std::filesystem::create_directories(out_dir);
        const auto records = refkernel::run_experiment(cfg, jobs, &std::cerr);
        const std::string csv_path = out_dir + "/results.csv";
        const std::string md_path = out_dir + "/results.md";
        refkernel::write_results_csv(records, csv_path);
        refkernel::write_results_md(records, md_path);
        std::cout << csv_path << "\n" << md_path << "\n";
        return 0;
    } catch (const refkernel::FormatError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const refkernel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int fit_command(const std::string& data_path, const std::string& negatives_path,
                const std::string& method_name, const std::string& path_name,
                const std::string& case_name, const std::string& kernel_name, double sigma,
                double scale, double c_value, double nu_value, double eigen_tol,
                bool no_standardize, std::optional<std::uint64_t> seed_flag,
                const std::string& model_path) {
    using namespace refkernel;

    ModelSpec spec;
    try {
        spec.method = method_from_label(method_name);
        spec.path = path_from_label(path_name);
        spec.ref_case = case_from_label(case_name);
        if (kernel_name == "rbf") {
            spec.kernel = KernelKind::rbf;
        } else if (kernel_name == "linear") {
            spec.kernel = KernelKind::linear;
        } else {
            throw Error("unknown kernel: " + kernel_name);
        }
        spec.eigen_tol = eigen_tol;
        if (spec.method == Method::svdd) {
            if (!(c_value > 0.0)) throw Error("svdd needs --c greater than zero");
            spec.hyper = c_value;
        } else {
            if (!(nu_value > 0.0)) throw Error("ocsvm needs --nu in (0, 1]");
            spec.hyper = nu_value;
        }
    } catch (const Error& e) {
        std::cerr << "invalid flags: " << e.what() << "\n";
        return kExitBadConfig;
    }

    if (!std::filesystem::exists(data_path)) {
        std::cerr << "dataset not found: " << data_path << "\n";
        return kExitDataset;
    }
    if (!negatives_path.empty() && !std::filesystem::exists(negatives_path)) {
        std::cerr << "dataset not found: " << negatives_path << "\n";
        return kExitDataset;
    }

    try {
        const DenseMatrix raw = load_features_csv(data_path);
        DenseMatrix raw_neg;
        if (!negatives_path.empty()) raw_neg = load_features_csv(negatives_path);

        const NormStats norm =
            no_standardize ? NormStats::identity(raw.rows()) : compute_norm_stats(raw);
        const DenseMatrix train = apply_norm(norm, raw);
        DenseMatrix neg;
        if (raw_neg.cols() > 0) neg = apply_norm(norm, raw_neg);

        if (spec.kernel == KernelKind::rbf) {
            spec.sigma = sigma > 0.0 ? sigma : sigma_from_scale(train, scale);
        }

        std::uint64_t seed = kDefaultSeed;
        if (seed_flag) {
            seed = *seed_flag;
        } else if (const auto env = env_seed()) {
            seed = *env;
        }
        Rng rng = make_rng(seed, "cli-fit");

        const OneClassModel model =
            fit_one_class(spec, train, neg.cols() > 0 ? &neg : nullptr, rng, norm);
        save_model(model, model_path);

        std::cerr << "fit: n=" << model.train.cols() << " rank=" << model.rank
                  << " support=" << model.support_idx.size() << " threshold=" << model.threshold
                  << " kkt_gap=" << model.kkt_gap << "\n";
        std::cout << model_path << "\n";
        return 0;
    } catch (const refkernel::MissingNegatives& e) {
        std::cerr << "invalid flags: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const refkernel::FormatError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const refkernel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int score_command(const std::string& model_path, const std::string& data_path) {
    using namespace refkernel;
    if (!std::filesystem::exists(model_path)) {
        std::cerr << "model not found: " << model_path << "\n";
        return kExitModel;
    }
    if (!std::filesystem::exists(data_path)) {
        std::cerr << "dataset not found: " << data_path << "\n";
        return kExitDataset;
    }
    try {
        const OneClassModel model = load_model(model_path);
        const DenseMatrix raw = load_features_csv(data_path);
        std::vector<Decision> decisions;
        try {
            decisions = decide_raw(model, raw);
        } catch (const InvalidShape& e) {
            std::cerr << "dimension mismatch: " << e.what() << "\n";
            return kExitDimension;
        }
        std::printf("index,score,is_target\n");
        for (std::size_t i = 0; i < decisions.size(); ++i) {
            std::printf("%zu,%.17g,%d\n", i, decisions[i].score,
                        decisions[i].is_target ? 1 : 0);
        }
        return 0;
    } catch (const refkernel::ModelFormatError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    } catch (const refkernel::FormatError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const refkernel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int self_check_command(std::optional<std::uint64_t> seed_flag) {
    std::uint64_t seed = kDefaultSeed;
    if (seed_flag) {
        seed = *seed_flag;
    } else if (const auto env = env_seed()) {
        seed = *env;
    }
    const auto results = refkernel::run_self_check(seed);
    bool all_pass = true;
    for (const auto& res : results) {
        std::printf("[%s] %s: %s\n", res.pass ? " ok " : "fail", res.name.c_str(),
                    res.detail.c_str());
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reference kernel one-class toolkit"};
    app.require_subcommand(1);

    // run-experiment
    auto* run = app.add_subcommand("run-experiment", "run the full evaluation protocol");
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_flag;
    std::size_t jobs = 1;
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--set", overrides, "config override key=value (repeatable)");
    run->add_option("--out", out_dir, "output directory for results.csv and results.md");
    run->add_option("--seed", seed_flag, "master seed");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    // fit
    auto* fit = app.add_subcommand("fit", "fit one model on a CSV of target samples");
    std::string fit_data, fit_negatives, fit_method = "svdd", fit_path = "kernel";
    std::string fit_case = "base", fit_kernel = "rbf", fit_model_out;
    double fit_sigma = 0.0, fit_scale = 1.0, fit_c = 0.0, fit_nu = 0.0, fit_tol = 1e-6;
    bool fit_no_standardize = false;
    std::optional<std::uint64_t> fit_seed;
    fit->add_option("--data", fit_data, "training CSV, numeric columns with a header")
        ->required();
    fit->add_option("--negatives", fit_negatives, "negative pool CSV for the augmented cases");
    fit->add_option("--method", fit_method, "svdd or ocsvm");
    fit->add_option("--path", fit_path, "kernel or mapping");
    fit->add_option("--case", fit_case, "base or reference case 1..7");
    fit->add_option("--kernel", fit_kernel, "rbf or linear");
    fit->add_option("--sigma", fit_sigma, "rbf bandwidth; overrides --scale");
    fit->add_option("--scale", fit_scale, "bandwidth scale s for sigma = sqrt(s * d_aver)");
    fit->add_option("--c", fit_c, "svdd box parameter");
    fit->add_option("--nu", fit_nu, "ocsvm margin parameter");
    fit->add_option("--eigen-tol", fit_tol, "eigenvalue cutoff");
    fit->add_flag("--no-standardize", fit_no_standardize, "skip feature standardization");
    fit->add_option("--seed", fit_seed, "seed for random reference draws");
    fit->add_option("--out", fit_model_out, "model file to write")->required();

    // score
    auto* score = app.add_subcommand("score", "score a CSV against a fitted model");
    std::string score_model, score_data;
    score->add_option("--model", score_model, "model file from fit")->required();
    score->add_option("--data", score_data, "samples CSV, numeric columns with a header")
        ->required();

    // self-check
    auto* check = app.add_subcommand("self-check", "run the embedded property suite");
    std::optional<std::uint64_t> check_seed;
    check->add_option("--seed", check_seed, "seed for the randomized instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    try {
        if (run->parsed()) {
            return run_experiment_command(config_path, overrides, out_dir, seed_flag, jobs);
        }
        if (fit->parsed()) {
            return fit_command(fit_data, fit_negatives, fit_method, fit_path, fit_case,
                               fit_kernel, fit_sigma, fit_scale, fit_c, fit_nu, fit_tol,
                               fit_no_standardize, fit_seed, fit_model_out);
        }
        if (score->parsed()) {
            return score_command(score_model, score_data);
        }
        if (check->parsed()) {
            return self_check_command(check_seed);
        }
    } catch (const refkernel::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const refkernel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitBadConfig;
}
