#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "refkernel/pipeline.hpp"
#include "refkernel/task.hpp"

namespace refkernel {

/// Where cross-validation gets its negative validation samples: the task's
/// own negative training split, or pseudo-negatives drawn uniformly from the
/// bounding box of the fold's training samples.
enum class CvNegatives { train_split, pseudo_uniform };

const char* cv_negatives_label(CvNegatives v);
CvNegatives cv_negatives_from_label(const std::string& s);

struct Grids {
    std::vector<double> s{0.1, 1.0, 10.0, 100.0, 1000.0};
    std::vector<double> c{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    std::vector<double> nu{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
};

struct ExperimentConfig {
    std::vector<std::string> datasets;      // CSV paths
    std::string label_column = "label";
    std::vector<std::string> task_filter;   // empty: every task of every dataset
    std::vector<Method> methods{Method::svdd, Method::ocsvm};
    std::vector<PathKind> paths{PathKind::kernel, PathKind::mapping};
    std::vector<std::string> cases{"base", "1", "2", "3", "4", "5", "6", "7"};
    Grids grids;
    std::size_t splits = 5;
    std::size_t repeats = 5;
    std::size_t cv_folds = 5;
    double eigen_tol = 1e-6;
    double train_ratio = 0.7;
    std::uint64_t master_seed = 1;
    bool master_seed_set = false; // true once a file or override assigned it
    CvNegatives cv_negatives = CvNegatives::train_split;
};

// Flat key=value file; '#' starts a comment, blank lines are skipped. Unknown
// keys and malformed values throw FormatError with the line number.
ExperimentConfig parse_config_file(const std::string& path);

// One "key=value" override, same key set as the file. Throws FormatError.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Cross-field checks (nonempty grids and lists, folds >= 2, tol > 0, ...).
// Grids are sorted ascending and deduplicated, so grid-search tie-breaking
// toward smaller values is iteration order. Throws FormatError.
void validate_config(ExperimentConfig& cfg);

/// Chosen hyperparameters of one run, by fold-averaged validation Gmean with
/// ties broken toward the smaller bandwidth scale, then the smaller C or nu.
struct ChosenHyper {
    double s = 0.0;
    double hyper = 0.0;     // C or nu
    double cv_score = 0.0;  // fold-averaged Gmean at the chosen point
};

ChosenHyper cross_validate(const Task& task, Method method, PathKind path,
                           const std::optional<ReferenceCase>& ref_case, const Grids& grids,
                           std::size_t folds, CvNegatives negatives, double eigen_tol,
                           Rng& rng);

struct RunOutcome {
    std::size_t split = 0;
    std::size_t repeat = 0;
    bool failed = false;
    std::string failure;    // non-empty when failed
    double gmean = 0.0;
    double s = 0.0;
    double hyper = 0.0;
    std::size_t rank = 0;
};

// Full protocol for one (task, method, path, case, repeat): cross-validate,
// refit on the whole training block, evaluate on the test block. Failures
// are captured in the outcome, not thrown.
RunOutcome run_single(const Task& task, Method method, PathKind path,
                      const std::optional<ReferenceCase>& ref_case,
                      const ExperimentConfig& cfg, Rng& rng);

/// Aggregate over the splits x repeats runs of one table cell.
struct ResultRecord {
    std::string task;
    Method method = Method::svdd;
    PathKind path = PathKind::kernel;
    std::string case_name; // "base" or "1".."7"
    double gmean_mean = 0.0;
    double gmean_std = 0.0; // population std over successful runs
    double rank_mean = 0.0;
    std::size_t runs = 0;     // successful runs
    std::size_t failures = 0;
    std::vector<RunOutcome> run_log;
};

// Runs every (task, method, path, case) combination of the config over
// splits x repeats runs. Work items run on `jobs` threads; results do not
// depend on the thread count. Progress lines go to `progress` when non-null.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1,
                                         std::ostream* progress = nullptr);

void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path);
void write_results_md(const std::vector<ResultRecord>& records, const std::string& path);

} // namespace refkernel
