#include "refkernel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Fold {
    DenseMatrix train;      // fold training columns
    DenseMatrix validation; // held-out target columns
    DenseMatrix negatives;  // validation negatives
    DenseMatrix references; // empty unless a reference case is active
};

DenseMatrix bounding_box_draws(const DenseMatrix& data, std::size_t count, Rng& rng) {
    const std::size_t d = data.rows();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < data.cols(); ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], data(i, j));
            hi[i] = std::max(hi[i], data(i, j));
        }
    }
    DenseMatrix out(d, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i < d; ++i) out(i, j) = uniform_real(lo[i], hi[i], rng);
    return out;
}

// Predicted labels for validation targets followed by validation negatives.
double validation_gmean(const std::vector<Decision>& target_dec,
                        const std::vector<Decision>& negative_dec) {
    std::vector<int> y_true, y_pred;
    y_true.reserve(target_dec.size() + negative_dec.size());
    y_pred.reserve(y_true.capacity());
    for (const Decision& d : target_dec) {
        y_true.push_back(1);
        y_pred.push_back(d.is_target ? 1 : 0);
    }
    for (const Decision& d : negative_dec) {
        y_true.push_back(0);
        y_pred.push_back(d.is_target ? 1 : 0);
    }
    return gmean_percent(y_true, y_pred);
}

// One fold's fitted kernel state for a fixed bandwidth, reused across the
// C / nu grid.
struct FoldKernelState {
    DenseMatrix k_train;                  // Gram matrix fed to the solver
    std::optional<ReferenceModel> ref;    // set on reference cases and on the
                                          // mapping path (NPT for base)
    DenseMatrix train_features;           // mapping path only
};

FoldKernelState build_fold_state(const Fold& fold, PathKind path,
                                 const std::optional<ReferenceCase>& ref_case,
                                 const BaseKernelSpec& base, double eigen_tol) {
    FoldKernelState st;
    if (!ref_case) {
        if (path == PathKind::kernel) {
            st.k_train = kernel_matrix(base, fold.train, fold.train);
        } else {
            auto [features, ref] = npt_fit(fold.train, base, eigen_tol);
            st.k_train = gram_from_features(features);
            st.train_features = std::move(features.features);
            st.ref = std::move(ref);
        }
        return st;
    }
    ReferenceModel ref = fit_reference(fold.references, base, eigen_tol);
    if (path == PathKind::kernel) {
        st.k_train = ref_kernel_matrix(ref, fold.train, fold.train);
    } else {
        FeatureBlock features = map_samples(ref, fold.train);
        st.k_train = gram_from_features(features);
        st.train_features = std::move(features.features);
    }
    st.ref = std::move(ref);
    return st;
}

// Scores one grid point on one fold. Builds a throwaway model around the
// precomputed fold state so scoring reuses the production decision path.
double score_fold_point(const Fold& fold, const FoldKernelState& st, Method method,
                        PathKind path, const std::optional<ReferenceCase>& ref_case,
                        const BaseKernelSpec& base, double hyper, double eigen_tol) {
    OneClassModel model;
    model.spec.method = method;
    model.spec.path = path;
    model.spec.ref_case = ref_case;
    model.spec.kernel = base.kind;
    model.spec.sigma = base.sigma;
    model.spec.hyper = hyper;
    model.spec.eigen_tol = eigen_tol;
    model.train = fold.train;
    model.reference = st.ref;
    model.train_features = st.train_features;
    model.norm = NormStats::identity(fold.train.rows());
    model.rank = 0; // not consulted during validation scoring

    if (method == Method::svdd) {
        SvddModel fit = svdd_fit(st.k_train, hyper);
        model.alpha = std::move(fit.alpha);
        model.threshold = fit.r_squared;
        model.center_norm_sq = fit.center_norm_sq;
    } else {
        OcsvmModel fit = ocsvm_fit(st.k_train, hyper);
        model.alpha = std::move(fit.alpha);
        model.threshold = fit.rho;
    }
    return validation_gmean(decide_block(model, fold.validation),
                            decide_block(model, fold.negatives));
}

} // namespace

const char* cv_negatives_label(CvNegatives v) {
    return v == CvNegatives::train_split ? "train-split" : "pseudo-uniform";
}

CvNegatives cv_negatives_from_label(const std::string& s) {
    if (s == "train-split") return CvNegatives::train_split;
    if (s == "pseudo-uniform") return CvNegatives::pseudo_uniform;
    throw FormatError("unknown cv_negatives value: '" + s + "'");
}

ChosenHyper cross_validate(const Task& task, Method method, PathKind path,
                           const std::optional<ReferenceCase>& ref_case, const Grids& grids,
                           std::size_t folds, CvNegatives negatives, double eigen_tol,
                           Rng& rng) {
    const std::size_t n = task.x_train.cols();
    if (n < 2) throw InsufficientData("cross-validation needs at least two training samples");
    folds = std::min(folds, n);
    if (negatives == CvNegatives::train_split && task.x_neg_train.cols() == 0) {
        throw MissingNegatives("cross-validation on split negatives needs a negative block");
    }

    const std::vector<double>& hypers = method == Method::svdd ? grids.c : grids.nu;

    // Fold membership strides over one shuffle, so fold sizes differ by at
    // most one. All random draws happen here, before the grid loops, in a
    // fixed order per fold: validation negatives first, references second.
    const auto order = shuffled_indices(n, rng);
    std::vector<Fold> fold_data(folds);
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::size_t> val_idx, train_idx;
        for (std::size_t k = 0; k < n; ++k) {
            (k % folds == f ? val_idx : train_idx).push_back(order[k]);
        }
        Fold& fold = fold_data[f];
        fold.train = task.x_train.select_columns(train_idx);
        fold.validation = task.x_train.select_columns(val_idx);
        fold.negatives = negatives == CvNegatives::train_split
                             ? task.x_neg_train
                             : bounding_box_draws(fold.train, val_idx.size(), rng);
        if (ref_case) {
            // The task's full negative block backs reference selection for
            // the augmented cases regardless of the validation strategy.
            fold.references =
                select_references(*ref_case, fold.train, &task.x_neg_train, rng);
        }
    }

    const std::size_t grid_points = grids.s.size() * hypers.size();
    std::vector<double> total(grid_points, 0.0);
    std::vector<bool> dead(grid_points, false);

    for (std::size_t si = 0; si < grids.s.size(); ++si) {
        for (std::size_t f = 0; f < folds; ++f) {
            FoldKernelState st;
            bool state_ok = true;
            BaseKernelSpec base = BaseKernelSpec::linear();
            try {
                base = BaseKernelSpec::rbf(sigma_from_scale(fold_data[f].train, grids.s[si]));
                st = build_fold_state(fold_data[f], path, ref_case, base, eigen_tol);
            } catch (const Error&) {
                state_ok = false;
            }
            for (std::size_t hi = 0; hi < hypers.size(); ++hi) {
                const std::size_t point = si * hypers.size() + hi;
                if (dead[point]) continue;
                if (!state_ok) {
                    dead[point] = true;
                    continue;
                }
                try {
                    total[point] += score_fold_point(fold_data[f], st, method, path, ref_case,
                                                     base, hypers[hi], eigen_tol);
                } catch (const Error&) {
                    dead[point] = true;
                }
            }
        }
    }

    ChosenHyper best;
    double best_score = kNegInf;
    for (std::size_t si = 0; si < grids.s.size(); ++si) {
        for (std::size_t hi = 0; hi < hypers.size(); ++hi) {
            const std::size_t point = si * hypers.size() + hi;
            if (dead[point]) continue;
            const double score = total[point] / static_cast<double>(folds);
            // Strict comparison in ascending grid order breaks ties toward
            // the smaller s, then the smaller C or nu.
            if (score > best_score) {
                best_score = score;
                best = {grids.s[si], hypers[hi], score};
            }
        }
    }
    if (best_score == kNegInf) {
        throw NoFeasibleHyperparams("every grid point failed during cross-validation");
    }
    return best;
}

RunOutcome run_single(const Task& task, Method method, PathKind path,
                      const std::optional<ReferenceCase>& ref_case,
                      const ExperimentConfig& cfg, Rng& rng) {
    RunOutcome out;
    try {
        const ChosenHyper chosen =
            cross_validate(task, method, path, ref_case, cfg.grids, cfg.cv_folds,
                           cfg.cv_negatives, cfg.eigen_tol, rng);

        ModelSpec spec;
        spec.method = method;
        spec.path = path;
        spec.ref_case = ref_case;
        spec.kernel = KernelKind::rbf;
        spec.sigma = sigma_from_scale(task.x_train, chosen.s);
        spec.hyper = chosen.hyper;
        spec.eigen_tol = cfg.eigen_tol;

        const OneClassModel model =
            fit_one_class(spec, task.x_train, &task.x_neg_train, rng, task.norm);

        const std::vector<Decision> decisions = decide_block(model, task.x_test);
        std::vector<int> y_pred(decisions.size());
        for (std::size_t i = 0; i < decisions.size(); ++i) {
            y_pred[i] = decisions[i].is_target ? 1 : 0;
        }
        out.gmean = gmean_percent(task.y_test, y_pred);
        out.s = chosen.s;
        out.hyper = chosen.hyper;
        out.rank = model.rank;
    } catch (const Error& e) {
        out.failed = true;
        out.failure = e.what();
    }
    return out;
}

namespace {

struct WorkItem {
    std::size_t task_idx;
    Method method;
    PathKind path;
    std::optional<ReferenceCase> ref_case;
    std::size_t split;
    std::size_t repeat;
    std::size_t record_idx;
};

std::string run_scope(const std::string& task_name, const std::string& case_name,
                      std::size_t split, std::size_t repeat) {
    return "run/" + task_name + "/" + case_name + "/" + std::to_string(split) + "/" +
           std::to_string(repeat);
}

} // namespace

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                         std::ostream* progress) {
    // Tasks are enumerated dataset by dataset, classes in id order.
    std::vector<std::pair<Dataset, TaskSpec>> all_tasks;
    for (const std::string& path : cfg.datasets) {
        Dataset ds = load_csv(path, cfg.label_column);
        for (const TaskSpec& spec : make_tasks(ds)) {
            if (!cfg.task_filter.empty() &&
                std::find(cfg.task_filter.begin(), cfg.task_filter.end(), spec.name) ==
                    cfg.task_filter.end()) {
                continue;
            }
            all_tasks.emplace_back(ds, spec);
        }
    }
    if (!cfg.task_filter.empty() && all_tasks.size() != cfg.task_filter.size()) {
        throw FormatError("task filter names tasks that do not exist in the datasets");
    }
    if (all_tasks.empty()) throw FormatError("no tasks to run");

    // One split is shared by every method, path and case at the same index,
    // so methods compete on identical data.
    std::vector<std::vector<Task>> splits(all_tasks.size());
    for (std::size_t t = 0; t < all_tasks.size(); ++t) {
        for (std::size_t s = 0; s < cfg.splits; ++s) {
            Rng rng = make_rng(cfg.master_seed,
                               "split/" + all_tasks[t].second.name + "/" + std::to_string(s));
            splits[t].push_back(
                split_task(all_tasks[t].first, all_tasks[t].second, rng, cfg.train_ratio));
        }
    }

    std::vector<ResultRecord> records;
    std::vector<WorkItem> items;
    for (std::size_t t = 0; t < all_tasks.size(); ++t) {
        for (Method method : cfg.methods) {
            for (PathKind path : cfg.paths) {
                for (const std::string& case_name : cfg.cases) {
                    ResultRecord rec;
                    rec.task = all_tasks[t].second.name;
                    rec.method = method;
                    rec.path = path;
                    rec.case_name = case_name;
                    rec.run_log.resize(cfg.splits * cfg.repeats);
                    const std::size_t record_idx = records.size();
                    records.push_back(std::move(rec));
                    for (std::size_t s = 0; s < cfg.splits; ++s) {
                        for (std::size_t r = 0; r < cfg.repeats; ++r) {
                            items.push_back({t, method, path, case_from_label(case_name), s, r,
                                             record_idx});
                        }
                    }
                }
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    const std::size_t worker_count = std::max<std::size_t>(1, jobs);

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= items.size()) return;
            const WorkItem& item = items[idx];
            ResultRecord& rec = records[item.record_idx];
            Rng rng = make_rng(cfg.master_seed,
                               run_scope(rec.task, rec.case_name, item.split, item.repeat));
            RunOutcome out = run_single(splits[item.task_idx][item.split], item.method,
                                        item.path, item.ref_case, cfg, rng);
            out.split = item.split;
            out.repeat = item.repeat;
            rec.run_log[item.split * cfg.repeats + item.repeat] = std::move(out);

            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress != nullptr && (finished % 100 == 0 || finished == items.size())) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                *progress << "runs " << finished << "/" << items.size() << "\n" << std::flush;
            }
        }
    };

    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    for (ResultRecord& rec : records) {
        double sum = 0.0, rank_sum = 0.0;
        std::size_t ok = 0;
        for (const RunOutcome& out : rec.run_log) {
            if (out.failed) {
                ++rec.failures;
            } else {
                sum += out.gmean;
                rank_sum += static_cast<double>(out.rank);
                ++ok;
            }
        }
        rec.runs = ok;
        if (ok > 0) {
            rec.gmean_mean = sum / static_cast<double>(ok);
            rec.rank_mean = rank_sum / static_cast<double>(ok);
            double var = 0.0;
            for (const RunOutcome& out : rec.run_log) {
                if (!out.failed) {
                    const double d = out.gmean - rec.gmean_mean;
                    var += d * d;
                }
            }
            rec.gmean_std = std::sqrt(var / static_cast<double>(ok));
        } else {
            rec.gmean_mean = std::numeric_limits<double>::quiet_NaN();
            rec.gmean_std = std::numeric_limits<double>::quiet_NaN();
            rec.rank_mean = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return records;
}

} // namespace refkernel
