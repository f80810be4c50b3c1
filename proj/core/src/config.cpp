#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "refkernel/errors.hpp"
#include "refkernel/experiment.hpp"

namespace refkernel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError("config key '" + key + "': not a number: '" + s + "'");
    }
}

std::size_t parse_size(const std::string& key, const std::string& s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError("config key '" + key + "': not a non-negative integer: '" + s + "'");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_list(s)) out.push_back(parse_double(key, item));
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "datasets") {
        cfg.datasets = split_list(value);
    } else if (key == "label_column") {
        cfg.label_column = value;
    } else if (key == "tasks") {
        cfg.task_filter = split_list(value);
    } else if (key == "methods") {
        cfg.methods.clear();
        for (const std::string& m : split_list(value)) {
            try {
                cfg.methods.push_back(method_from_label(m));
            } catch (const Error&) {
                throw FormatError("config key 'methods': unknown method '" + m + "'");
            }
        }
    } else if (key == "paths") {
        cfg.paths.clear();
        for (const std::string& p : split_list(value)) {
            try {
                cfg.paths.push_back(path_from_label(p));
            } catch (const Error&) {
                throw FormatError("config key 'paths': unknown path '" + p + "'");
            }
        }
    } else if (key == "cases") {
        cfg.cases = split_list(value);
    } else if (key == "s_grid") {
        cfg.grids.s = parse_double_list(key, value);
    } else if (key == "c_grid") {
        cfg.grids.c = parse_double_list(key, value);
    } else if (key == "nu_grid") {
        cfg.grids.nu = parse_double_list(key, value);
    } else if (key == "splits") {
        cfg.splits = parse_size(key, value);
    } else if (key == "repeats") {
        cfg.repeats = parse_size(key, value);
    } else if (key == "cv_folds") {
        cfg.cv_folds = parse_size(key, value);
    } else if (key == "eigen_tol") {
        cfg.eigen_tol = parse_double(key, value);
    } else if (key == "train_ratio") {
        cfg.train_ratio = parse_double(key, value);
    } else if (key == "master_seed") {
        cfg.master_seed = parse_size(key, value);
        cfg.master_seed_set = true;
    } else if (key == "cv_negatives") {
        cfg.cv_negatives = cv_negatives_from_label(value);
    } else {
        throw FormatError("unknown config key '" + key + "'");
    }
}

void sort_unique(std::vector<double>& grid) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
}

} // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open config file");
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        }
        try {
            apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const FormatError& e) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw FormatError("override must be key=value, got '" + assignment + "'");
    }
    apply_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void validate_config(ExperimentConfig& cfg) {
    if (cfg.datasets.empty()) throw FormatError("config needs at least one dataset");
    if (cfg.methods.empty()) throw FormatError("config needs at least one method");
    if (cfg.paths.empty()) throw FormatError("config needs at least one path");
    if (cfg.cases.empty()) throw FormatError("config needs at least one case");
    std::set<std::string> seen;
    for (const std::string& c : cfg.cases) {
        try {
            (void)case_from_label(c);
        } catch (const Error&) {
            throw FormatError("unknown case '" + c + "' (expected base or 1..7)");
        }
        if (!seen.insert(c).second) throw FormatError("duplicate case '" + c + "'");
    }
    if (cfg.grids.s.empty() || cfg.grids.c.empty() || cfg.grids.nu.empty()) {
        throw FormatError("hyperparameter grids must be non-empty");
    }
    for (double v : cfg.grids.s) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw FormatError("bandwidth scales must be positive and finite");
        }
    }
    for (double v : cfg.grids.c) {
        if (!(v > 0.0) || !std::isfinite(v)) throw FormatError("C grid must be positive");
    }
    for (double v : cfg.grids.nu) {
        if (!(v > 0.0) || v > 1.0) throw FormatError("nu grid must lie in (0, 1]");
    }
    sort_unique(cfg.grids.s);
    sort_unique(cfg.grids.c);
    sort_unique(cfg.grids.nu);
    if (cfg.splits == 0) throw FormatError("splits must be at least 1");
    if (cfg.repeats == 0) throw FormatError("repeats must be at least 1");
    if (cfg.cv_folds < 2) throw FormatError("cv_folds must be at least 2");
    if (!(cfg.eigen_tol > 0.0) || !std::isfinite(cfg.eigen_tol)) {
        throw FormatError("eigen_tol must be positive and finite");
    }
    if (!(cfg.train_ratio > 0.0) || !(cfg.train_ratio < 1.0)) {
        throw FormatError("train_ratio must lie strictly between 0 and 1");
    }
}

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_cell(const ResultRecord& rec) {
    if (rec.runs == 0) return "failed";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.1f±%.1f (%.1f)", rec.gmean_mean, rec.gmean_std,
                  rec.rank_mean);
    return buf;
}

} // namespace

void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "task,method,path,case,gmean_mean,gmean_std,rank_mean,runs,failures\n";
    for (const ResultRecord& rec : records) {
        out << rec.task << ',' << method_label(rec.method) << ',' << path_label(rec.path) << ','
            << rec.case_name << ',' << format_double(rec.gmean_mean) << ','
            << format_double(rec.gmean_std) << ',' << format_double(rec.rank_mean) << ','
            << rec.runs << ',' << rec.failures << '\n';
    }
    if (!out.good()) throw Error("write failed for " + path);
}

void write_results_md(const std::vector<ResultRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);

    // Group into one table per (method, path); rows are tasks in first-seen
    // order, columns are base plus the reference cases.
    const std::vector<std::string> column_order{"base", "1", "2", "3", "4", "5", "6", "7"};
    std::vector<std::pair<Method, PathKind>> groups;
    std::vector<std::string> tasks;
    for (const ResultRecord& rec : records) {
        const std::pair<Method, PathKind> g{rec.method, rec.path};
        if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
        if (std::find(tasks.begin(), tasks.end(), rec.task) == tasks.end()) {
            tasks.push_back(rec.task);
        }
    }

    out << "# Results\n";
    out << "\nCells are Gmean mean±std in percent over all runs, with the mean"
           " model rank in parentheses.\n";
    for (const auto& [method, pathkind] : groups) {
        std::vector<std::string> present;
        for (const std::string& c : column_order) {
            const bool any = std::any_of(records.begin(), records.end(), [&](const auto& r) {
                return r.method == method && r.path == pathkind && r.case_name == c;
            });
            if (any) present.push_back(c);
        }

        out << "\n## " << method_label(method) << ", " << path_label(pathkind) << " path\n\n";
        out << "| Task |";
        for (const std::string& c : present) {
            out << ' ' << (c == "base" ? std::string("Base") : "Case " + c) << " |";
        }
        out << "\n|---|";
        for (std::size_t i = 0; i < present.size(); ++i) out << "---|";
        out << '\n';

        std::map<std::string, std::pair<double, std::size_t>> column_totals;
        std::map<std::string, std::pair<double, std::size_t>> column_std_totals;
        for (const std::string& task : tasks) {
            out << "| " << task << " |";
            for (const std::string& c : present) {
                const auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) {
                    return r.method == method && r.path == pathkind && r.case_name == c &&
                           r.task == task;
                });
                if (it == records.end()) {
                    out << " - |";
                } else {
                    out << ' ' << format_cell(*it) << " |";
                    if (it->runs > 0) {
                        column_totals[c].first += it->gmean_mean;
                        column_totals[c].second += 1;
                        column_std_totals[c].first += it->gmean_std;
                        column_std_totals[c].second += 1;
                    }
                }
            }
            out << '\n';
        }
        if (tasks.size() > 1) {
            out << "| Aver. |";
            for (const std::string& c : present) {
                const auto& [sum, count] = column_totals[c];
                if (count == 0) {
                    out << " - |";
                } else {
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "%.1f±%.1f", sum / double(count),
                                  column_std_totals[c].first / double(count));
                    out << ' ' << buf << " |";
                }
            }
            out << '\n';
        }
    }
    if (!out.good()) throw Error("write failed for " + path);
}

} // namespace refkernel
