#include "refkernel/dataset.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const std::string& path, std::size_t line_no) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw FormatError(path + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
    }
    return v;
}

std::string dataset_name_from_path(const std::string& path) {
    std::string stem = std::filesystem::path(path).stem().string();
    if (!stem.empty()) stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
    return stem;
}

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // field strings, header excluded
};

RawCsv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open file");

    RawCsv csv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (csv.header.empty()) {
            csv.header = std::move(fields);
            continue;
        }
        if (fields.size() != csv.header.size()) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(csv.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        csv.rows.push_back(std::move(fields));
    }
    if (csv.header.empty()) throw FormatError(path + ": missing header row");
    if (csv.rows.empty()) throw FormatError(path + ": no data rows");
    return csv;
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    const RawCsv csv = read_csv(path);

    std::size_t label_idx = csv.header.size();
    for (std::size_t i = 0; i < csv.header.size(); ++i) {
        if (csv.header[i] == label_column) {
            label_idx = i;
            break;
        }
    }
    if (label_idx == csv.header.size()) {
        throw FormatError(path + ": label column '" + label_column + "' not found in header");
    }
    if (csv.header.size() < 2) {
        throw FormatError(path + ": no feature columns besides the label");
    }

    Dataset ds;
    ds.name = dataset_name_from_path(path);
    const std::size_t d = csv.header.size() - 1;
    const std::size_t n = csv.rows.size();
    for (std::size_t i = 0; i < csv.header.size(); ++i) {
        if (i != label_idx) ds.feature_names.push_back(csv.header[i]);
    }
    ds.features = DenseMatrix(d, n);
    ds.labels.resize(n);

    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = csv.rows[r];
        const std::size_t line_no = r + 2; // header is line 1 of the content
        std::size_t fi = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == label_idx) continue;
            ds.features(fi++, r) = parse_number(row[i], path, line_no);
        }
        const std::string& label = row[label_idx];
        std::size_t cls = ds.class_names.size();
        for (std::size_t c = 0; c < ds.class_names.size(); ++c) {
            if (ds.class_names[c] == label) {
                cls = c;
                break;
            }
        }
        if (cls == ds.class_names.size()) ds.class_names.push_back(label);
        ds.labels[r] = cls;
    }
    return ds;
}

DenseMatrix load_features_csv(const std::string& path) {
    const RawCsv csv = read_csv(path);
    const std::size_t d = csv.header.size();
    const std::size_t n = csv.rows.size();
    DenseMatrix m(d, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            m(i, r) = parse_number(csv.rows[r][i], path, r + 2);
        }
    }
    return m;
}

std::vector<TaskSpec> make_tasks(const Dataset& ds) {
    std::vector<TaskSpec> tasks;
    for (std::size_t c = 0; c < ds.class_count(); ++c) {
        tasks.push_back({ds.name + std::to_string(c + 1), c});
    }
    return tasks;
}

} // namespace refkernel
