// Dataset ingestion (CSV and a minimal ARFF subset), min-max normalization,
// and stratified k-fold splitting.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdp/rng.hpp"

namespace sdp {

// Dense row-major matrix of doubles. Rows are modules, columns are metrics.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        Matrix m;
        if (rows.empty()) return m;
        m.rows_ = rows.size();
        m.cols_ = rows.front().size();
        m.v_.reserve(m.rows_ * m.cols_);
        for (const auto& r : rows) {
            if (r.size() != m.cols_) throw std::invalid_argument("ragged row in matrix construction");
            m.v_.insert(m.v_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {v_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {v_.data() + r * cols_, cols_}; }

    void append_row(std::span<const double> r) {
        if (cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("row width mismatch on append");
        v_.insert(v_.end(), r.begin(), r.end());
        ++rows_;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

// Feature matrix plus binary defect labels (1 = defective, 0 = non-defective).
// Immutable after construction by convention; safe to share across workers.
struct Dataset {
    std::string name;
    std::vector<std::string> feature_names;
    Matrix features;
    std::vector<int> labels;

    std::size_t n_rows() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }

    std::size_t count(int label) const {
        return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
    }

    bool single_class() const { return count(1) == 0 || count(0) == 0; }

    Dataset subset(std::span<const std::size_t> idx) const {
        Dataset out;
        out.name = name;
        out.feature_names = feature_names;
        out.features = Matrix(0, n_features());
        out.labels.reserve(idx.size());
        for (std::size_t i : idx) {
            out.features.append_row(features.row(i));
            out.labels.push_back(labels[i]);
        }
        return out;
    }
};

enum class FileFormat { csv, arff };

// Maps raw label tokens to {0, 1}. Tokens are matched case-insensitively
// after trimming; anything else must parse as a number, where value > 0
// means defective (covers PROMISE bug counts).
struct LabelMapping {
    std::vector<std::string> positive = {"y", "yes", "true", "defective", "buggy"};
    std::vector<std::string> negative = {"n", "no", "false", "clean", "non-defective"};

    int map(std::string_view token) const;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out, std::chars_format::general);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

} // namespace detail

inline int LabelMapping::map(std::string_view token) const {
    std::string t = detail::lower(detail::trim(token));
    if (std::find(positive.begin(), positive.end(), t) != positive.end()) return 1;
    if (std::find(negative.begin(), negative.end(), t) != negative.end()) return 0;
    double v = 0.0;
    if (detail::parse_double(t, v)) return v > 0.0 ? 1 : 0;
    throw std::runtime_error("unknown label value '" + std::string(token) + "'");
}

namespace detail {

inline void validate_loaded(const Dataset& ds) {
    if (ds.n_rows() < 2) throw std::runtime_error(ds.name + ": fewer than 2 rows");
    if (ds.n_features() < 1) throw std::runtime_error(ds.name + ": no feature columns");
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        for (double v : ds.features.row(r))
            if (!std::isfinite(v))
                throw std::runtime_error(ds.name + ": non-finite feature value in row " + std::to_string(r));
}

inline Dataset load_csv(std::istream& in, const std::string& name,
                        const std::string& label_column, const LabelMapping& mapping) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(name + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == label_column) label_idx = i;
    if (label_idx == header.size())
        throw std::runtime_error(name + ": label column '" + label_column + "' not found");

    Dataset ds;
    ds.name = name;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (i != label_idx) ds.feature_names.push_back(header[i]);
    ds.features = Matrix(0, ds.feature_names.size());

    std::vector<double> row(ds.feature_names.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error(name + ": line " + std::to_string(line_no) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        std::size_t j = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == label_idx) continue;
            if (!parse_double(cells[i], row[j]))
                throw std::runtime_error(name + ": non-numeric feature cell '" + cells[i] +
                                         "' at line " + std::to_string(line_no));
            ++j;
        }
        ds.features.append_row(row);
        ds.labels.push_back(mapping.map(cells[label_idx]));
    }
    validate_loaded(ds);
    return ds;
}

// ARFF subset: @relation, numeric @attribute declarations, one nominal class
// attribute, @data rows in CSV form. Keywords are case-insensitive. Comment
// lines and sparse {...} rows are rejected.
inline Dataset load_arff(std::istream& in, const std::string& name,
                         const std::string& label_column, const LabelMapping& mapping) {
    Dataset ds;
    ds.name = name;
    std::vector<std::string> attr_names;
    std::vector<bool> attr_nominal;
    bool in_data = false;
    std::size_t label_idx = std::string::npos;

    std::vector<double> row;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '%')
            throw std::runtime_error(name + ": comment lines are not supported (line " +
                                     std::to_string(line_no) + ")");
        if (!in_data) {
            std::string low = lower(sv);
            if (low.rfind("@relation", 0) == 0) continue;
            if (low.rfind("@attribute", 0) == 0) {
                std::string_view rest = trim(sv.substr(10));
                std::size_t name_end = 0;
                if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
                    char q = rest.front();
                    name_end = rest.find(q, 1);
                    if (name_end == std::string_view::npos)
                        throw std::runtime_error(name + ": unterminated attribute name at line " +
                                                 std::to_string(line_no));
                    attr_names.emplace_back(rest.substr(1, name_end - 1));
                    rest = trim(rest.substr(name_end + 1));
                } else {
                    while (name_end < rest.size() &&
                           !std::isspace(static_cast<unsigned char>(rest[name_end])))
                        ++name_end;
                    attr_names.emplace_back(rest.substr(0, name_end));
                    rest = trim(rest.substr(name_end));
                }
                std::string type = lower(rest);
                if (type == "numeric" || type == "real" || type == "integer") {
                    attr_nominal.push_back(false);
                } else if (!type.empty() && type.front() == '{') {
                    attr_nominal.push_back(true);
                } else {
                    throw std::runtime_error(name + ": unsupported attribute type '" +
                                             std::string(rest) + "' at line " + std::to_string(line_no));
                }
                continue;
            }
            if (low.rfind("@data", 0) == 0) {
                for (std::size_t i = 0; i < attr_names.size(); ++i)
                    if (attr_names[i] == label_column) label_idx = i;
                if (label_idx == std::string::npos)
                    throw std::runtime_error(name + ": label column '" + label_column + "' not found");
                for (std::size_t i = 0; i < attr_names.size(); ++i) {
                    if (attr_nominal[i] && i != label_idx)
                        throw std::runtime_error(name + ": nominal attribute '" + attr_names[i] +
                                                 "' is not the label column");
                    if (i != label_idx) ds.feature_names.push_back(attr_names[i]);
                }
                ds.features = Matrix(0, ds.feature_names.size());
                row.resize(ds.feature_names.size());
                in_data = true;
                continue;
            }
            throw std::runtime_error(name + ": unrecognized header line " + std::to_string(line_no));
        }
        if (sv.front() == '{')
            throw std::runtime_error(name + ": sparse data rows are not supported (line " +
                                     std::to_string(line_no) + ")");
        auto cells = split_csv_line(sv);
        if (cells.size() != attr_names.size())
            throw std::runtime_error(name + ": line " + std::to_string(line_no) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(attr_names.size()));
        std::size_t j = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == label_idx) continue;
            if (!parse_double(cells[i], row[j]))
                throw std::runtime_error(name + ": non-numeric feature cell '" + cells[i] +
                                         "' at line " + std::to_string(line_no));
            ++j;
        }
        ds.features.append_row(row);
        ds.labels.push_back(mapping.map(cells[label_idx]));
    }
    if (!in_data) throw std::runtime_error(name + ": no @data section");
    validate_loaded(ds);
    return ds;
}

} // namespace detail

inline Dataset load_dataset(const std::filesystem::path& path, FileFormat format,
                            const std::string& label_column,
                            const LabelMapping& mapping = LabelMapping{}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string name = path.stem().string();
    return format == FileFormat::csv ? detail::load_csv(in, name, label_column, mapping)
                                     : detail::load_arff(in, name, label_column, mapping);
}

// CSV round-trip form: feature columns in order, label column last.
inline std::string to_csv(const Dataset& ds, const std::string& label_column) {
    std::string s;
    for (const auto& name : ds.feature_names) s += name + ',';
    s += label_column + '\n';
    char buf[64];
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (double v : ds.features.row(r)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            s += buf;
            s += ',';
        }
        s += std::to_string(ds.labels[r]) + '\n';
    }
    return s;
}

// Per-feature min/max for the linear [0,1] rescaling x' = (x-min)/(max-min).
struct NormalizationParams {
    std::vector<double> min;
    std::vector<double> max;
};

inline NormalizationParams fit_normalizer(const Dataset& ds) {
    NormalizationParams p;
    const std::size_t d = ds.n_features();
    p.min.assign(d, std::numeric_limits<double>::infinity());
    p.max.assign(d, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        auto row = ds.features.row(r);
        for (std::size_t c = 0; c < d; ++c) {
            p.min[c] = std::min(p.min[c], row[c]);
            p.max[c] = std::max(p.max[c], row[c]);
        }
    }
    return p;
}

// Constant columns (max == min) map to 0 so downstream selection can still
// discard them. Labels pass through unchanged.
inline Dataset normalize(const Dataset& ds, const NormalizationParams& p) {
    if (p.min.size() != ds.n_features())
        throw std::invalid_argument("normalization params fitted on different column count");
    Dataset out = ds;
    for (std::size_t c = 0; c < ds.n_features(); ++c) {
        const double range = p.max[c] - p.min[c];
        for (std::size_t r = 0; r < ds.n_rows(); ++r)
            out.features(r, c) = range > 0.0 ? (ds.features(r, c) - p.min[c]) / range : 0.0;
    }
    return out;
}

// K disjoint test sets covering all rows exactly once, stratified by class.
struct FoldPlan {
    struct Fold {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
    };
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<Fold> folds;
};

// Deterministic: each class's indices are shuffled with an mt19937_64 stream
// seeded from `seed`, then dealt round-robin; the deal position continues
// across classes so fold sizes differ by at most one overall.
inline FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    for (int label : {0, 1}) {
        if (ds.count(label) < static_cast<std::size_t>(k))
            throw std::runtime_error("stratification error: class " + std::to_string(label) +
                                     " has fewer than k=" + std::to_string(k) + " members");
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.folds.resize(static_cast<std::size_t>(k));

    Rng rng(derive_seed(seed, 0xf01d));
    std::vector<std::size_t> fold_of(ds.n_rows());
    std::size_t next_fold = 0;
    for (int label : {0, 1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ds.n_rows(); ++i)
            if (ds.labels[i] == label) idx.push_back(i);
        rng.shuffle(idx);
        for (std::size_t i : idx) {
            fold_of[i] = next_fold;
            next_fold = (next_fold + 1) % static_cast<std::size_t>(k);
        }
    }
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
            auto& fold = plan.folds[f];
            (f == fold_of[i] ? fold.test : fold.train).push_back(i);
        }
    }
    return plan;
}

} // namespace sdp
