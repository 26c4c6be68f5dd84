// Class rebalancing: SMOTE synthesis core, Borderline-SMOTE oversampling,
// Tomek-link detection, and the SMOTE-Tomek hybrid.
//
// Neighbor searches run on a min-max normalized view of the input so the
// metric is scale-free; synthesis interpolates the actual feature values
// (the two agree because normalization is affine per column).

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdp/dataset.hpp"
#include "sdp/rng.hpp"

namespace sdp {

enum class SamplingMethod { none, borderline_smote, smote_tomek };

inline std::string to_string(SamplingMethod m) {
    switch (m) {
        case SamplingMethod::borderline_smote: return "borderline_smote";
        case SamplingMethod::smote_tomek: return "smote_tomek";
        default: return "none";
    }
}

inline SamplingMethod parse_sampling_method(std::string_view s) {
    if (s == "bs" || s == "borderline_smote") return SamplingMethod::borderline_smote;
    if (s == "st" || s == "smote_tomek") return SamplingMethod::smote_tomek;
    if (s == "none") return SamplingMethod::none;
    throw std::invalid_argument("unknown sampling method '" + std::string(s) + "'");
}

struct SamplingReport {
    std::size_t before_majority = 0, before_minority = 0;
    std::size_t after_majority = 0, after_minority = 0;
    std::size_t synthetic_created = 0;
    std::size_t tomek_pairs_removed = 0;
    SamplingMethod method = SamplingMethod::none;
    bool danger_fallback = false; // Borderline-SMOTE fell back to plain SMOTE
};

// Brute-force Euclidean neighbor queries over a point matrix. The query row
// itself is never in its own neighbor list.
class NeighborQuery {
public:
    explicit NeighborQuery(const Matrix& points) : points_(&points) {}

    double dist_sq(std::size_t a, std::size_t b) const {
        auto ra = points_->row(a), rb = points_->row(b);
        double s = 0.0;
        for (std::size_t c = 0; c < ra.size(); ++c) {
            const double d = ra[c] - rb[c];
            s += d * d;
        }
        return s;
    }

    // k nearest distinct points to target_row, ties broken by lower index.
    std::vector<std::size_t> knn_indices(std::size_t target_row, std::size_t k) const {
        const std::size_t n = points_->rows();
        if (k >= n) throw std::invalid_argument("k must be smaller than the point count");
        std::vector<std::pair<double, std::size_t>> cand;
        cand.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            if (i != target_row) cand.emplace_back(dist_sq(target_row, i), i);
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        std::vector<std::size_t> out(k);
        for (std::size_t i = 0; i < k; ++i) out[i] = cand[i].second;
        return out;
    }

    // Single nearest neighbor, tie broken by lower index.
    std::size_t nearest(std::size_t target_row) const {
        const std::size_t n = points_->rows();
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = target_row;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == target_row) continue;
            const double d = dist_sq(target_row, i);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        return best_i;
    }

private:
    const Matrix* points_;
};

// Componentwise base + delta * (neighbor - base).
inline std::vector<double> smote_synthesize(std::span<const double> base,
                                            std::span<const double> neighbor, double delta) {
    if (base.size() != neighbor.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<double> out(base.size());
    for (std::size_t c = 0; c < base.size(); ++c) out[c] = base[c] + delta * (neighbor[c] - base[c]);
    return out;
}

enum class BorderCategory { safe, danger, noise };

struct BorderlineClassification {
    std::vector<std::size_t> minority_indices;
    std::vector<BorderCategory> categories; // parallel to minority_indices
};

namespace detail {

inline int minority_label(const Dataset& ds) {
    return ds.count(1) <= ds.count(0) ? 1 : 0;
}

inline std::vector<std::size_t> label_indices(const Dataset& ds, int label) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ds.n_rows(); ++i)
        if (ds.labels[i] == label) out.push_back(i);
    return out;
}

} // namespace detail

// Categorizes each minority sample by its m-neighborhood over the whole
// dataset: all-majority neighbors -> noise, at least half -> danger,
// otherwise safe.
inline BorderlineClassification borderline_classify(const Dataset& ds, std::size_t m) {
    if (ds.single_class()) throw std::runtime_error("borderline_classify: single-class input");
    if (m >= ds.n_rows()) throw std::invalid_argument("m must be smaller than the row count");

    const Dataset norm = normalize(ds, fit_normalizer(ds));
    NeighborQuery q(norm.features);
    const int minority = detail::minority_label(ds);

    BorderlineClassification out;
    out.minority_indices = detail::label_indices(ds, minority);
    out.categories.reserve(out.minority_indices.size());
    for (std::size_t i : out.minority_indices) {
        std::size_t maj = 0;
        for (std::size_t nb : q.knn_indices(i, m))
            maj += (ds.labels[nb] != minority);
        if (maj == m)
            out.categories.push_back(BorderCategory::noise);
        else if (2 * maj >= m)
            out.categories.push_back(BorderCategory::danger);
        else
            out.categories.push_back(BorderCategory::safe);
    }
    return out;
}

namespace detail {

// Shared synthesis loop: draws bases from `seeds` (round-robin when
// round_robin, uniformly otherwise), interpolates toward one of the base's
// k nearest minority neighbors, and appends to both raw and normalized
// matrices so later neighbor scans stay consistent.
inline std::size_t synthesize_to_balance(Dataset& ds, Matrix& norm_features,
                                         const std::vector<std::size_t>& seeds,
                                         const std::vector<std::size_t>& minority_idx,
                                         int minority, std::size_t k, bool round_robin, Rng& rng) {
    const std::size_t n_min = minority_idx.size();
    const std::size_t n_maj = ds.n_rows() - n_min;
    if (n_maj <= n_min) return 0;
    const std::size_t needed = n_maj - n_min;

    // Neighbor lists over the original minority points only.
    Matrix min_points(0, norm_features.cols());
    for (std::size_t i : minority_idx) min_points.append_row(norm_features.row(i));
    NeighborQuery min_query(min_points);
    const std::size_t k_eff = n_min > 1 ? std::min(k, n_min - 1) : 0;

    std::vector<std::size_t> pos_of(ds.n_rows(), 0);
    for (std::size_t p = 0; p < minority_idx.size(); ++p) pos_of[minority_idx[p]] = p;

    std::vector<std::vector<std::size_t>> nbrs(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (k_eff == 0) continue;
        for (std::size_t local : min_query.knn_indices(pos_of[seeds[s]], k_eff))
            nbrs[s].push_back(minority_idx[local]);
    }

    for (std::size_t t = 0; t < needed; ++t) {
        const std::size_t s = round_robin ? t % seeds.size()
                                          : static_cast<std::size_t>(rng.below(seeds.size()));
        const std::size_t base = seeds[s];
        std::vector<double> raw_row, norm_row;
        if (nbrs[s].empty()) {
            raw_row.assign(ds.features.row(base).begin(), ds.features.row(base).end());
            norm_row.assign(norm_features.row(base).begin(), norm_features.row(base).end());
        } else {
            const std::size_t nb = nbrs[s][rng.below(nbrs[s].size())];
            const double delta = rng.uniform();
            raw_row = smote_synthesize(ds.features.row(base), ds.features.row(nb), delta);
            norm_row = smote_synthesize(norm_features.row(base), norm_features.row(nb), delta);
        }
        ds.features.append_row(raw_row);
        norm_features.append_row(norm_row);
        ds.labels.push_back(minority);
    }
    return needed;
}

} // namespace detail

// Borderline-SMOTE-1: synthetics are generated only from danger-classified
// minority samples, interpolating toward minority neighbors, until the class
// counts are equal. Falls back to plain SMOTE over all minority samples when
// no danger samples exist.
inline std::pair<Dataset, SamplingReport> borderline_smote(const Dataset& ds, std::size_t m,
                                                           std::size_t k, std::uint64_t seed) {
    if (ds.single_class()) throw std::runtime_error("borderline_smote: single-class input");

    const int minority = detail::minority_label(ds);
    SamplingReport report;
    report.method = SamplingMethod::borderline_smote;
    report.before_minority = ds.count(minority);
    report.before_majority = ds.n_rows() - report.before_minority;

    Dataset out = ds;
    if (report.before_minority == report.before_majority) {
        report.after_majority = report.before_majority;
        report.after_minority = report.before_minority;
        return {out, report};
    }

    const auto cls = borderline_classify(ds, m);
    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < cls.minority_indices.size(); ++i)
        if (cls.categories[i] == BorderCategory::danger) seeds.push_back(cls.minority_indices[i]);
    if (seeds.empty()) {
        seeds = cls.minority_indices;
        report.danger_fallback = true;
    }

    Dataset norm = normalize(ds, fit_normalizer(ds));
    Rng rng(derive_seed(seed, 0xb51));
    report.synthetic_created = detail::synthesize_to_balance(
        out, norm.features, seeds, cls.minority_indices, minority, k, /*round_robin=*/true, rng);
    report.after_minority = out.count(minority);
    report.after_majority = out.n_rows() - report.after_minority;
    return {out, report};
}

// All unordered opposite-label pairs that are each other's single nearest
// neighbor. Pairs come back as (a, b) with a < b, sorted ascending.
inline std::vector<std::pair<std::size_t, std::size_t>> tomek_links(const Dataset& ds) {
    std::vector<std::pair<std::size_t, std::size_t>> links;
    if (ds.single_class()) return links;

    const Dataset norm = normalize(ds, fit_normalizer(ds));
    NeighborQuery q(norm.features);
    const std::size_t n = ds.n_rows();
    std::vector<std::size_t> nn(n);
    for (std::size_t i = 0; i < n; ++i) nn[i] = q.nearest(i);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t b = nn[a];
        if (a < b && nn[b] == a && ds.labels[a] != ds.labels[b]) links.emplace_back(a, b);
    }
    return links;
}

// Plain SMOTE to exact balance, then one Tomek pass removing both members of
// every detected link; class counts remain equal afterwards.
inline std::pair<Dataset, SamplingReport> smote_tomek(const Dataset& ds, std::size_t k,
                                                      std::uint64_t seed) {
    if (ds.single_class()) throw std::runtime_error("smote_tomek: single-class input");

    const int minority = detail::minority_label(ds);
    SamplingReport report;
    report.method = SamplingMethod::smote_tomek;
    report.before_minority = ds.count(minority);
    report.before_majority = ds.n_rows() - report.before_minority;

    Dataset balanced = ds;
    Dataset norm = normalize(ds, fit_normalizer(ds));
    Rng rng(derive_seed(seed, 0x57));
    const auto minority_idx = detail::label_indices(ds, minority);
    report.synthetic_created = detail::synthesize_to_balance(
        balanced, norm.features, minority_idx, minority_idx, minority, k, /*round_robin=*/false, rng);

    // Link scan on the already-normalized synthesis view; a single pass, links
    // created by the removal itself are not re-scanned.
    NeighborQuery q(norm.features);
    const std::size_t n = balanced.n_rows();
    std::vector<std::size_t> nn(n);
    for (std::size_t i = 0; i < n; ++i) nn[i] = q.nearest(i);
    std::vector<bool> drop(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t b = nn[a];
        if (a < b && nn[b] == a && balanced.labels[a] != balanced.labels[b]) {
            drop[a] = drop[b] = true;
            ++report.tomek_pairs_removed;
        }
    }

    std::vector<std::size_t> keep;
    keep.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!drop[i]) keep.push_back(i);
    Dataset out = balanced.subset(keep);
    report.after_minority = out.count(minority);
    report.after_majority = out.n_rows() - report.after_minority;
    return {out, report};
}

// Dispatcher used by the pipeline and CLI.
inline std::pair<Dataset, SamplingReport> resample(const Dataset& ds, SamplingMethod method,
                                                   std::size_t m, std::size_t k,
                                                   std::uint64_t seed) {
    switch (method) {
        case SamplingMethod::borderline_smote: return borderline_smote(ds, m, k, seed);
        case SamplingMethod::smote_tomek: return smote_tomek(ds, k, seed);
        default: {
            SamplingReport report;
            report.method = SamplingMethod::none;
            report.before_minority = report.after_minority =
                ds.count(detail::minority_label(ds));
            report.before_majority = report.after_majority = ds.n_rows() - report.before_minority;
            return {ds, report};
        }
    }
}

} // namespace sdp
