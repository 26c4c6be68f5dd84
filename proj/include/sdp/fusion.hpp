// Fuses the non-dominated fronts of the three searches into one feature
// ranking by per-gene vote counting, with vote-proportional weights for the
// scaled-evaluation variant. Also the filter/wrapper baseline rankers
// (point-biserial correlation, class-separation score, greedy forward
// selection) and the prefix sweep that picks the final subset.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdp/chromosome.hpp"
#include "sdp/dataset.hpp"
#include "sdp/evaluator.hpp"

namespace sdp {

enum class FusionMode { vote, weight };

inline std::string to_string(FusionMode m) {
    return m == FusionMode::vote ? "vote" : "weight";
}

inline FusionMode parse_fusion_mode(std::string_view s) {
    if (s == "vote") return FusionMode::vote;
    if (s == "weight") return FusionMode::weight;
    throw std::invalid_argument("unknown fusion mode '" + std::string(s) + "'");
}

struct FusedRanking {
    struct Entry {
        std::size_t feature = 0;
        std::size_t votes = 0;
        double weight = 0.0; // votes / max votes
    };
    std::vector<Entry> entries; // votes descending, ties by ascending feature
};

// votes[j] = number of front-member chromosomes with gene j set, counted
// across all fronts. Zero-vote features are dropped.
inline FusedRanking fuse_fronts(const std::vector<std::vector<Individual>>& fronts) {
    std::size_t n_features = 0;
    for (const auto& front : fronts)
        for (const auto& ind : front) {
            if (n_features == 0) n_features = ind.genes.size();
            if (ind.genes.size() != n_features)
                throw std::invalid_argument("fronts disagree on feature count");
        }
    if (n_features == 0) throw std::invalid_argument("no front members to fuse");

    std::vector<std::size_t> votes(n_features, 0);
    for (const auto& front : fronts)
        for (const auto& ind : front)
            for (std::size_t j = 0; j < n_features; ++j) votes[j] += ind.genes[j] != 0;

    FusedRanking out;
    for (std::size_t j = 0; j < n_features; ++j)
        if (votes[j] > 0) out.entries.push_back({j, votes[j], 0.0});
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const FusedRanking::Entry& a, const FusedRanking::Entry& b) {
                         if (a.votes != b.votes) return a.votes > b.votes;
                         return a.feature < b.feature;
                     });
    const auto max_votes = static_cast<double>(out.entries.front().votes);
    for (auto& e : out.entries) e.weight = static_cast<double>(e.votes) / max_votes;
    return out;
}

// |point-biserial r| per feature; constant columns (or a constant label)
// score 0.
inline std::vector<double> pearson_scores(const Dataset& ds) {
    const std::size_t n = ds.n_rows(), d = ds.n_features();
    double label_mean = 0.0;
    for (int y : ds.labels) label_mean += y;
    label_mean /= static_cast<double>(n);
    double label_var = 0.0;
    for (int y : ds.labels) label_var += (y - label_mean) * (y - label_mean);

    std::vector<double> scores(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += ds.features(r, c);
        mean /= static_cast<double>(n);
        double var = 0.0, cov = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dx = ds.features(r, c) - mean;
            var += dx * dx;
            cov += dx * (ds.labels[r] - label_mean);
        }
        const double denom = std::sqrt(var * label_var);
        scores[c] = denom > 0.0 ? std::abs(cov / denom) : 0.0;
    }
    return scores;
}

// (mean gap)^2 over the summed per-class variances; zero denominator scores 0.
inline std::vector<double> fisher_scores(const Dataset& ds) {
    if (ds.single_class()) throw std::runtime_error("fisher_scores: single-class input");
    const std::size_t d = ds.n_features();
    std::vector<double> scores(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        double mean[2] = {0.0, 0.0}, var[2] = {0.0, 0.0};
        std::size_t count[2] = {0, 0};
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            mean[ds.labels[r]] += ds.features(r, c);
            ++count[ds.labels[r]];
        }
        for (int g : {0, 1}) mean[g] /= static_cast<double>(count[g]);
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            const double dx = ds.features(r, c) - mean[ds.labels[r]];
            var[ds.labels[r]] += dx * dx;
        }
        for (int g : {0, 1}) var[g] /= static_cast<double>(count[g]);
        const double gap = mean[1] - mean[0];
        const double denom = var[0] + var[1];
        scores[c] = denom > 0.0 ? gap * gap / denom : 0.0;
    }
    return scores;
}

// Feature order by descending score, ties by ascending index.
inline std::vector<std::size_t> rank_by_score(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

// Orders every feature by repeatedly appending whichever addition maximizes
// the evaluator's AUC (ties by index). Eval needs n_features() and
// auc_mask(genes).
template <class Eval>
std::vector<std::size_t> greedy_forward_select(Eval& eval) {
    const std::size_t d = eval.n_features();
    std::vector<std::uint8_t> genes(d, 0);
    std::vector<bool> used(d, false);
    std::vector<std::size_t> order;
    order.reserve(d);
    while (order.size() < d) {
        double best_auc = -1.0;
        std::size_t best_j = d;
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j]) continue;
            genes[j] = 1;
            const double auc = eval.auc_mask(genes);
            genes[j] = 0;
            if (auc > best_auc) {
                best_auc = auc;
                best_j = j;
            }
        }
        genes[best_j] = 1;
        used[best_j] = true;
        order.push_back(best_j);
    }
    return order;
}

struct PrefixSweep {
    struct Point {
        std::size_t length = 0;
        double auc = 0.0;
    };
    std::vector<Point> curve;
    std::size_t best_length = 0;
    double best_auc = 0.0;
    std::vector<std::size_t> best_subset; // ranking order, truncated
};

// Evaluates every prefix of the ranking; weighted prefixes apply each
// feature's fused weight as its multiplier. Best = maximal AUC, smallest
// length on ties.
template <class Eval>
PrefixSweep prefix_sweep(const FusedRanking& ranking, Eval& eval, bool weighted) {
    if (ranking.entries.empty()) throw std::invalid_argument("empty ranking");
    PrefixSweep out;
    std::vector<double> scale(eval.n_features(), 0.0);
    for (std::size_t len = 1; len <= ranking.entries.size(); ++len) {
        const auto& e = ranking.entries[len - 1];
        scale[e.feature] = weighted ? e.weight : 1.0;
        const double auc = eval.auc_scale(scale);
        out.curve.push_back({len, auc});
        if (auc > out.best_auc) {
            out.best_auc = auc;
            out.best_length = len;
        }
    }
    out.best_subset.reserve(out.best_length);
    for (std::size_t i = 0; i < out.best_length; ++i)
        out.best_subset.push_back(ranking.entries[i].feature);
    return out;
}

// Same sweep over a plain ordered feature list (baseline rankers).
template <class Eval>
PrefixSweep prefix_sweep(const std::vector<std::size_t>& order, Eval& eval) {
    if (order.empty()) throw std::invalid_argument("empty ranking");
    FusedRanking r;
    for (std::size_t j : order) r.entries.push_back({j, 1, 1.0});
    return prefix_sweep(r, eval, false);
}

} // namespace sdp
