// Classification metrics: confusion counts, accuracy, F-score of the
// defective class, and rank-based AUC.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace sdp {

struct Metrics {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double acc = 0.0;
    double f_score = 0.0;
    double auc = 0.0;
    bool auc_valid = false;
};

// Mann-Whitney formulation: fraction of (positive, negative) pairs where the
// positive outscores the negative, ties counting half. Computed via average
// ranks rather than the quadratic pair scan.
inline double auc_from_scores(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) throw std::invalid_argument("labels/scores length mismatch");
    const std::size_t n = labels.size();
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += (y == 1);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::runtime_error("AUC undefined: only one class present");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average rank (1-based) within each tie group.
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
        i = j + 1;
    }

    double rank_sum_pos = 0.0;
    for (std::size_t t = 0; t < n; ++t)
        if (labels[t] == 1) rank_sum_pos += rank[t];
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// F-score is F1 of the defective class; undefined precision or recall yields 0.
// AUC needs both classes among the labels; when absent the other metrics are
// still returned with auc_valid = false.
inline Metrics compute_metrics(std::span<const int> labels, std::span<const int> predictions,
                               std::span<const double> scores) {
    if (labels.size() != predictions.size() || labels.size() != scores.size())
        throw std::invalid_argument("metrics input length mismatch");
    Metrics m;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            predictions[i] == 1 ? ++m.tp : ++m.fn;
        else
            predictions[i] == 1 ? ++m.fp : ++m.tn;
    }
    const double total = static_cast<double>(labels.size());
    m.acc = (static_cast<double>(m.tp) + static_cast<double>(m.tn)) / total;
    if (m.tp > 0) {
        const double prec = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
        const double rec = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
        m.f_score = 2.0 * prec * rec / (prec + rec);
    }
    const std::size_t n_pos = m.tp + m.fn;
    if (n_pos > 0 && n_pos < labels.size()) {
        m.auc = auc_from_scores(labels, scores);
        m.auc_valid = true;
    }
    return m;
}

} // namespace sdp
