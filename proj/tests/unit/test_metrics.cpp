#include "sdp/metrics.hpp"

#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "sdp/rng.hpp"

namespace {

// Brute-force AUC: fraction of (positive, negative) pairs ranked correctly,
// ties counting one half. The production code uses the rank formulation, so
// agreement here is a genuine cross-check.
double auc_pairs(const std::vector<int>& labels, const std::vector<double>& scores) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace

TEST_CASE("auc on hand-checked cases", "[metrics]") {
    // Perfect separation.
    CHECK(sdp::auc_from_scores(std::vector<int>{0, 0, 1, 1},
                               std::vector<double>{0.1, 0.2, 0.8, 0.9}) == 1.0);
    // Perfectly inverted.
    CHECK(sdp::auc_from_scores(std::vector<int>{0, 0, 1, 1},
                               std::vector<double>{0.9, 0.8, 0.2, 0.1}) == 0.0);
    // All scores tied: every pair counts half.
    CHECK(sdp::auc_from_scores(std::vector<int>{0, 1, 0, 1},
                               std::vector<double>{0.5, 0.5, 0.5, 0.5}) == 0.5);
    // One inversion among 1x3 + tie structure: pos {0.4}, neg {0.1, 0.4, 0.7}
    // gives (1 + 0.5 + 0) / 3.
    CHECK(sdp::auc_from_scores(std::vector<int>{1, 0, 0, 0},
                               std::vector<double>{0.4, 0.1, 0.4, 0.7}) == 0.5);
}

TEST_CASE("auc matches brute-force pair counting exactly", "[metrics]") {
    sdp::Rng rng(0xa0c);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rng.below(60);
        std::vector<int> labels(n);
        std::vector<double> scores(n);
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng.bernoulli(0.3) ? 1 : 0;
            (labels[i] ? has1 : has0) = true;
            // Coarse grid forces frequent ties.
            scores[i] = static_cast<double>(rng.below(8)) / 8.0;
        }
        if (!has0 || !has1) continue;
        REQUIRE(sdp::auc_from_scores(labels, scores) == auc_pairs(labels, scores));
    }
}

TEST_CASE("auc flips to its complement when labels flip", "[metrics]") {
    sdp::Rng rng(0xf11b);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 4 + rng.below(40);
        std::vector<int> labels(n), flipped(n);
        std::vector<double> scores(n);
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng.bernoulli(0.5) ? 1 : 0;
            flipped[i] = 1 - labels[i];
            (labels[i] ? has1 : has0) = true;
            scores[i] = static_cast<double>(rng.below(16)) / 16.0;
        }
        if (!has0 || !has1) continue;
        const double a = sdp::auc_from_scores(labels, scores);
        const double b = sdp::auc_from_scores(flipped, scores);
        REQUIRE(a + b == 1.0);
    }
}

TEST_CASE("auc rejects degenerate inputs", "[metrics]") {
    CHECK_THROWS(sdp::auc_from_scores(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}));
    CHECK_THROWS(sdp::auc_from_scores(std::vector<int>{0, 0}, std::vector<double>{0.1, 0.2}));
    CHECK_THROWS(sdp::auc_from_scores(std::vector<int>{0, 1}, std::vector<double>{0.1}));
    CHECK_THROWS(sdp::auc_from_scores(std::vector<int>{}, std::vector<double>{}));
}

TEST_CASE("confusion counts and derived rates", "[metrics]") {
    const std::vector<int> labels{1, 1, 1, 0, 0, 0, 0, 1};
    const std::vector<int> preds{1, 0, 1, 0, 1, 0, 0, 1};
    const std::vector<double> scores{0.9, 0.3, 0.8, 0.2, 0.6, 0.1, 0.4, 0.7};
    const auto m = sdp::compute_metrics(labels, preds, scores);
    CHECK(m.tp == 3);
    CHECK(m.fn == 1);
    CHECK(m.fp == 1);
    CHECK(m.tn == 3);
    CHECK(m.acc == 0.75);
    // precision 3/4, recall 3/4 -> F1 = 0.75.
    CHECK(m.f_score == 0.75);
    CHECK(m.auc == sdp::auc_from_scores(labels, scores));
}

TEST_CASE("f-score is zero when nothing is predicted positive", "[metrics]") {
    const std::vector<int> labels{1, 0, 1, 0};
    const std::vector<int> preds{0, 0, 0, 0};
    const std::vector<double> scores{-1.0, -2.0, -3.0, -4.0};
    const auto m = sdp::compute_metrics(labels, preds, scores);
    CHECK(m.tp == 0);
    CHECK(m.f_score == 0.0);
    CHECK(m.acc == 0.5);
}
