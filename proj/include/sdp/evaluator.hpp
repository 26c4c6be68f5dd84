// Wrapper fitness evaluation: a chromosome's AUC comes from training the
// RBF-SVM on an internal stratified holdout of the (already resampled)
// training fold and scoring the held-out part. Results are memoized per
// chromosome so repeated visits cost nothing.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdp/chromosome.hpp"
#include "sdp/dataset.hpp"
#include "sdp/metrics.hpp"
#include "sdp/rng.hpp"
#include "sdp/svm.hpp"

namespace sdp {

struct EvalSplit {
    Dataset train;
    Dataset valid;
};

// Class-stratified holdout: valid_frac of each class (rounded, clamped so
// both parts keep both classes) goes to the validation side.
inline EvalSplit stratified_holdout(const Dataset& ds, double valid_frac, std::uint64_t seed) {
    if (ds.single_class()) throw std::runtime_error("stratified_holdout: single-class input");
    if (valid_frac <= 0.0 || valid_frac >= 1.0)
        throw std::invalid_argument("valid_frac must be in (0,1)");

    Rng rng(derive_seed(seed, 0x5b117));
    std::vector<std::size_t> train_idx, valid_idx;
    for (int label : {0, 1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ds.n_rows(); ++i)
            if (ds.labels[i] == label) idx.push_back(i);
        if (idx.size() < 2)
            throw std::runtime_error("stratified_holdout: class " + std::to_string(label) +
                                     " has fewer than 2 members");
        rng.shuffle(idx);
        auto n_valid = static_cast<std::size_t>(
            std::llround(valid_frac * static_cast<double>(idx.size())));
        n_valid = std::clamp<std::size_t>(n_valid, 1, idx.size() - 1);
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_valid ? valid_idx : train_idx).push_back(idx[i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(valid_idx.begin(), valid_idx.end());
    return {ds.subset(train_idx), ds.subset(valid_idx)};
}

class SvmEvaluator {
public:
    SvmEvaluator(Dataset train, Dataset valid, SvmParams params = {})
        : train_(std::move(train)), valid_(std::move(valid)), params_(params) {
        if (train_.n_features() != valid_.n_features())
            throw std::invalid_argument("train/valid feature count mismatch");
        if (train_.single_class() || valid_.single_class())
            throw std::runtime_error("evaluator split lost a class");
    }

    static SvmEvaluator from_training(const Dataset& training, double valid_frac,
                                      std::uint64_t seed, SvmParams params = {}) {
        auto split = stratified_holdout(training, valid_frac, seed);
        return SvmEvaluator(std::move(split.train), std::move(split.valid), params);
    }

    std::size_t n_features() const { return train_.n_features(); }
    std::size_t evaluations() const { return misses_; }
    std::size_t failures() const { return failures_; }

    // AUC for a binary feature mask. An empty mask scores 0.
    double auc_mask(const std::vector<std::uint8_t>& genes) {
        if (genes.size() != n_features()) throw std::invalid_argument("gene count mismatch");
        if (popcount(genes) == 0) return 0.0;
        const std::string key = bitstring(genes);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const double auc = compute(genes_to_scale(genes));
        cache_.emplace(key, auc);
        return auc;
    }

    // AUC for arbitrary per-feature multipliers (fused-weight scoring).
    double auc_scale(std::span<const double> scale) {
        if (scale.size() != n_features()) throw std::invalid_argument("scale length mismatch");
        bool any = false;
        for (double s : scale) any = any || s != 0.0;
        if (!any) return 0.0;
        const std::string key = scale_key(scale);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const double auc = compute({scale.begin(), scale.end()});
        cache_.emplace(key, auc);
        return auc;
    }

    // Fills both objectives of an individual.
    void score(Individual& ind) {
        ind.f_auc = auc_mask(ind.genes);
        ind.f_removed = static_cast<double>(ind.genes.size() - popcount(ind.genes));
    }

private:
    // A failed evaluation scores 0 and bumps the failure counter instead of
    // tearing down the whole search.
    double compute(const std::vector<double>& scale) {
        ++misses_;
        try {
            const auto values = svm_decision_values(train_, valid_, scale, params_);
            return auc_from_scores(valid_.labels, values);
        } catch (const std::exception&) {
            ++failures_;
            return 0.0;
        }
    }

    static std::string scale_key(std::span<const double> scale) {
        std::string key = "w:";
        char buf[32];
        for (double s : scale) {
            std::snprintf(buf, sizeof buf, "%a,", s);
            key += buf;
        }
        return key;
    }

    Dataset train_, valid_;
    SvmParams params_;
    std::unordered_map<std::string, double> cache_;
    std::size_t misses_ = 0;
    std::size_t failures_ = 0;
};

} // namespace sdp
