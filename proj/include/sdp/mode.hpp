// Differential evolution over continuous [0,1] positions decoded at 0.5.
// Donor vectors follow rand/1, trials use binomial crossover with one forced
// coordinate, and replacement is by dominance; mutually non-dominated trials
// join the population, which is then cut back by rank and crowding.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "sdp/evaluator.hpp"
#include "sdp/moo.hpp"
#include "sdp/pareto.hpp"

namespace sdp {

namespace detail {

// Three distinct donor indices, all different from target.
inline std::array<std::size_t, 3> donor_indices(std::size_t n, std::size_t target, Rng& rng) {
    std::array<std::size_t, 3> r{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t v;
        do {
            v = rng.below(n);
        } while (v == target || (k > 0 && v == r[0]) || (k > 1 && v == r[1]));
        r[k] = v;
    }
    return r;
}

} // namespace detail

// Returns the deduplicated non-dominated front of the final population.
inline std::vector<Individual> run_mode(SvmEvaluator& eval, const MooConfig& cfg,
                                        std::uint64_t seed) {
    validate(cfg);
    Rng rng(seed);
    const std::size_t L = eval.n_features();

    struct Member {
        std::vector<double> x;
        Individual ind;
    };
    std::vector<Member> pop(cfg.pop_size);
    for (auto& m : pop) {
        m.x.resize(L);
        for (auto& xj : m.x) xj = rng.uniform();
        m.ind.genes = detail::binarize_position(m.x);
        detail::repair_position(m.x, m.ind.genes, rng);
        eval.score(m.ind);
    }

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        std::vector<Member> next = pop;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto r = detail::donor_indices(pop.size(), i, rng);
            const std::size_t j_rand = rng.below(L);
            Member trial;
            trial.x.resize(L);
            for (std::size_t j = 0; j < L; ++j) {
                const double donor = std::clamp(
                    pop[r[0]].x[j] + cfg.de_weight * (pop[r[1]].x[j] - pop[r[2]].x[j]), 0.0, 1.0);
                const bool take = j == j_rand || rng.uniform() < cfg.de_crossover_prob;
                trial.x[j] = take ? donor : pop[i].x[j];
            }
            trial.ind.genes = detail::binarize_position(trial.x);
            detail::repair_position(trial.x, trial.ind.genes, rng);
            eval.score(trial.ind);

            if (dominates(trial.ind, pop[i].ind)) {
                next[i] = std::move(trial);
            } else if (!dominates(pop[i].ind, trial.ind)) {
                next.push_back(std::move(trial));
            }
        }
        if (next.size() > cfg.pop_size) {
            std::vector<Individual> view;
            view.reserve(next.size());
            for (const auto& m : next) view.push_back(m.ind);
            std::vector<Member> cut;
            cut.reserve(cfg.pop_size);
            for (std::size_t i : select_by_rank_crowding(view, cfg.pop_size))
                cut.push_back(std::move(next[i]));
            next = std::move(cut);
        }
        pop = std::move(next);
    }

    std::vector<Individual> final_pop;
    final_pop.reserve(pop.size());
    for (auto& m : pop) final_pop.push_back(std::move(m.ind));
    return extract_front(std::move(final_pop));
}

} // namespace sdp
