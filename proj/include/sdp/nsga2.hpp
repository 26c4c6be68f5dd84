// Elitist genetic search: binary tournaments on (rank, crowding) pick
// parents, single-point crossover and one-gene mutation produce offspring,
// and parents plus offspring are truncated back to the population size.

#pragma once

#include <cstdint>
#include <vector>

#include "sdp/evaluator.hpp"
#include "sdp/moo.hpp"
#include "sdp/pareto.hpp"

namespace sdp {

namespace detail {

inline const Individual& tournament_pick(const std::vector<Individual>& pop, Rng& rng) {
    const Individual& a = pop[rng.below(pop.size())];
    const Individual& b = pop[rng.below(pop.size())];
    if (crowded_less(a, b)) return a;
    if (crowded_less(b, a)) return b;
    return a;
}

} // namespace detail

// Returns the deduplicated non-dominated front of the final population.
inline std::vector<Individual> run_nsga2(SvmEvaluator& eval, const MooConfig& cfg,
                                         std::uint64_t seed) {
    validate(cfg);
    Rng rng(seed);
    const std::size_t L = eval.n_features();

    std::vector<Individual> pop(cfg.pop_size);
    for (auto& ind : pop) {
        ind.genes = random_genes(L, rng);
        eval.score(ind);
    }

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        auto fronts = fast_non_dominated_sort(pop);
        for (const auto& front : fronts) crowding_distance(pop, front);

        std::vector<Individual> offspring;
        offspring.reserve(cfg.pop_size);
        while (offspring.size() < cfg.pop_size) {
            const Individual& p1 = detail::tournament_pick(pop, rng);
            const Individual& p2 = detail::tournament_pick(pop, rng);
            auto genes = rng.bernoulli(cfg.crossover_prob)
                             ? single_point_crossover(p1.genes, p2.genes, rng)
                             : std::pair{p1.genes, p2.genes};
            for (auto* g : {&genes.first, &genes.second}) {
                if (offspring.size() == cfg.pop_size) break;
                mutate_one_gene(*g, cfg.mutation_prob, rng);
                repair(*g, rng);
                Individual child;
                child.genes = std::move(*g);
                eval.score(child);
                offspring.push_back(std::move(child));
            }
        }

        pop.insert(pop.end(), std::make_move_iterator(offspring.begin()),
                   std::make_move_iterator(offspring.end()));
        pop = truncate_by_rank_crowding(std::move(pop), cfg.pop_size);
    }
    return extract_front(std::move(pop));
}

} // namespace sdp
