// Dominance relations, fast non-dominated sorting, and crowding distance
// for the two maximized objectives on Individual.

#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "sdp/chromosome.hpp"

namespace sdp {

// True when a is no worse in both objectives and strictly better in one.
inline bool dominates(const Individual& a, const Individual& b) {
    if (a.f_removed < b.f_removed || a.f_auc < b.f_auc) return false;
    return a.f_removed > b.f_removed || a.f_auc > b.f_auc;
}

// Fronts of population indices, best first. Also writes each Individual's
// rank (0 = non-dominated).
inline std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::vector<Individual>& pop) {
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dom_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(pop[p], pop[q]))
                dominated[p].push_back(q);
            else if (dominates(pop[q], pop[p]))
                ++dom_count[p];
        }
        if (dom_count[p] == 0) {
            pop[p].rank = 0;
            fronts[0].push_back(p);
        }
    }
    std::size_t f = 0;
    while (!fronts[f].empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts[f]) {
            for (std::size_t q : dominated[p]) {
                if (--dom_count[q] == 0) {
                    pop[q].rank = f + 1;
                    next.push_back(q);
                }
            }
        }
        ++f;
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

// Crowding distance within one front. Boundary members get infinity; when a
// front collapses to a single objective value the objective contributes 0.
inline void crowding_distance(std::vector<Individual>& pop, const std::vector<std::size_t>& front) {
    for (std::size_t i : front) pop[i].crowding = 0.0;
    if (front.size() < 3) {
        for (std::size_t i : front) pop[i].crowding = std::numeric_limits<double>::infinity();
        return;
    }
    const auto objectives = {+[](const Individual& x) { return x.f_removed; },
                             +[](const Individual& x) { return x.f_auc; }};
    for (auto obj : objectives) {
        std::vector<std::size_t> order(front);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return obj(pop[a]) < obj(pop[b]); });
        const double range = obj(pop[order.back()]) - obj(pop[order.front()]);
        pop[order.front()].crowding = std::numeric_limits<double>::infinity();
        pop[order.back()].crowding = std::numeric_limits<double>::infinity();
        if (range <= 0.0) continue;
        for (std::size_t i = 1; i + 1 < order.size(); ++i)
            pop[order[i]].crowding += (obj(pop[order[i + 1]]) - obj(pop[order[i - 1]])) / range;
    }
}

// (rank, crowding) comparison used by tournament and truncation: lower rank
// wins, ties go to the more isolated member.
inline bool crowded_less(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

// Indices of the best n by fronts, splitting the last admitted front by
// crowding distance. Within the split, equal crowding resolves by original
// position. Ranks and crowding values are written back into pop.
inline std::vector<std::size_t> select_by_rank_crowding(std::vector<Individual>& pop,
                                                        std::size_t n) {
    auto fronts = fast_non_dominated_sort(pop);
    for (const auto& front : fronts) crowding_distance(pop, front);

    std::vector<std::size_t> keep;
    keep.reserve(std::min(n, pop.size()));
    for (const auto& front : fronts) {
        if (keep.size() + front.size() <= n) {
            keep.insert(keep.end(), front.begin(), front.end());
            if (keep.size() == n) break;
            continue;
        }
        std::vector<std::size_t> order(front);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].crowding > pop[b].crowding;
        });
        for (std::size_t i : order) {
            if (keep.size() == n) break;
            keep.push_back(i);
        }
        break;
    }
    return keep;
}

inline std::vector<Individual> truncate_by_rank_crowding(std::vector<Individual> pop,
                                                         std::size_t n) {
    if (pop.size() <= n) return pop;
    std::vector<Individual> out;
    out.reserve(n);
    for (std::size_t i : select_by_rank_crowding(pop, n)) out.push_back(pop[i]);
    return out;
}

// The rank-0 members with duplicate chromosomes removed (first occurrence
// kept), sorted by descending AUC then by fewer retained features.
inline std::vector<Individual> extract_front(std::vector<Individual> pop) {
    if (pop.empty()) return pop;
    auto fronts = fast_non_dominated_sort(pop);
    std::vector<Individual> out;
    std::set<std::vector<std::uint8_t>> seen;
    for (std::size_t i : fronts[0])
        if (seen.insert(pop[i].genes).second) out.push_back(pop[i]);
    std::stable_sort(out.begin(), out.end(), [](const Individual& a, const Individual& b) {
        if (a.f_auc != b.f_auc) return a.f_auc > b.f_auc;
        return a.f_removed > b.f_removed;
    });
    return out;
}

} // namespace sdp
