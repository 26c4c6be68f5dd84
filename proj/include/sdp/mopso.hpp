// Swarm search over continuous [0,1] positions decoded at 0.5. Leaders come
// from an external archive of non-dominated solutions organized by an
// adaptive objective-space grid; sparse cells are favored for leadership,
// dense cells are trimmed first when the archive overflows.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "sdp/evaluator.hpp"
#include "sdp/moo.hpp"
#include "sdp/pareto.hpp"

namespace sdp {

namespace detail {

struct ArchiveGrid {
    std::vector<std::size_t> cell_of;                 // per archive member
    std::map<std::size_t, std::vector<std::size_t>> members; // cell -> archive indices

    ArchiveGrid(const std::vector<Individual>& archive, std::size_t divisions) {
        double lo_r = archive.front().f_removed, hi_r = lo_r;
        double lo_a = archive.front().f_auc, hi_a = lo_a;
        for (const auto& s : archive) {
            lo_r = std::min(lo_r, s.f_removed);
            hi_r = std::max(hi_r, s.f_removed);
            lo_a = std::min(lo_a, s.f_auc);
            hi_a = std::max(hi_a, s.f_auc);
        }
        auto bucket = [divisions](double v, double lo, double hi) -> std::size_t {
            if (hi <= lo) return 0;
            auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(divisions));
            return std::min(b, divisions - 1);
        };
        cell_of.resize(archive.size());
        for (std::size_t i = 0; i < archive.size(); ++i) {
            cell_of[i] = bucket(archive[i].f_removed, lo_r, hi_r) * divisions +
                         bucket(archive[i].f_auc, lo_a, hi_a);
            members[cell_of[i]].push_back(i);
        }
    }

    // Roulette over cells weighted by inverse occupancy, then a uniform
    // member of the chosen cell.
    std::size_t pick_leader(Rng& rng) const {
        double total = 0.0;
        for (const auto& [cell, idx] : members) total += 1.0 / static_cast<double>(idx.size());
        double target = rng.uniform() * total;
        for (const auto& [cell, idx] : members) {
            target -= 1.0 / static_cast<double>(idx.size());
            if (target <= 0.0) return idx[rng.below(idx.size())];
        }
        return members.rbegin()->second.front();
    }
};

// Inserts a candidate, dropping dominated members; rejects candidates that
// are dominated or duplicate an existing chromosome.
inline void archive_insert(std::vector<Individual>& archive, const Individual& cand) {
    for (const auto& s : archive) {
        if (dominates(s, cand)) return;
        if (s.genes == cand.genes) return;
    }
    std::erase_if(archive, [&](const Individual& s) { return dominates(cand, s); });
    archive.push_back(cand);
}

// Removes members from the densest grid cells until the size bound holds.
inline void archive_truncate(std::vector<Individual>& archive, std::size_t max_size,
                             std::size_t divisions, Rng& rng) {
    while (archive.size() > max_size) {
        ArchiveGrid grid(archive, divisions);
        std::size_t densest = grid.members.begin()->first;
        std::size_t best = 0;
        for (const auto& [cell, idx] : grid.members) {
            if (idx.size() > best) {
                best = idx.size();
                densest = cell;
            }
        }
        const auto& bucket = grid.members.at(densest);
        archive.erase(archive.begin() +
                      static_cast<std::ptrdiff_t>(bucket[rng.below(bucket.size())]));
    }
}

} // namespace detail

// Returns the archive contents, deduplicated and sorted like the other
// searches' fronts.
inline std::vector<Individual> run_mopso(SvmEvaluator& eval, const MooConfig& cfg,
                                         std::uint64_t seed) {
    validate(cfg);
    Rng rng(seed);
    const std::size_t L = eval.n_features();

    struct Particle {
        std::vector<double> x, v;
        Individual current, pbest;
    };
    std::vector<Particle> swarm(cfg.pop_size);
    std::vector<Individual> archive;
    for (auto& p : swarm) {
        p.x.resize(L);
        p.v.assign(L, 0.0);
        for (auto& xj : p.x) xj = rng.uniform();
        p.current.genes = detail::binarize_position(p.x);
        detail::repair_position(p.x, p.current.genes, rng);
        eval.score(p.current);
        p.pbest = p.current;
        detail::archive_insert(archive, p.current);
    }
    detail::archive_truncate(archive, cfg.archive_size, cfg.grid_divisions, rng);

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        detail::ArchiveGrid grid(archive, cfg.grid_divisions);
        for (auto& p : swarm) {
            const Individual& leader = archive[grid.pick_leader(rng)];
            // Leaders live in objective space but steer in gene space via
            // their decoded chromosome.
            for (std::size_t j = 0; j < L; ++j) {
                const double pb = p.pbest.genes[j] ? 1.0 : 0.0;
                const double ld = leader.genes[j] ? 1.0 : 0.0;
                p.v[j] = cfg.inertia * p.v[j] + cfg.c1 * rng.uniform() * (pb - p.x[j]) +
                         cfg.c2 * rng.uniform() * (ld - p.x[j]);
                p.v[j] = std::clamp(p.v[j], -1.0, 1.0);
                p.x[j] = std::clamp(p.x[j] + p.v[j], 0.0, 1.0);
            }
            p.current.genes = detail::binarize_position(p.x);
            detail::repair_position(p.x, p.current.genes, rng);
            eval.score(p.current);
        }
        for (auto& p : swarm) detail::archive_insert(archive, p.current);
        detail::archive_truncate(archive, cfg.archive_size, cfg.grid_divisions, rng);
        for (auto& p : swarm) {
            if (dominates(p.current, p.pbest)) {
                p.pbest = p.current;
            } else if (!dominates(p.pbest, p.current) && rng.bernoulli(0.5)) {
                p.pbest = p.current;
            }
        }
    }
    return extract_front(std::move(archive));
}

} // namespace sdp
