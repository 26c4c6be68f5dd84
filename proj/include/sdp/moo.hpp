// Shared configuration and helpers for the multi-objective feature-selection
// searches. The swarm- and evolution-based searches keep continuous positions
// in [0,1] per gene and decode them with a 0.5 threshold.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdp/chromosome.hpp"
#include "sdp/rng.hpp"

namespace sdp {

enum class Optimizer { nsga2, mopso, mode };

inline std::string to_string(Optimizer o) {
    switch (o) {
        case Optimizer::nsga2: return "nsga2";
        case Optimizer::mopso: return "mopso";
        default: return "mode";
    }
}

inline Optimizer parse_optimizer(std::string_view s) {
    if (s == "nsga2") return Optimizer::nsga2;
    if (s == "mopso") return Optimizer::mopso;
    if (s == "mode") return Optimizer::mode;
    throw std::invalid_argument("unknown optimizer '" + std::string(s) + "'");
}

struct MooConfig {
    std::size_t pop_size = 100;
    std::size_t iterations = 100;

    // Genetic search operators.
    double crossover_prob = 0.6;
    double mutation_prob = 0.1;

    // Swarm movement and archive.
    double inertia = 0.729;
    double c1 = 1.49;
    double c2 = 2.0;
    std::size_t archive_size = 100;
    std::size_t grid_divisions = 50;

    // Differential evolution.
    double de_weight = 0.5;
    double de_crossover_prob = 0.5;
};

inline void validate(const MooConfig& cfg) {
    if (cfg.pop_size < 4) throw std::invalid_argument("population size must be at least 4");
    if (cfg.iterations < 1) throw std::invalid_argument("iteration count must be positive");
    if (cfg.archive_size < 1) throw std::invalid_argument("archive size must be positive");
    if (cfg.grid_divisions < 1) throw std::invalid_argument("grid divisions must be positive");
}

namespace detail {

inline std::vector<std::uint8_t> binarize_position(const std::vector<double>& x) {
    std::vector<std::uint8_t> genes(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) genes[j] = x[j] >= 0.5;
    return genes;
}

// Continuous analogue of chromosome repair: when no coordinate clears the
// decoding threshold, push one random coordinate into the upper half.
inline void repair_position(std::vector<double>& x, std::vector<std::uint8_t>& genes, Rng& rng) {
    if (popcount(genes) != 0) return;
    const std::size_t j = rng.below(x.size());
    x[j] = 0.5 + 0.5 * rng.uniform();
    genes[j] = 1;
}

} // namespace detail

} // namespace sdp
