// Single entry point over the three feature-selection searches.

#pragma once

#include "sdp/mode.hpp"
#include "sdp/mopso.hpp"
#include "sdp/nsga2.hpp"

namespace sdp {

inline std::vector<Individual> run_optimizer(Optimizer algo, SvmEvaluator& eval,
                                             const MooConfig& cfg, std::uint64_t seed) {
    switch (algo) {
        case Optimizer::nsga2: return run_nsga2(eval, cfg, seed);
        case Optimizer::mopso: return run_mopso(eval, cfg, seed);
        default: return run_mode(eval, cfg, seed);
    }
}

} // namespace sdp
