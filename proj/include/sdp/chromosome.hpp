// Binary feature-selection chromosomes and their variation operators.
//
// A chromosome has one gene per feature; gene j set means feature j stays in
// the model. Fitness is two maximized objectives: features removed
// (gene count minus set bits) and validation AUC.

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdp/rng.hpp"

namespace sdp {

struct Individual {
    std::vector<std::uint8_t> genes;
    double f_removed = 0.0; // gene count - set bits, maximized
    double f_auc = 0.0;     // validation AUC, maximized

    // Filled in by the non-dominated sorting utilities.
    std::size_t rank = 0;
    double crowding = 0.0;
};

inline std::size_t popcount(const std::vector<std::uint8_t>& genes) {
    return std::accumulate(genes.begin(), genes.end(), std::size_t{0},
                           [](std::size_t s, std::uint8_t g) { return s + (g != 0); });
}

inline std::string bitstring(const std::vector<std::uint8_t>& genes) {
    std::string s(genes.size(), '0');
    for (std::size_t j = 0; j < genes.size(); ++j)
        if (genes[j]) s[j] = '1';
    return s;
}

inline std::vector<std::uint8_t> genes_from_bitstring(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty bitstring");
    std::vector<std::uint8_t> genes(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] != '0' && s[j] != '1') throw std::invalid_argument("bitstring must be 0/1");
        genes[j] = s[j] == '1';
    }
    return genes;
}

// 0/1 multipliers for the columnwise feature scaling.
inline std::vector<double> genes_to_scale(const std::vector<std::uint8_t>& genes) {
    std::vector<double> scale(genes.size());
    for (std::size_t j = 0; j < genes.size(); ++j) scale[j] = genes[j] ? 1.0 : 0.0;
    return scale;
}

// An all-zero chromosome encodes no model; give it one random feature back.
inline void repair(std::vector<std::uint8_t>& genes, Rng& rng) {
    if (popcount(genes) == 0) genes[rng.below(genes.size())] = 1;
}

inline std::vector<std::uint8_t> random_genes(std::size_t length, Rng& rng) {
    std::vector<std::uint8_t> genes(length);
    for (auto& g : genes) g = rng.bernoulli(0.5);
    repair(genes, rng);
    return genes;
}

// Swaps the tails after a cut point drawn from [1, length-1]. The total
// number of set bits across the pair is unchanged.
inline std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>
single_point_crossover(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
                       Rng& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("chromosome length mismatch");
    if (a.size() < 2) return {a, b};
    const std::size_t cut = 1 + rng.below(a.size() - 1);
    auto c1 = a, c2 = b;
    for (std::size_t j = cut; j < a.size(); ++j) std::swap(c1[j], c2[j]);
    return {c1, c2};
}

// With probability pm flips exactly one uniformly chosen gene.
inline void mutate_one_gene(std::vector<std::uint8_t>& genes, double pm, Rng& rng) {
    if (rng.bernoulli(pm)) {
        const std::size_t j = rng.below(genes.size());
        genes[j] ^= 1;
    }
}

} // namespace sdp
