// Shared test fixtures: a deterministic synthetic defect-dataset generator
// whose shapes mirror the NASA and PROMISE corpora, plus small filesystem
// helpers. Real metric files are not redistributable, so the suites run on
// generated data with the same row/feature/defect counts.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdp/dataset.hpp"
#include "sdp/rng.hpp"

namespace fixtures {

struct CorpusShape {
    const char* name;
    std::size_t rows;
    std::size_t features;
    std::size_t defective;
};

// Row/feature/defect counts of the fourteen benchmark datasets.
inline constexpr CorpusShape corpus_shapes[] = {
    {"cm1", 327, 37, 42},     {"kc3", 200, 39, 36},      {"mc1", 1988, 38, 46},
    {"mc2", 125, 39, 44},     {"mw1", 264, 37, 27},      {"pc2", 1585, 36, 16},
    {"pc4", 1287, 37, 177},   {"pc5", 1711, 38, 471},    {"ant17", 745, 20, 166},
    {"camel16", 965, 20, 188}, {"jedit43", 492, 20, 11}, {"synapse11", 157, 20, 16},
    {"poi20", 314, 20, 37},   {"log4j10", 135, 20, 34},
};

inline double normal(sdp::Rng& rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Synthetic defect data with overlapping classes: the first n_inform columns
// carry a shifted signal for defective rows, the rest is noise. Minority rows
// alternate between a clear cluster (shift_far) and one buried in the
// majority overlap (shift_near) so sparse minorities are genuinely hard.
// Columns get distinct affine ranges so normalization stays load-bearing.
inline sdp::Dataset make_synthetic(const std::string& name, std::size_t rows,
                                   std::size_t features, std::size_t defective,
                                   std::size_t n_inform, double shift_far,
                                   double shift_near, std::uint64_t seed) {
    sdp::Rng rng(sdp::derive_seed(0xbe9c4, seed ^ sdp::splitmix64(rows * 131 + features)));

    sdp::Dataset ds;
    ds.name = name;
    for (std::size_t c = 0; c < features; ++c)
        ds.feature_names.push_back("m" + std::to_string(c));
    ds.features = sdp::Matrix(rows, features);
    ds.labels.assign(rows, 0);

    for (std::size_t r = 0; r < rows; ++r) {
        const bool defect = r < defective;
        ds.labels[r] = defect ? 1 : 0;
        const double cluster_shift = defect ? (r % 2 == 0 ? shift_far : shift_near) : 0.0;
        for (std::size_t c = 0; c < features; ++c) {
            double v = normal(rng);
            if (c < n_inform) {
                const double strength = 0.5 + 0.5 * static_cast<double>(c) /
                                                  static_cast<double>(n_inform);
                v += cluster_shift * strength;
            }
            const double col_scale = 1.0 + static_cast<double>(c % 5) * 3.0;
            const double col_offset = static_cast<double>(c % 7) * 10.0;
            ds.features(r, c) = v * col_scale + col_offset;
        }
    }
    return ds;
}

inline sdp::Dataset make_corpus(const CorpusShape& shape, std::uint64_t seed) {
    return make_synthetic(shape.name, shape.rows, shape.features, shape.defective,
                          std::min<std::size_t>(8, shape.features), 1.0, 0.35, seed);
}

inline const CorpusShape& shape_named(const std::string& name) {
    for (const auto& s : corpus_shapes)
        if (name == s.name) return s;
    throw std::invalid_argument("unknown corpus shape '" + name + "'");
}

// Fresh per-test scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sdp_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fixtures
