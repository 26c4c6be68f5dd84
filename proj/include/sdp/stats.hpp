// Nonparametric comparison battery for per-dataset AUC tables: paired
// signed-rank test, tie-corrected Friedman rank test, and the Nemenyi
// critical difference for post-hoc pairwise reading.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "sdp/dataset.hpp"

namespace sdp {

namespace detail {

// Average ranks, 1 = smallest; tied values share the mean of their ranks.
inline std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

// Sum of t^3 - t over groups of tied values.
inline double tie_term(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    double total = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
        const auto t = static_cast<double>(j - i + 1);
        total += t * t * t - t;
        i = j + 1;
    }
    return total;
}

} // namespace detail

enum class PValueMethod { exact, normal_approx };

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0; // min(w_plus, w_minus)
    double p_value = 1.0;
    bool significant = false; // p < 0.05
    std::size_t n_used = 0;
    std::size_t n_zeros_dropped = 0;
    PValueMethod method = PValueMethod::exact;
};

// Two-sided signed-rank test on paired samples. Zero differences are
// dropped; |differences| get average ranks. The p-value is by exact
// enumeration when nothing was dropped, no ranks tie, and n <= 25; otherwise
// by the tie-corrected normal approximation without continuity correction.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("paired samples differ in length");
    std::vector<double> diffs;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d == 0.0)
            ++zeros;
        else
            diffs.push_back(d);
    }
    if (diffs.empty()) throw std::runtime_error("all paired differences are zero");

    const std::size_t n = diffs.size();
    std::vector<double> abs_d(n);
    for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::abs(diffs[i]);
    const auto ranks = detail::average_ranks(abs_d);
    const double ties = detail::tie_term(abs_d);

    WilcoxonResult res;
    res.n_used = n;
    res.n_zeros_dropped = zeros;
    for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0.0 ? res.w_plus : res.w_minus) += ranks[i];
    res.statistic = std::min(res.w_plus, res.w_minus);

    if (zeros == 0 && ties == 0.0 && n <= 25) {
        // Integer ranks 1..n: count rank subsets with sum <= statistic.
        res.method = PValueMethod::exact;
        const auto w = static_cast<std::size_t>(std::llround(res.statistic));
        const std::size_t max_sum = n * (n + 1) / 2;
        std::vector<double> ways(max_sum + 1, 0.0);
        ways[0] = 1.0;
        for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t s = max_sum; s >= r; --s) ways[s] += ways[s - r];
        double count = 0.0;
        for (std::size_t s = 0; s <= std::min(w, max_sum); ++s) count += ways[s];
        res.p_value = std::min(1.0, 2.0 * count / std::pow(2.0, static_cast<double>(n)));
    } else {
        res.method = PValueMethod::normal_approx;
        const double dn = static_cast<double>(n);
        const double mean = dn * (dn + 1.0) / 4.0;
        const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - ties / 48.0;
        if (var <= 0.0) throw std::runtime_error("degenerate signed-rank variance");
        const double z = (res.statistic - mean) / std::sqrt(var);
        boost::math::normal_distribution<double> norm;
        res.p_value = std::min(1.0, 2.0 * boost::math::cdf(norm, -std::abs(z)));
    }
    res.significant = res.p_value < 0.05;
    return res;
}

struct FriedmanResult {
    double statistic = 0.0; // tie-corrected chi-square
    double p_value = 1.0;
    bool significant = false; // p < 0.05
    std::vector<double> rank_sums;
    std::vector<double> mean_ranks;
    std::size_t n_datasets = 0;
    std::size_t k_methods = 0;
};

// Rank test over a datasets-by-methods value matrix. Within each row the
// largest value gets the highest rank; ties share average ranks.
inline FriedmanResult friedman(const Matrix& values) {
    const std::size_t N = values.rows(), k = values.cols();
    if (N < 2 || k < 2) throw std::invalid_argument("need at least 2 rows and 2 columns");

    FriedmanResult res;
    res.n_datasets = N;
    res.k_methods = k;
    res.rank_sums.assign(k, 0.0);
    double tie_sum = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        const auto ranks = detail::average_ranks(values.row(r));
        for (std::size_t c = 0; c < k; ++c) res.rank_sums[c] += ranks[c];
        tie_sum += detail::tie_term(values.row(r));
    }
    res.mean_ranks.resize(k);
    for (std::size_t c = 0; c < k; ++c) res.mean_ranks[c] = res.rank_sums[c] / static_cast<double>(N);

    const double dN = static_cast<double>(N), dk = static_cast<double>(k);
    double sq = 0.0;
    for (double rs : res.rank_sums) sq += rs * rs;
    const double raw = 12.0 / (dN * dk * (dk + 1.0)) * sq - 3.0 * dN * (dk + 1.0);
    const double correction = 1.0 - tie_sum / (dN * (dk * dk * dk - dk));
    if (correction <= 0.0) throw std::runtime_error("all rows fully tied");
    res.statistic = raw / correction;

    boost::math::chi_squared_distribution<double> chi2(dk - 1.0);
    res.p_value = boost::math::cdf(boost::math::complement(chi2, std::max(0.0, res.statistic)));
    res.significant = res.p_value < 0.05;
    return res;
}

// Critical difference for pairwise mean-rank comparison after a Friedman
// rejection: CD = q_alpha(k) * sqrt(k(k+1)/(6N)). The q constants are the
// studentized range at infinite df divided by sqrt(2), from Demsar (2006),
// JMLR 7:1-30, Table 5; k = 2..10, alpha in {0.05, 0.10}.
inline double nemenyi_cd(std::size_t k, std::size_t n, double alpha = 0.05) {
    static constexpr double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                     2.949, 3.031, 3.102, 3.164};
    static constexpr double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589,
                                     2.693, 2.780, 2.855, 2.920};
    if (k < 2 || k > 10) throw std::invalid_argument("k outside the embedded q table (2..10)");
    if (n < 2) throw std::invalid_argument("need n >= 2");
    const double* q = nullptr;
    if (std::abs(alpha - 0.05) < 1e-9)
        q = q05;
    else if (std::abs(alpha - 0.10) < 1e-9)
        q = q10;
    else
        throw std::invalid_argument("alpha must be 0.05 or 0.10");
    const double dk = static_cast<double>(k), dn = static_cast<double>(n);
    return q[k - 2] * std::sqrt(dk * (dk + 1.0) / (6.0 * dn));
}

struct NemenyiResult {
    double cd = 0.0;
    std::vector<double> mean_ranks;
    std::vector<std::vector<bool>> significant; // |mean rank gap| > cd
};

inline NemenyiResult nemenyi(const Matrix& values, double alpha = 0.05) {
    const auto fr = friedman(values);
    NemenyiResult res;
    res.cd = nemenyi_cd(fr.k_methods, fr.n_datasets, alpha);
    res.mean_ranks = fr.mean_ranks;
    res.significant.assign(fr.k_methods, std::vector<bool>(fr.k_methods, false));
    for (std::size_t a = 0; a < fr.k_methods; ++a)
        for (std::size_t b = 0; b < fr.k_methods; ++b)
            res.significant[a][b] =
                a != b && std::abs(res.mean_ranks[a] - res.mean_ranks[b]) > res.cd;
    return res;
}

} // namespace sdp
