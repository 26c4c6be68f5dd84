#include "sdp/stats.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "sdp/rng.hpp"
#include "support/bench_auc.hpp"

using sdp::Matrix;
using sdp::PValueMethod;

namespace {

Matrix table(const double* data, std::size_t rows, std::size_t cols) {
    Matrix m(0, cols);
    for (std::size_t r = 0; r < rows; ++r)
        m.append_row(std::vector<double>(data + r * cols, data + (r + 1) * cols));
    return m;
}

// Column pair (x, y) from a [rows][3] benchmark pair of tables.
void column_pair(const double (*bs)[3], const double (*st)[3], std::size_t rows,
                 std::size_t col, std::vector<double>& x, std::vector<double>& y) {
    x.clear();
    y.clear();
    for (std::size_t r = 0; r < rows; ++r) {
        x.push_back(bs[r][col]);
        y.push_back(st[r][col]);
    }
}

// Full 2^n enumeration of the two-sided exact p-value for integer ranks.
double exact_p_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) diffs.push_back(x[i] - y[i]);
    const std::size_t n = diffs.size();
    std::vector<double> abs_d;
    for (double d : diffs) abs_d.push_back(std::abs(d));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_d[a] < abs_d[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i + 1;
    std::size_t w_plus = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (diffs[i] > 0) w_plus += rank[i];
    const std::size_t total = n * (n + 1) / 2;
    const std::size_t w = std::min(w_plus, total - w_plus);
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) s += i + 1;
        if (s <= w) ++count;
    }
    return std::min(1.0, 2.0 * static_cast<double>(count) / std::pow(2.0, static_cast<double>(n)));
}

} // namespace

TEST_CASE("average ranks share ties", "[stats]") {
    const std::vector<double> v{3.0, 1.0, 4.0, 1.0, 5.0};
    const auto r = sdp::detail::average_ranks(v);
    CHECK(r == std::vector<double>{3.0, 1.5, 4.0, 1.5, 5.0});
    CHECK(sdp::detail::tie_term(v) == 6.0); // one group of two: 2^3 - 2
    const std::vector<double> all_same{2.0, 2.0, 2.0};
    CHECK(sdp::detail::tie_term(all_same) == 24.0); // 3^3 - 3
}

TEST_CASE("signed-rank test reproduces the benchmark comparisons", "[stats]") {
    std::vector<double> x, y;

    // First search, first corpus: no zeros, no ties, exact path.
    column_pair(fixtures::nasa_bs, fixtures::nasa_st, fixtures::n_nasa, 0, x, y);
    auto r = sdp::wilcoxon_signed_rank(x, y);
    CHECK(r.statistic == 16.0);
    CHECK(r.method == PValueMethod::exact);
    CHECK(r.p_value == Catch::Approx(0.84375).margin(1e-12));
    CHECK_FALSE(r.significant);
    CHECK(r.n_used == 8);

    // Third search, first corpus: one zero difference forces the
    // approximate path with n = 7.
    column_pair(fixtures::nasa_bs, fixtures::nasa_st, fixtures::n_nasa, 2, x, y);
    r = sdp::wilcoxon_signed_rank(x, y);
    CHECK(r.statistic == 11.0);
    CHECK(r.method == PValueMethod::normal_approx);
    CHECK(r.n_used == 7);
    CHECK(r.n_zeros_dropped == 1);
    // z = -3 / sqrt(35).
    CHECK(r.p_value == Catch::Approx(0.6121).margin(5e-4));

    // First search, second corpus.
    column_pair(fixtures::promise_bs, fixtures::promise_st, fixtures::n_promise, 0, x, y);
    r = sdp::wilcoxon_signed_rank(x, y);
    CHECK(r.statistic == 9.0);
    CHECK(r.p_value == Catch::Approx(0.84375).margin(1e-12));

    // Third search, second corpus: perfectly balanced rank sums.
    column_pair(fixtures::promise_bs, fixtures::promise_st, fixtures::n_promise, 2, x, y);
    r = sdp::wilcoxon_signed_rank(x, y);
    CHECK(r.statistic == 10.0);
    CHECK(r.w_plus + r.w_minus == 21.0);
    CHECK(r.p_value == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("exact p matches full enumeration on small samples", "[stats]") {
    sdp::Rng rng(0x3a7);
    int tested = 0;
    while (tested < 40) {
        const std::size_t n = 4 + rng.below(9); // 4..12
        std::vector<double> x(n), y(n);
        bool degenerate = false;
        std::vector<double> abs_d;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform();
            y[i] = rng.uniform();
            const double d = x[i] - y[i];
            if (d == 0.0) degenerate = true;
            abs_d.push_back(std::abs(d));
        }
        if (degenerate || sdp::detail::tie_term(abs_d) != 0.0) continue;
        const auto r = sdp::wilcoxon_signed_rank(x, y);
        REQUIRE(r.method == PValueMethod::exact);
        REQUIRE(r.p_value == Catch::Approx(exact_p_oracle(x, y)).margin(1e-12));
        ++tested;
    }
}

TEST_CASE("signed-rank test is shift-invariant and symmetric", "[stats]") {
    // Quarter-integer values and an integer shift keep every difference
    // exactly representable, so the shifted battery must match bit for bit.
    std::vector<double> x{3.25, 1.75, 6.00, 2.50, 0.75, 5.25};
    std::vector<double> y{3.00, 2.50, 5.50, 3.75, 0.25, 5.00};
    const auto base = sdp::wilcoxon_signed_rank(x, y);

    auto xs = x;
    auto ys = y;
    for (auto& v : xs) v += 3.0;
    for (auto& v : ys) v += 3.0;
    const auto shifted = sdp::wilcoxon_signed_rank(xs, ys);
    CHECK(shifted.statistic == base.statistic);
    CHECK(shifted.p_value == base.p_value);

    // Swapping the samples swaps w_plus and w_minus but not the p-value.
    const auto swapped = sdp::wilcoxon_signed_rank(y, x);
    CHECK(swapped.w_plus == base.w_minus);
    CHECK(swapped.w_minus == base.w_plus);
    CHECK(swapped.p_value == base.p_value);
}

TEST_CASE("signed-rank test rejects degenerate input", "[stats]") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_THROWS(sdp::wilcoxon_signed_rank(x, std::vector<double>{1.0, 2.0}));
    CHECK_THROWS(sdp::wilcoxon_signed_rank(x, x)); // every difference zero
}

TEST_CASE("friedman reproduces the four benchmark statistics", "[stats]") {
    auto m = table(&fixtures::nasa_bs[0][0], fixtures::n_nasa, 3);
    auto r = sdp::friedman(m);
    CHECK(r.statistic == Catch::Approx(6.2222).margin(5e-4));
    CHECK(r.p_value == Catch::Approx(0.0446).margin(5e-4));
    CHECK(r.significant);
    // Mean ranks of the three searches on the first corpus.
    CHECK(r.mean_ranks[0] == Catch::Approx(1.5).margin(1e-12));
    CHECK(r.mean_ranks[1] == Catch::Approx(2.625).margin(1e-12));
    CHECK(r.mean_ranks[2] == Catch::Approx(1.875).margin(1e-12));

    m = table(&fixtures::nasa_st[0][0], fixtures::n_nasa, 3);
    r = sdp::friedman(m);
    CHECK(r.statistic == Catch::Approx(12.9677).margin(5e-4));
    CHECK(r.p_value == Catch::Approx(0.0015).margin(5e-4));

    m = table(&fixtures::promise_bs[0][0], fixtures::n_promise, 3);
    r = sdp::friedman(m);
    CHECK(r.statistic == Catch::Approx(8.2727).margin(5e-4));
    CHECK(r.p_value == Catch::Approx(0.0160).margin(5e-4));

    m = table(&fixtures::promise_st[0][0], fixtures::n_promise, 3);
    r = sdp::friedman(m);
    CHECK(r.statistic == Catch::Approx(8.0).margin(1e-9));
    CHECK(r.p_value == Catch::Approx(0.0183).margin(5e-4));
}

TEST_CASE("friedman ranks are invariant to monotone row transforms", "[stats]") {
    const double rows[4][3] = {{0.5, 0.7, 0.6}, {0.4, 0.9, 0.8},
                               {0.3, 0.2, 0.6}, {0.8, 0.7, 0.9}};
    const auto base = sdp::friedman(table(&rows[0][0], 4, 3));
    Matrix warped(0, 3);
    for (std::size_t r = 0; r < 4; ++r) {
        // exp is strictly increasing, so ranks are untouched.
        std::vector<double> row;
        for (std::size_t c = 0; c < 3; ++c) row.push_back(std::exp(5.0 * rows[r][c]));
        warped.append_row(row);
    }
    const auto w = sdp::friedman(warped);
    CHECK(w.statistic == base.statistic);
    CHECK(w.rank_sums == base.rank_sums);
}

TEST_CASE("friedman handles within-row ties via average ranks", "[stats]") {
    // Row {1,1,2} ranks as {1.5, 1.5, 3}.
    const double rows[2][3] = {{1.0, 1.0, 2.0}, {3.0, 1.0, 2.0}};
    const auto r = sdp::friedman(table(&rows[0][0], 2, 3));
    CHECK(r.rank_sums[0] == 4.5);
    CHECK(r.rank_sums[1] == 2.5);
    CHECK(r.rank_sums[2] == 5.0);
    // Mean ranks always sum to k(k+1)/2.
    CHECK(r.mean_ranks[0] + r.mean_ranks[1] + r.mean_ranks[2] ==
          Catch::Approx(6.0).margin(1e-12));
}

TEST_CASE("friedman rejects degenerate tables", "[stats]") {
    const double one_row[1][3] = {{1.0, 2.0, 3.0}};
    CHECK_THROWS(sdp::friedman(table(&one_row[0][0], 1, 3)));
    // Every row fully tied: the correction denominator vanishes.
    const double tied[2][3] = {{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}};
    CHECK_THROWS(sdp::friedman(table(&tied[0][0], 2, 3)));
}

TEST_CASE("chi-square tail for two degrees of freedom is exponential", "[stats]") {
    // With df = 2 the survival function is exp(-x/2); cross-checks the
    // library distribution wiring.
    const double rows[3][3] = {{0.1, 0.2, 0.3}, {0.4, 0.6, 0.5}, {0.2, 0.3, 0.4}};
    const auto r = sdp::friedman(table(&rows[0][0], 3, 3));
    CHECK(r.p_value == Catch::Approx(std::exp(-r.statistic / 2.0)).margin(1e-12));
}

TEST_CASE("nemenyi critical differences from the embedded table", "[stats]") {
    CHECK(sdp::nemenyi_cd(3, 8, 0.05) == Catch::Approx(1.1715).margin(1e-4));
    CHECK(sdp::nemenyi_cd(3, 6, 0.05) == Catch::Approx(1.3529).margin(1e-3));
    CHECK(sdp::nemenyi_cd(2, 10, 0.05) == Catch::Approx(1.960 * std::sqrt(1.0 / 10.0)).margin(1e-12));
    CHECK(sdp::nemenyi_cd(3, 8, 0.10) == Catch::Approx(2.052 * std::sqrt(2.0 / 8.0)).margin(1e-12));
    // More datasets shrink the critical difference.
    CHECK(sdp::nemenyi_cd(3, 20) < sdp::nemenyi_cd(3, 10));
    CHECK_THROWS(sdp::nemenyi_cd(1, 8));
    CHECK_THROWS(sdp::nemenyi_cd(11, 8));
    CHECK_THROWS(sdp::nemenyi_cd(3, 1));
    CHECK_THROWS(sdp::nemenyi_cd(3, 8, 0.01));
}

TEST_CASE("nemenyi pairwise reading of the second-corpus comparison", "[stats]") {
    const auto res = sdp::nemenyi(table(&fixtures::nasa_st[0][0], fixtures::n_nasa, 3));
    CHECK(res.cd == Catch::Approx(1.1715).margin(1e-4));
    CHECK(res.mean_ranks[0] == Catch::Approx(1.3125).margin(1e-12));
    CHECK(res.mean_ranks[1] == Catch::Approx(3.0).margin(1e-12));
    CHECK(res.mean_ranks[2] == Catch::Approx(1.6875).margin(1e-12));
    // The swarm search separates from both others; they do not separate
    // from each other.
    CHECK(res.significant[1][0]);
    CHECK(res.significant[1][2]);
    CHECK_FALSE(res.significant[0][2]);
    // Matrix is symmetric with a false diagonal.
    for (std::size_t a = 0; a < 3; ++a) {
        CHECK_FALSE(res.significant[a][a]);
        for (std::size_t b = 0; b < 3; ++b)
            CHECK(res.significant[a][b] == res.significant[b][a]);
    }

    const auto none = sdp::nemenyi(table(&fixtures::nasa_bs[0][0], fixtures::n_nasa, 3));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK_FALSE(none.significant[a][b]);
}
