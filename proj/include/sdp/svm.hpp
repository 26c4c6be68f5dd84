// Soft-margin RBF support vector machine trained by sequential minimal
// optimization with maximal-violating-pair working set selection.
//
// Feature multipliers are applied columnwise before the kernel: a zero drops
// the column from the model entirely, a fractional value scales it. The
// default gamma is 1 / (number of active columns).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdp/dataset.hpp"

namespace sdp {

struct SvmParams {
    double C = 1.0;
    double gamma = 0.0; // <= 0 means 1 / active feature count
    double tol = 1e-3;
    std::size_t max_iter = 200000;
};

class RbfSvm {
public:
    // X holds raw feature rows, y holds 0/1 labels, feature_scale has one
    // multiplier per column.
    RbfSvm(const Matrix& X, const std::vector<int>& y, std::span<const double> feature_scale,
           const SvmParams& params = {}) {
        const std::size_t n = X.rows();
        if (y.size() != n) throw std::invalid_argument("label count mismatch");
        if (feature_scale.size() != X.cols()) throw std::invalid_argument("scale length mismatch");
        for (std::size_t c = 0; c < feature_scale.size(); ++c)
            if (feature_scale[c] != 0.0) active_cols_.push_back(c);
        if (active_cols_.empty()) throw std::invalid_argument("no active features");
        scale_.assign(feature_scale.begin(), feature_scale.end());

        bool has_pos = false, has_neg = false;
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i) {
            ys[i] = y[i] == 1 ? 1.0 : -1.0;
            (y[i] == 1 ? has_pos : has_neg) = true;
        }
        if (!has_pos || !has_neg) throw std::invalid_argument("training data is single-class");

        gamma_ = params.gamma > 0.0 ? params.gamma
                                    : 1.0 / static_cast<double>(active_cols_.size());

        // Scaled views of the training rows, restricted to active columns.
        Matrix xs(n, active_cols_.size());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < active_cols_.size(); ++a)
                xs(i, a) = X(i, active_cols_[a]) * scale_[active_cols_[a]];

        std::vector<double> alpha = solve_dual(xs, ys, params);

        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i] <= 0.0) continue;
            sv_.append_row(xs.row(i));
            coef_.push_back(alpha[i] * ys[i]);
            support_rows_.push_back(i);
        }
    }

    // Signed distance-like score; positive favors the defective class.
    double decision_value(std::span<const double> x) const {
        if (x.size() != scale_.size()) throw std::invalid_argument("feature count mismatch");
        std::vector<double> q(active_cols_.size());
        for (std::size_t a = 0; a < active_cols_.size(); ++a)
            q[a] = x[active_cols_[a]] * scale_[active_cols_[a]];
        double f = b_;
        for (std::size_t s = 0; s < sv_.rows(); ++s) {
            auto r = sv_.row(s);
            double d2 = 0.0;
            for (std::size_t a = 0; a < q.size(); ++a) {
                const double d = r[a] - q[a];
                d2 += d * d;
            }
            f += coef_[s] * std::exp(-gamma_ * d2);
        }
        return f;
    }

    int predict(std::span<const double> x) const { return decision_value(x) >= 0.0 ? 1 : 0; }

    std::size_t n_support() const { return sv_.rows(); }
    // Training-row index and signed weight alpha*y of each support vector.
    const std::vector<std::size_t>& support_rows() const { return support_rows_; }
    const std::vector<double>& coefficients() const { return coef_; }
    std::size_t iterations() const { return iterations_; }
    double bias() const { return b_; }
    double gamma() const { return gamma_; }

private:
    // Maximal-violating-pair SMO on the dual problem min ½aᵀQa − eᵀa,
    // Q_ij = y_i y_j K_ij, 0 <= a_i <= C. Stops when the gap between the most
    // violating up/low scores falls to tol.
    std::vector<double> solve_dual(const Matrix& xs, const std::vector<double>& ys,
                                   const SvmParams& params) {
        const std::size_t n = xs.rows();
        const double C = params.C;

        std::vector<double> K(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            K[i * n + i] = 1.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                auto ri = xs.row(i), rj = xs.row(j);
                double d2 = 0.0;
                for (std::size_t c = 0; c < ri.size(); ++c) {
                    const double d = ri[c] - rj[c];
                    d2 += d * d;
                }
                K[i * n + j] = K[j * n + i] = std::exp(-gamma_ * d2);
            }
        }

        std::vector<double> alpha(n, 0.0), grad(n, -1.0);
        double m_final = 0.0, M_final = 0.0;
        for (iterations_ = 0; iterations_ < params.max_iter; ++iterations_) {
            // i: largest -yG over the set still allowed to grow upward,
            // j: smallest -yG over the set still allowed to shrink.
            double m_val = -std::numeric_limits<double>::infinity();
            double M_val = std::numeric_limits<double>::infinity();
            std::size_t i = n, j = n;
            for (std::size_t t = 0; t < n; ++t) {
                const double score = -ys[t] * grad[t];
                const bool in_up = (ys[t] > 0 && alpha[t] < C) || (ys[t] < 0 && alpha[t] > 0);
                const bool in_low = (ys[t] < 0 && alpha[t] < C) || (ys[t] > 0 && alpha[t] > 0);
                if (in_up && score > m_val) {
                    m_val = score;
                    i = t;
                }
                if (in_low && score < M_val) {
                    M_val = score;
                    j = t;
                }
            }
            m_final = m_val;
            M_final = M_val;
            if (i == n || j == n || m_val - M_val <= params.tol) break;

            const double old_ai = alpha[i], old_aj = alpha[j];
            const double kij = K[i * n + j];
            constexpr double tau = 1e-12;
            if (ys[i] != ys[j]) {
                double quad = 2.0 + 2.0 * kij;
                if (quad <= 0.0) quad = tau;
                const double delta = (-grad[i] - grad[j]) / quad;
                const double diff = alpha[i] - alpha[j];
                alpha[i] += delta;
                alpha[j] += delta;
                if (diff > 0.0) {
                    if (alpha[j] < 0.0) {
                        alpha[j] = 0.0;
                        alpha[i] = diff;
                    }
                } else if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
                if (diff > 0.0) {
                    if (alpha[i] > C) {
                        alpha[i] = C;
                        alpha[j] = C - diff;
                    }
                } else if (alpha[j] > C) {
                    alpha[j] = C;
                    alpha[i] = C + diff;
                }
            } else {
                double quad = 2.0 - 2.0 * kij;
                if (quad <= 0.0) quad = tau;
                const double delta = (grad[i] - grad[j]) / quad;
                const double sum = alpha[i] + alpha[j];
                alpha[i] -= delta;
                alpha[j] += delta;
                if (sum > C) {
                    if (alpha[i] > C) {
                        alpha[i] = C;
                        alpha[j] = sum - C;
                    }
                } else if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
                if (sum > C) {
                    if (alpha[j] > C) {
                        alpha[j] = C;
                        alpha[i] = sum - C;
                    }
                } else if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }

            const double di = alpha[i] - old_ai, dj = alpha[j] - old_aj;
            for (std::size_t t = 0; t < n; ++t)
                grad[t] += ys[i] * ys[t] * K[i * n + t] * di + ys[j] * ys[t] * K[j * n + t] * dj;
        }
        b_ = (m_final + M_final) / 2.0;
        return alpha;
    }

    std::vector<std::size_t> active_cols_;
    std::vector<double> scale_;
    Matrix sv_{0, 0};
    std::vector<double> coef_;
    std::vector<std::size_t> support_rows_;
    double gamma_ = 0.0;
    double b_ = 0.0;
    std::size_t iterations_ = 0;
};

// Trains on one dataset and returns decision values for another.
inline std::vector<double> svm_decision_values(const Dataset& train, const Dataset& test,
                                               std::span<const double> feature_scale,
                                               const SvmParams& params = {}) {
    RbfSvm model(train.features, train.labels, feature_scale, params);
    std::vector<double> out(test.n_rows());
    for (std::size_t i = 0; i < test.n_rows(); ++i)
        out[i] = model.decision_value(test.features.row(i));
    return out;
}

} // namespace sdp
