// Simulated binary crossover machinery for real-valued genes: the spread
// factor beta is drawn by inverting its polynomial CDF, and children sit
// symmetrically around the parent midpoint with that spread. A polynomial
// mutation companion is included; the binary feature-selection operators do
// not use either, they exist as verified utilities.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sdp {

// Inverse-CDF draw of the spread factor for distribution index n.
inline double sbx_beta(double u, double n) {
    if (u <= 0.0 || u >= 1.0) throw std::invalid_argument("u must be in (0,1)");
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (n + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (n + 1.0));
}

// Density of the spread factor.
inline double sbx_density(double beta, double n) {
    if (beta < 0.0) return 0.0;
    if (beta <= 1.0) return 0.5 * (n + 1.0) * std::pow(beta, n);
    return 0.5 * (n + 1.0) / std::pow(beta, n + 2.0);
}

// CDF of the spread factor.
inline double sbx_cdf(double beta, double n) {
    if (beta <= 0.0) return 0.0;
    if (beta <= 1.0) return 0.5 * std::pow(beta, n + 1.0);
    return 1.0 - 0.5 / std::pow(beta, n + 1.0);
}

// Children around the parent midpoint: the midpoint is preserved exactly and
// |c1 - c2| = beta * |p1 - p2|.
inline std::pair<double, double> sbx_children(double p1, double p2, double beta) {
    const double mid = 0.5 * (p1 + p2);
    const double half_spread = 0.5 * beta * (p2 - p1);
    return {mid - half_spread, mid + half_spread};
}

// Bounded polynomial mutation with distribution index n; u is the uniform
// draw in (0,1).
inline double polynomial_mutate(double x, double lo, double hi, double n, double u) {
    if (hi <= lo) throw std::invalid_argument("empty mutation interval");
    if (u <= 0.0 || u >= 1.0) throw std::invalid_argument("u must be in (0,1)");
    const double d1 = (x - lo) / (hi - lo), d2 = (hi - x) / (hi - lo);
    const double pw = 1.0 / (n + 1.0);
    double dq;
    if (u < 0.5) {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, n + 1.0);
        dq = std::pow(val, pw) - 1.0;
    } else {
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, n + 1.0);
        dq = 1.0 - std::pow(val, pw);
    }
    const double out = x + dq * (hi - lo);
    return out < lo ? lo : (out > hi ? hi : out);
}

} // namespace sdp
