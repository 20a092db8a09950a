#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>

namespace weil {

/// Relative distance between coefficient vectors:
/// ‖a−b‖_∞ / max(1, ‖a‖_∞, ‖b‖_∞).  Stable across magnitudes and
/// exact-zero friendly.
inline double rel_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(),
                                   b.lpNorm<Eigen::Infinity>()});
    return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

inline double rel_residual(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

/// Integer power with overflow guard; exponent magnitude capped by caller.
inline std::int64_t ipow64(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Binomial coefficient C(n, k) for small nonnegative n, k.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

} // namespace weil
