#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace gbv {

// Nonnegative quantities are carried as their natural logarithm; zero maps to
// -infinity.
inline constexpr double log_zero = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
    if (a == log_zero) return b;
    if (b == log_zero) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum_exp(std::span<const double> terms) {
    double hi = log_zero;
    for (double t : terms) hi = std::max(hi, t);
    if (hi == log_zero) return log_zero;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - hi);
    return hi + std::log(sum);
}

// log(|x|^p) with 0^p := 0 for p > 0 and 0^0 := 1.
inline double log_abs_pow(double x, double p) {
    if (p == 0.0) return 0.0;
    if (x == 0.0) return log_zero;
    return p * std::log(std::abs(x));
}

inline double exp_or_zero(double log_value) {
    return log_value == log_zero ? 0.0 : std::exp(log_value);
}

// Relative closeness for values that may be (near) zero.
inline bool relatively_close(double a, double b, double rel) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= rel * scale || scale == 0.0;
}

}  // namespace gbv
