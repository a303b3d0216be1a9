#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gbv {

using rational = boost::multiprecision::cpp_rational;

std::string to_string(const rational& r);  // "p/q", or "p" when q = 1
rational parse_rational(std::string_view text);
inline double to_double(const rational& r) { return static_cast<double>(r); }

// Closed interval [lo, hi] with lo < hi inside [0, 1].
class interval {
public:
    interval(rational lo, rational hi);
    const rational& lo() const { return lo_; }
    const rational& hi() const { return hi_; }
    rational length() const { return hi_ - lo_; }
    friend bool operator==(const interval&, const interval&) = default;

private:
    rational lo_;
    rational hi_;
};

// Sorted by lo, pairwise disjoint interiors; abutting endpoints are allowed.
using interval_family = std::vector<interval>;

bool is_nonoverlapping(const interval_family& family);

// Right-continuous piecewise-constant function on [0, 1]:
// f = values[j] on [t_j, t_{j+1}) and f(1) = value_at_one.
class step_function {
public:
    // Merges equal adjacent values. Throws error on malformed breakpoints.
    step_function(std::vector<rational> breakpoints, std::vector<double> values, double value_at_one);

    static step_function constant(double c);

    const std::vector<rational>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    double value_at_one() const { return value_at_one_; }
    std::size_t pieces() const { return values_.size(); }

    // Throws out_of_domain outside [0, 1].
    double evaluate(const rational& x) const;

    // Values at the breakpoints t_0 .. t_m: values[0..m-1], then value_at_one.
    // Every value f attains appears here, and a point of [0, 1] can be moved
    // to the left end of its piece without changing f.
    std::vector<double> grid_values() const;

    double sup_abs() const;
    bool is_constant() const;
    step_function scaled(double c) const;

    friend bool operator==(const step_function&, const step_function&) = default;

private:
    std::vector<rational> breakpoints_;
    std::vector<double> values_;
    double value_at_one_;
};

double increment(const step_function& f, const interval& i);

// Breakpoints (always 0 and 1) at which f attains the extreme value of a
// maximal monotone run of grid_values().
std::vector<rational> monotone_extrema_points(const step_function& f);

struct value_range {
    double lo = -1.0;
    double hi = 1.0;
};

// Breakpoints are multiples of 1/max(60, 2 * pieces); reproducible from seed.
step_function random_step_function(std::size_t pieces, value_range range, std::uint64_t seed);

}  // namespace gbv
