#include "gbv/stepfn.hpp"

#include "gbv/errors.hpp"
#include "gbv/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gbv {

std::string to_string(const rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw error("malformed rational '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw error("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw error("malformed rational '" + std::string(text) + "'");
        return boost::multiprecision::cpp_int(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational(parse_int(text));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw error("zero denominator in '" + std::string(text) + "'");
    return rational(parse_int(text.substr(0, slash)), den);
}

interval::interval(rational lo, rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ >= 0 && lo_ < hi_ && hi_ <= 1))
        throw out_of_domain("interval [" + to_string(lo_) + ", " + to_string(hi_) + "] is not inside [0, 1]");
}

bool is_nonoverlapping(const interval_family& family) {
    for (std::size_t i = 1; i < family.size(); ++i)
        if (family[i].lo() < family[i - 1].hi()) return false;
    return true;
}

step_function::step_function(std::vector<rational> breakpoints, std::vector<double> values, double value_at_one)
    : value_at_one_(value_at_one) {
    if (values.empty() || breakpoints.size() != values.size() + 1)
        throw error("a step function needs m >= 1 values and m + 1 breakpoints");
    if (breakpoints.front() != 0 || breakpoints.back() != 1) throw error("breakpoints must start at 0 and end at 1");
    for (std::size_t j = 1; j < breakpoints.size(); ++j)
        if (!(breakpoints[j - 1] < breakpoints[j])) throw error("breakpoints must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw error("step function values must be finite");
    if (!std::isfinite(value_at_one)) throw error("step function values must be finite");

    breakpoints_.push_back(breakpoints.front());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!values_.empty() && values_.back() == values[j]) {
            breakpoints_.back() = breakpoints[j + 1];
            continue;
        }
        values_.push_back(values[j]);
        breakpoints_.push_back(breakpoints[j + 1]);
    }
}

step_function step_function::constant(double c) { return step_function({rational(0), rational(1)}, {c}, c); }

double step_function::evaluate(const rational& x) const {
    if (x < 0 || x > 1) throw out_of_domain("x = " + to_string(x) + " is outside [0, 1]");
    if (x == 1) return value_at_one_;
    // First breakpoint strictly greater than x closes the piece containing x.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

std::vector<double> step_function::grid_values() const {
    std::vector<double> w = values_;
    w.push_back(value_at_one_);
    return w;
}

double step_function::sup_abs() const {
    double s = std::abs(value_at_one_);
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

bool step_function::is_constant() const { return values_.size() == 1 && values_[0] == value_at_one_; }

step_function step_function::scaled(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return step_function(breakpoints_, std::move(v), value_at_one_ * c);
}

double increment(const step_function& f, const interval& i) { return f.evaluate(i.hi()) - f.evaluate(i.lo()); }

std::vector<rational> monotone_extrema_points(const step_function& f) {
    const auto w = f.grid_values();
    const auto& t = f.breakpoints();
    const std::size_t m = w.size() - 1;
    std::vector<rational> points{t.front()};
    auto sign = [](double d) { return (d > 0) - (d < 0); };
    for (std::size_t j = 1; j < m; ++j) {
        const int before = sign(w[j] - w[j - 1]);
        const int after = sign(w[j + 1] - w[j]);
        if (after != 0 && before != after) points.push_back(t[j]);
    }
    if (m > 0) points.push_back(t.back());
    return points;
}

step_function random_step_function(std::size_t pieces, value_range range, std::uint64_t seed) {
    if (pieces < 1) throw error("a step function needs at least one piece");
    if (pieces > 1 && !(range.hi > range.lo)) throw error("value range is empty");
    rng_engine rng(seed);
    const std::int64_t den = std::max<std::int64_t>(60, 2 * static_cast<std::int64_t>(pieces));
    std::set<std::int64_t> cuts;
    while (cuts.size() + 1 < pieces) cuts.insert(uniform_int(rng, 1, den - 1));

    std::vector<rational> breakpoints{rational(0)};
    for (auto c : cuts) breakpoints.emplace_back(c, den);
    breakpoints.emplace_back(1);

    std::vector<double> values;
    while (values.size() < pieces) {
        const double v = uniform_real(rng, range.lo, range.hi);
        if (!values.empty() && values.back() == v) continue;
        values.push_back(v);
    }
    const double at_one = uniform01(rng) < 0.25 ? uniform_real(rng, range.lo, range.hi) : values.back();
    return step_function(std::move(breakpoints), std::move(values), at_one);
}

}  // namespace gbv
