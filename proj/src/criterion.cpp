#include "gbv/criterion.hpp"

#include "gbv/errors.hpp"
#include "gbv/logdomain.hpp"
#include "gbv/variation.hpp"
#include "gbv/wiener.hpp"

#include <algorithm>
#include <cmath>

namespace gbv {

namespace {

struct scan_state {
    double best_log = log_zero;
    double best_k = 0.0;

    void offer(double k, double log_value) {
        if (log_value > best_log || (log_value == best_log && k < best_k)) {
            best_log = log_value;
            best_k = k;
        }
    }
};

// count >= 2 geometrically spaced integers in [lo, hi], both ends included.
std::vector<double> geometric_points(double lo, double hi, std::size_t count) {
    std::vector<double> points;
    points.reserve(count);
    const double log_lo = std::log(lo);
    const double span = std::log(hi) - log_lo;
    points.push_back(lo);
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double k = std::round(std::exp(log_lo + span * static_cast<double>(i) / static_cast<double>(count - 1)));
        const double clamped = std::clamp(k, lo, hi);
        if (clamped != points.back()) points.push_back(clamped);
    }
    if (hi != points.back()) points.push_back(hi);
    return points;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2) return 0.0;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx == 0.0 ? 0.0 : sxy / sxx;
}

std::size_t quarter(std::size_t n) { return std::max<std::size_t>(1, n / 4); }

}  // namespace

indicator_row hps_indicator(reciprocal_sums& lambda, double p, const sequence_spec& q, const sequence_spec& delta,
                            long long n, std::size_t scan_budget) {
    if (!(p >= 1.0)) throw domain_error("p must be >= 1");
    if (scan_budget < 2) throw error("scan budget must be at least 2");
    const double upper = std::floor(delta.eval_at(n));
    if (upper < 1.0) throw domain_error("floor(delta(n)) < 1 leaves no admissible k");
    const double a = 1.0 / q.eval_at(n);
    const double b = 1.0 / p;

    indicator_row row;
    row.n = n;
    scan_state state;
    const double exact_limit = static_cast<double>(std::min(scan_budget, lambda.cache_budget()));
    if (upper <= exact_limit) {
        const auto last = static_cast<std::size_t>(upper);
        lambda.partial_sum(last);
        for (std::size_t k = 1; k <= last; ++k)
            state.offer(static_cast<double>(k),
                        a * std::log(static_cast<double>(k)) - b * std::log(lambda.value(k)));
        row.exact = true;
    } else {
        auto objective = [&](double k) { return a * std::log(k) - b * lambda.log_estimate(k); };
        for (double k : geometric_points(1.0, upper, scan_budget)) state.offer(k, objective(k));
        const double lo = std::max(1.0, std::floor(state.best_k / 10.0));
        const double hi = std::min(upper, std::ceil(state.best_k * 10.0));
        if (hi - lo + 1.0 <= static_cast<double>(scan_budget)) {
            for (double k = lo; k <= hi; k += 1.0) state.offer(k, objective(k));
        } else {
            for (double k : geometric_points(lo, hi, scan_budget)) state.offer(k, objective(k));
        }
        row.exact = false;
    }
    row.k_star = state.best_k;
    row.log_value = state.best_log;
    row.value = std::exp(state.best_log);
    return row;
}

sequence_spec dyadic_delta(long long horizon) { return make_spec("2^n", sequence_role::delta, std::max(2LL, horizon)); }

indicator_row goginava_indicator(reciprocal_sums& lambda, const sequence_spec& q, long long n,
                                 std::size_t scan_budget) {
    return hps_indicator(lambda, 1.0, q, dyadic_delta(), n, scan_budget);
}

indicator_profile limsup_profile(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                 const sequence_spec& delta, std::span<const long long> n_values,
                                 std::size_t scan_budget) {
    if (n_values.empty()) throw error("profile needs at least one n");
    std::vector<long long> ns(n_values.begin(), n_values.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    indicator_profile profile;
    for (long long n : ns) profile.rows.push_back(hps_indicator(lambda, p, q, delta, n, scan_budget));

    auto& s = profile.summary;
    double best_log = log_zero;
    for (const auto& row : profile.rows) {
        if (s.attaining_n == 0 || row.log_value > best_log) {
            best_log = row.log_value;
            s.attaining_n = row.n;
        }
    }
    s.max_value = std::exp(best_log);

    const std::size_t tail = quarter(profile.rows.size());
    std::vector<double> x, y;
    for (std::size_t i = profile.rows.size() - tail; i < profile.rows.size(); ++i) {
        x.push_back(std::log(static_cast<double>(profile.rows[i].n)));
        y.push_back(profile.rows[i].log_value);
    }
    s.tail_trend_slope = least_squares_slope(x, y);
    return profile;
}

const char* to_string(inclusion_verdict verdict) {
    switch (verdict) {
        case inclusion_verdict::evidence_included: return "evidence_included";
        case inclusion_verdict::evidence_excluded: return "evidence_excluded";
        case inclusion_verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

inclusion_report decide_inclusion(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                  const sequence_spec& delta, std::span<const long long> n_values,
                                  std::size_t scan_budget, const decide_options& options) {
    inclusion_report report;
    report.profile = limsup_profile(lambda, p, q, delta, n_values, scan_budget);
    const auto& rows = report.profile.rows;
    const std::size_t part = quarter(rows.size());

    double first = log_zero, last = log_zero;
    for (std::size_t i = 0; i < part; ++i) first = std::max(first, rows[i].log_value);
    for (std::size_t i = rows.size() - part; i < rows.size(); ++i) last = std::max(last, rows[i].log_value);
    report.first_quarter_max = std::exp(first);
    report.last_quarter_max = std::exp(last);

    bool increasing = part >= 2;
    for (std::size_t i = rows.size() - part + 1; i < rows.size(); ++i)
        increasing = increasing && rows[i].log_value > rows[i - 1].log_value;
    report.last_quarter_increasing = increasing;

    const double slope = report.profile.summary.tail_trend_slope;
    if (report.last_quarter_max <= options.bound_factor * report.first_quarter_max && slope <= 0.0)
        report.verdict = inclusion_verdict::evidence_included;
    else if (slope > options.slope_threshold && increasing)
        report.verdict = inclusion_verdict::evidence_excluded;
    else
        report.verdict = inclusion_verdict::inconclusive;

    report.note = "finite-horizon evidence over n in [" + std::to_string(rows.front().n) + ", " +
                  std::to_string(rows.back().n) + "]; not a proof of boundedness or unboundedness";
    return report;
}

inequality_check check_rearrangement_inequality(std::span<const double> x, std::span<const double> y,
                                                double exponent, double slack) {
    if (x.empty() || x.size() != y.size()) throw error("x and y must be nonempty and of equal length");
    if (!(exponent >= 0.0) || !std::isfinite(exponent)) throw domain_error("exponent must be a finite real >= 0");
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0.0 || y[j] < 0.0) throw negative_input("inputs must be nonnegative");
        if (j > 0 && (x[j] > x[j - 1] || y[j] > y[j - 1])) throw sort_violation("inputs must be nonincreasing");
    }
    if (!(y[0] > 0.0)) throw domain_error("y_1 must be positive");

    using real = long double;
    const real e = exponent;
    auto power = [&](real base) { return e == 0 ? real(1) : std::pow(base, e); };

    real lhs = 0, dot = 0, prefix = 0, factor = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        lhs += power(x[j]);
        dot += static_cast<real>(x[j]) * y[j];
        prefix += y[j];
        factor = std::max(factor, static_cast<real>(j + 1) / power(prefix));
    }
    const real rhs = power(dot) * factor;

    inequality_check check;
    check.lhs = static_cast<double>(lhs);
    check.rhs = static_cast<double>(rhs);
    check.holds = lhs <= rhs * (1 + static_cast<real>(slack));
    return check;
}

inequality_check check_sufficiency_bound(const step_function& f, reciprocal_sums& lambda, double p,
                                         const sequence_spec& q, const sequence_spec& delta, long long horizon,
                                         std::size_t scan_budget, double slack) {
    inequality_check check;
    check.lhs = wiener_variation(f, q, delta, horizon).value;
    const double variation = lambda_p_variation(f, lambda, p).value;
    double factor = 0.0;
    for (long long n = 1; n <= horizon; ++n)
        factor = std::max(factor, hps_indicator(lambda, p, q, delta, n, scan_budget).value);
    check.rhs = variation * factor;
    check.holds = check.lhs <= check.rhs * (1 + slack);
    return check;
}

}  // namespace gbv
