#include "gbv/witness.hpp"

#include "gbv/criterion.hpp"
#include "gbv/errors.hpp"
#include "gbv/logdomain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gbv {

namespace {

constexpr double chain_slack = 1e-9;

big_int pow2(int e) { return big_int(1) << e; }

double to_real(const big_int& v) { return static_cast<double>(v); }

// a <= b in log-domain, up to chain_slack relative.
bool log_le(double a, double b) { return a <= b + chain_slack * std::max(1.0, std::abs(b)); }

rational level_start(int k) { return rational(big_int(1), pow2(k)); }

}  // namespace

double witness_threshold_log2(int k, double q_at_one) { return 2.0 * k + (k + 1) / q_at_one; }

witness_params find_witness_levels(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                   const sequence_spec& delta, int level_count,
                                   const witness_search_options& options) {
    if (level_count < 1) throw error("level count must be >= 1");
    witness_params params;
    params.p = p;
    params.q_at_one = q.eval_at(1);

    long long n = 0;
    for (int k = 1; k <= level_count; ++k) {
        const double threshold = witness_threshold_log2(k, params.q_at_one) * std::numbers::ln2;
        bool found = false;
        while (!found && ++n <= options.n_search_limit) {
            big_int floor_delta;
            try {
                floor_delta = delta.floor_at(n);
            } catch (const domain_error&) {
                break;  // delta(n) no longer representable
            }
            if (floor_delta < pow2(k + 2)) continue;
            const auto row = hps_indicator(lambda, p, q, delta, n, options.scan_budget);
            if (!(row.log_value > threshold)) continue;

            witness_level level;
            level.k = k;
            level.n_k = n;
            level.q_nk = q.eval_at(n);
            level.delta_floor = floor_delta;
            level.m_k = big_int(row.k_star);
            level.m_exact = row.exact;
            level.log_indicator = row.log_value;
            level.log_phi = -lambda.log_estimate(row.k_star);
            level.s_k = (floor_delta + pow2(k)) / pow2(k + 1);
            level.n_teeth = std::min(level.m_k, level.s_k);
            params.levels.push_back(std::move(level));
            found = true;
        }
        if (!found) throw not_found(k, options.n_search_limit);
    }
    return params;
}

comb_function::comb_function(std::vector<comb_level> levels) : levels_(std::move(levels)) {}

double comb_function::evaluate(const rational& x) const {
    if (x < 0 || x > 1) throw out_of_domain("x = " + to_string(x) + " is outside [0, 1]");
    if (x == 0 || x == 1) return 0.0;
    // Level k owns [1/2^k, 1/2^(k-1)).
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    int k = std::max<int>(1, static_cast<int>(boost::multiprecision::msb(den)) -
                                 static_cast<int>(boost::multiprecision::msb(num)));
    while (level_start(k) > x) ++k;
    while (k > 1 && level_start(k - 1) <= x) --k;

    const auto it = std::find_if(levels_.begin(), levels_.end(), [k](const comb_level& l) { return l.k == k; });
    if (it == levels_.end()) return 0.0;
    const rational offset = (x - it->start) / it->tooth_width;
    const big_int slot = boost::multiprecision::numerator(offset) / boost::multiprecision::denominator(offset);
    if (slot % 2 == 0 && slot / 2 < it->teeth) return it->height;
    return 0.0;
}

comb_function build_witness(const witness_params& params) {
    std::vector<comb_level> levels;
    for (const auto& l : params.levels) {
        comb_level c;
        c.k = l.k;
        c.start = level_start(l.k);
        c.tooth_width = rational(big_int(1), l.delta_floor);
        c.period = rational(big_int(2), l.delta_floor);
        c.teeth = l.n_teeth;
        c.log_height = -l.k * std::numbers::ln2 + l.log_phi / params.p;
        c.height = std::exp(c.log_height);
        levels.push_back(std::move(c));
    }
    return comb_function(std::move(levels));
}

std::vector<level_check> check_level_invariants(const witness_params& params) {
    std::vector<level_check> checks;
    long long previous_n = 0;
    int previous_k = 0;
    for (const auto& l : params.levels) {
        const int k = l.k;
        const big_int& d = l.delta_floor;
        auto add = [&](const char* name, bool holds) { checks.push_back({k, name, holds}); };
        add("levels consecutive", k == previous_k + 1);
        add("n_k increasing", l.n_k > previous_n);
        add("delta(n_k) >= 2^(k+2)", d >= pow2(k + 2));
        add("1 <= m_k <= delta(n_k)", l.m_k >= 1 && l.m_k <= d);
        add("s_k maximal", 2 * l.s_k * pow2(k) <= d + pow2(k) && d + pow2(k) < 2 * (l.s_k + 1) * pow2(k));
        add("(2 s_k - 1) / delta(n_k) >= 2^(-k-1)", (2 * l.s_k - 1) * pow2(k + 1) >= d);
        add("N_k = min(m_k, s_k)", l.n_teeth == std::min(l.m_k, l.s_k));
        add("2 N_k - 1 >= m_k / 2^(k+1)", (2 * l.n_teeth - 1) * pow2(k + 1) >= l.m_k);
        add("teeth inside [1/2^k, 1/2^(k-1))",
            level_start(k) + rational(2 * l.n_teeth - 1, d) <= rational(big_int(1), pow2(k - 1)));
        add("indicator above threshold",
            l.log_indicator > witness_threshold_log2(k, params.q_at_one) * std::numbers::ln2);
        previous_n = l.n_k;
        previous_k = k;
    }
    return checks;
}

norm_check verify_witness_norm(const witness_params& params, reciprocal_sums& lambda) {
    norm_check check;
    const double p = params.p;
    const double ln2 = std::numbers::ln2;
    long double total = 0.0L;
    for (const auto& l : params.levels) {
        norm_chain_level c;
        c.k = l.k;
        const double log_height = -l.k * ln2 + l.log_phi / p;
        const double teeth = to_real(l.n_teeth);
        c.log_norm = log_height + lambda.log_estimate(2.0 * teeth) / p;
        c.log_doubled = -l.k * ln2 + (ln2 + lambda.log_estimate(teeth) + l.log_phi) / p;
        c.log_ceiling = -l.k * ln2 + ln2 / p;
        if (!log_le(c.log_norm, c.log_doubled)) throw chain_violation(l.k, "H(2N_k) <= 2 H(N_k)");
        if (!log_le(c.log_doubled, c.log_ceiling)) throw chain_violation(l.k, "H(N_k) <= H(m_k)");
        total += std::exp(static_cast<long double>(c.log_norm));
        check.per_level.push_back(c);
    }
    check.total_bound = static_cast<double>(total);
    if (!(check.total_bound <= std::pow(2.0, 1.0 / p) * (1 + chain_slack)))
        throw chain_violation(0, "sum of level norms <= 2^(1/p)");
    check.holds = true;
    return check;
}

lower_bound_check verify_witness_variation_lowerbound(const witness_params& params, reciprocal_sums& lambda,
                                                      std::size_t level_index) {
    if (level_index >= params.levels.size()) throw error("no such witness level");
    const auto& l = params.levels[level_index];
    const double ln2 = std::numbers::ln2;
    const double p = params.p;
    const int k = l.k;

    const double m = to_real(l.m_k);
    const double log_h = lambda.log_estimate(m);
    if (std::abs(l.log_phi + log_h) > chain_slack * std::max(1.0, std::abs(log_h)))
        throw chain_violation(k, "Phi_k = 1 / H(m_k)");
    if (!((2 * l.n_teeth - 1) * pow2(k + 1) >= l.m_k)) throw chain_violation(k, "2 N_k - 1 >= m_k / 2^(k+1)");
    const double log_indicator = std::log(m) / l.q_nk - log_h / p;
    const double threshold = witness_threshold_log2(k, params.q_at_one) * ln2;
    if (!(log_indicator > threshold - chain_slack * std::abs(threshold)))
        throw chain_violation(k, "indicator at m_k above 2^(2k + (k+1)/q(1))");

    lower_bound_check check;
    check.k = k;
    check.log_lower_bound = std::log(to_real(2 * l.n_teeth - 1)) / l.q_nk - k * ln2 + l.log_phi / p;
    check.lower_bound = std::exp(check.log_lower_bound);

    const double via_m = -k * ln2 + (std::log(m) - (k + 1) * ln2) / l.q_nk + l.log_phi / p;
    if (!log_le(via_m, check.log_lower_bound)) throw chain_violation(k, "partition sum >= m_k-based bound");
    const double via_threshold = (k + (k + 1) / params.q_at_one - (k + 1) / l.q_nk) * ln2;
    if (!log_le(via_threshold, via_m)) throw chain_violation(k, "m_k-based bound >= threshold bound");
    if (!log_le(k * ln2, via_threshold)) throw chain_violation(k, "threshold bound >= 2^k");
    check.holds = true;
    return check;
}

step_function materialize_witness(const witness_params& params, std::size_t max_breakpoints) {
    big_int count = 2;
    for (const auto& l : params.levels) count += 2 * l.n_teeth;
    if (count > max_breakpoints)
        throw guard_exceeded("witness needs " + count.str() + " breakpoints, guard is " +
                             std::to_string(max_breakpoints));

    auto comb = build_witness(params);
    auto levels = comb.levels();
    std::sort(levels.begin(), levels.end(), [](const comb_level& a, const comb_level& b) { return a.k > b.k; });

    std::vector<rational> xs{rational(0)};
    std::vector<double> vs{0.0};
    auto push = [&](rational x, double v) {
        if (x == xs.back()) {
            vs.back() = v;
        } else {
            xs.push_back(std::move(x));
            vs.push_back(v);
        }
    };
    for (const auto& c : levels) {
        for (big_int j = 0; j < c.teeth; ++j) {
            const rational left = c.start + c.period * j;
            push(left, c.height);
            push(left + c.tooth_width, 0.0);
        }
    }
    xs.push_back(rational(1));
    return step_function(std::move(xs), std::move(vs), 0.0);
}

cross_check_report cross_check_witness_small(const witness_params& params, reciprocal_sums& /*lambda*/,
                                             const sequence_spec& q, const sequence_spec& delta,
                                             std::size_t max_breakpoints) {
    cross_check_report report;
    if (params.levels.empty()) {
        report.notice = "no levels: trivially consistent";
        return report;
    }
    std::optional<step_function> g;
    try {
        g = materialize_witness(params, max_breakpoints);
    } catch (const guard_exceeded& e) {
        report.skipped = true;
        report.notice = std::string("skipped: ") + e.what();
        return report;
    }

    for (const auto& l : params.levels) {
        // only the n_k rows matter, so run the inner DP there instead of the whole horizon
        const rational min_length = rational(1) / rational(delta.eval_at(l.n_k));
        double dp = 0.0;
        try {
            dp = wiener_inner(*g, q.eval_at(l.n_k), min_length).value;
        } catch (const resource_limit& e) {
            report.skipped = true;
            report.notice = std::string("skipped: ") + e.what();
            return report;
        }
        const double analytic = std::exp(std::log(to_real(2 * l.n_teeth - 1)) / l.q_nk - l.k * std::numbers::ln2 +
                                         l.log_phi / params.p);
        report.dp_values.push_back(dp);
        report.analytic_bounds.push_back(analytic);
        report.consistent = report.consistent && dp >= analytic * (1 - chain_slack);
    }
    report.notice = report.consistent ? "wiener DP matches or exceeds every analytic level bound"
                                      : "wiener DP falls below an analytic level bound";
    return report;
}

}  // namespace gbv
