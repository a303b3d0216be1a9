#pragma once

#include "gbv/seqspec.hpp"
#include "gbv/stepfn.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gbv {

// One n of max_{1<=k<=delta(n)} k^(1/q(n)) / H(k)^(1/p).
struct indicator_row {
    long long n = 0;
    double k_star = 0.0;  // integral; may exceed 2^53
    double value = 0.0;
    double log_value = 0.0;
    bool exact = true;
};

struct profile_summary {
    double max_value = 0.0;
    long long attaining_n = 0;
    double tail_trend_slope = 0.0;  // least squares of log value on log n, top quartile of n
};

struct indicator_profile {
    std::vector<indicator_row> rows;
    profile_summary summary;
};

// Exact scan over every k when floor(delta(n)) <= scan_budget (and within the
// cache budget of lambda); otherwise a geometric grid of scan_budget points
// plus a refinement over one decade either side of the best grid point.
indicator_row hps_indicator(reciprocal_sums& lambda, double p, const sequence_spec& q, const sequence_spec& delta,
                            long long n, std::size_t scan_budget);

// The p = 1, delta(n) = 2^n special case.
indicator_row goginava_indicator(reciprocal_sums& lambda, const sequence_spec& q, long long n,
                                 std::size_t scan_budget);

// delta(n) = 2^n as a validated spec.
sequence_spec dyadic_delta(long long horizon = 2);

indicator_profile limsup_profile(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                 const sequence_spec& delta, std::span<const long long> n_values,
                                 std::size_t scan_budget);

enum class inclusion_verdict { evidence_included, evidence_excluded, inconclusive };

const char* to_string(inclusion_verdict verdict);

struct decide_options {
    double bound_factor = 2.0;
    double slope_threshold = 0.05;
};

struct inclusion_report {
    inclusion_verdict verdict = inclusion_verdict::inconclusive;
    indicator_profile profile;
    double first_quarter_max = 0.0;
    double last_quarter_max = 0.0;
    bool last_quarter_increasing = false;
    std::string note;
};

inclusion_report decide_inclusion(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                  const sequence_spec& delta, std::span<const long long> n_values,
                                  std::size_t scan_budget, const decide_options& options = {});

struct inequality_check {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// sum x_j^e <= (sum x_j y_j)^e * max_k k / (y_1 + ... + y_k)^e for
// nonincreasing nonnegative x, y with y_1 > 0 and e >= 0.
inequality_check check_rearrangement_inequality(std::span<const double> x, std::span<const double> y,
                                                double exponent, double slack = 1e-12);

// V(f, q; delta) <= V_Lambda,p(f) * max_{n <= horizon} indicator(n).
inequality_check check_sufficiency_bound(const step_function& f, reciprocal_sums& lambda, double p,
                                         const sequence_spec& q, const sequence_spec& delta, long long horizon,
                                         std::size_t scan_budget, double slack = 1e-10);

}  // namespace gbv
