#pragma once

#include "gbv/seqspec.hpp"
#include "gbv/stepfn.hpp"
#include "gbv/wiener.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbv {

// One level of the comb g = sum_k g_k. All counts are exact integers;
// delta_floor = floor(delta(n_k)) sets the tooth width 1 / delta_floor.
struct witness_level {
    int k = 0;
    long long n_k = 0;
    double q_nk = 0.0;
    big_int delta_floor;
    big_int m_k;
    bool m_exact = true;       // m_k maximizes over every integer, not just a scan grid
    double log_indicator = 0;  // log of m_k^(1/q(n_k)) / H(m_k)^(1/p)
    double log_phi = 0;        // log Phi_k = -log H(m_k)
    big_int s_k;
    big_int n_teeth;  // N_k = min(m_k, s_k)
};

struct witness_params {
    double p = 1.0;
    double q_at_one = 1.0;
    std::vector<witness_level> levels;
};

struct witness_search_options {
    long long n_search_limit = 1000;
    std::size_t scan_budget = std::size_t{1} << 16;
};

// Throws not_found when some level has no admissible n up to the limit.
witness_params find_witness_levels(reciprocal_sums& lambda, double p, const sequence_spec& q,
                                   const sequence_spec& delta, int level_count,
                                   const witness_search_options& options = {});

// log2 of the level-k threshold: 2k + (k + 1) / q(1).
double witness_threshold_log2(int k, double q_at_one);

struct comb_level {
    int k = 0;
    rational start;        // 1 / 2^k
    rational tooth_width;  // 1 / delta_floor
    rational period;       // 2 / delta_floor
    big_int teeth;
    double height = 0.0;      // 2^-k Phi_k^(1/p)
    double log_height = 0.0;
};

class comb_function {
public:
    explicit comb_function(std::vector<comb_level> levels);
    const std::vector<comb_level>& levels() const { return levels_; }
    // Exact tooth membership; out_of_domain outside [0, 1].
    double evaluate(const rational& x) const;

private:
    std::vector<comb_level> levels_;
};

comb_function build_witness(const witness_params& params);

// Exact integer / rational checks of the level invariants. Each entry names
// the condition and whether it held.
struct level_check {
    int k = 0;
    std::string name;
    bool holds = false;
};
std::vector<level_check> check_level_invariants(const witness_params& params);

struct norm_chain_level {
    int k = 0;
    double log_norm = 0;      // log (sum_{j<=2N_k} h^p / lambda_j)^(1/p)
    double log_doubled = 0;   // log 2^-k (2 H(N_k) Phi_k)^(1/p)
    double log_ceiling = 0;   // log 2^-k 2^(1/p)
};

struct norm_check {
    std::vector<norm_chain_level> per_level;
    double total_bound = 0.0;  // sum of the level norms
    bool holds = false;
};

// Throws chain_violation when a step fails beyond 1e-9 relative slack.
norm_check verify_witness_norm(const witness_params& params, reciprocal_sums& lambda);

struct lower_bound_check {
    int k = 0;
    double lower_bound = 0.0;
    double log_lower_bound = 0.0;
    bool holds = false;
};

lower_bound_check verify_witness_variation_lowerbound(const witness_params& params, reciprocal_sums& lambda,
                                                      std::size_t level_index);

struct cross_check_report {
    bool skipped = false;
    std::string notice;
    std::vector<double> dp_values;        // per level, wiener inner value at n_k
    std::vector<double> analytic_bounds;  // per level
    bool consistent = true;
};

// Materializes g when it has at most max_breakpoints breakpoints and compares
// the Wiener inner DP at each n_k against the analytic per-level lower bounds.
cross_check_report cross_check_witness_small(const witness_params& params, reciprocal_sums& lambda,
                                             const sequence_spec& q, const sequence_spec& delta,
                                             std::size_t max_breakpoints = 10'000);

// The truncated comb as an explicit step function; guard_exceeded beyond max_breakpoints.
step_function materialize_witness(const witness_params& params, std::size_t max_breakpoints);

}  // namespace gbv
