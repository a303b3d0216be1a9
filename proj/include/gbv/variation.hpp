#pragma once

#include "gbv/errors.hpp"
#include "gbv/logdomain.hpp"
#include "gbv/seqspec.hpp"
#include "gbv/stepfn.hpp"

#include <cstdint>

namespace gbv {

enum class variation_method { extrema_bnb, brute_force, greedy_lower_bound };

const char* to_string(variation_method method);

struct variation_report {
    double value = 0.0;
    // log of sum_i |f(I_i)|^p / lambda_i for the optimal family; -inf when empty.
    double log_objective = log_zero;
    interval_family optimal_family;
    variation_method method = variation_method::extrema_bnb;
    std::int64_t nodes_explored = 0;
};

class budget_exceeded : public error {
public:
    budget_exceeded(double lower, double upper, variation_report best)
        : error("node budget exhausted: variation lies in [" + std::to_string(lower) + ", " + std::to_string(upper) +
                "]"),
          lower_(lower), upper_(upper), best_(std::move(best)) {}
    double lower_bound() const noexcept { return lower_; }
    double upper_bound() const noexcept { return upper_; }
    const variation_report& best() const noexcept { return best_; }

private:
    double lower_;
    double upper_;
    variation_report best_;
};

struct variation_budget {
    std::int64_t max_nodes = 20'000'000;
};

// The objective (sum |f(I_i)|^p / lambda_i)^(1/p) of a family, with the
// increments matched in decreasing order against 1/lambda_1 >= 1/lambda_2 ...
double family_value(const step_function& f, const interval_family& family, reciprocal_sums& lambda, double p);

// Exact p-Lambda-variation. Throws budget_exceeded with bracketing values.
variation_report lambda_p_variation(const step_function& f, reciprocal_sums& lambda, double p,
                                    const variation_budget& budget = {});

// Exhaustive search over the full breakpoint grid; at most 12 breakpoints.
variation_report lambda_p_variation_bruteforce(const step_function& f, reciprocal_sums& lambda, double p,
                                               std::size_t max_intervals);

// |f(0)| + V(f).
double waterman_shiba_norm(const step_function& f, reciprocal_sums& lambda, double p,
                           const variation_budget& budget = {});

}  // namespace gbv
