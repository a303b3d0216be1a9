#pragma once

#include "gbv/logdomain.hpp"
#include "gbv/seqspec.hpp"
#include "gbv/stepfn.hpp"

#include <vector>

namespace gbv {

struct wiener_row {
    long long n = 0;
    double q = 0.0;
    rational min_length;  // 1 / delta(n), exact for the double value of delta(n)
    double log_inner = log_zero;  // log max sum_k |f(I_k)|^q(n)
    double value = 0.0;           // inner^(1/q(n))
    interval_family family;
};

struct wiener_report {
    double value = 0.0;
    long long attaining_n = 0;
    std::vector<wiener_row> per_n;
    long long truncated_at = 0;
};

struct wiener_options {
    std::size_t max_grid_points = 20'000;
};

// Candidate endpoints for the inner problem: every breakpoint shifted by
// j * min_length, |j| <= number of jumps of f, clipped to [0, 1].
std::vector<rational> refined_grid(const step_function& f, const rational& min_length);

// max over nonoverlapping families with |I_k| >= min_length of sum |f(I_k)|^q.
wiener_row wiener_inner(const step_function& f, double q, const rational& min_length,
                        const wiener_options& options = {});

// Independent oracle for wiener_inner: enumerates which pieces the endpoints
// fall in and checks each assignment by earliest placement. At most 10 pieces.
wiener_row wiener_inner_bruteforce(const step_function& f, double q, const rational& min_length);

wiener_report wiener_variation(const step_function& f, const sequence_spec& q, const sequence_spec& delta,
                               long long horizon, const wiener_options& options = {});

wiener_report wiener_bruteforce(const step_function& f, const sequence_spec& q, const sequence_spec& delta,
                                long long horizon);

struct degeneracy_report {
    bool bounded = false;
    double sup_value = 0.0;  // max over n <= horizon of delta(n)^(1/q(n))
    long long attaining_n = 0;
    std::vector<double> values;
};

// delta(n)^(1/q(n)) over the horizon. "bounded" means the last quarter never
// exceeds the maximum of the earlier values.
degeneracy_report is_degenerate_wiener(const sequence_spec& q, const sequence_spec& delta, long long horizon);

}  // namespace gbv
