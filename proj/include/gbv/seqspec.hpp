#pragma once

// Closed-form sequences lambda(i), q(n), delta(n) and cached reciprocal sums.
//
// Grammar (whitespace is insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'i' | 'n' | func '(' expr ')' | '(' expr ')'
//   func    := 'sqrt' | 'log' | 'exp'
//   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// 'i' and 'n' name the same free variable.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gbv {

using wide_real = boost::multiprecision::float128;
using big_int = boost::multiprecision::cpp_int;

enum class expr_kind { literal, variable, negate, add, subtract, multiply, divide, power, sqrt, log, exp };

struct expr_node {
    expr_kind kind;
    double value = 0.0;  // literal only
    std::shared_ptr<const expr_node> lhs;
    std::shared_ptr<const expr_node> rhs;
};

using expr_ptr = std::shared_ptr<const expr_node>;

expr_ptr make_literal(double value);
expr_ptr make_variable();
expr_ptr make_unary(expr_kind kind, expr_ptr arg);
expr_ptr make_binary(expr_kind kind, expr_ptr lhs, expr_ptr rhs);

class sequence_expr {
public:
    explicit sequence_expr(expr_ptr root);

    const expr_node& root() const { return *root_; }

    // Throws domain_error on log/sqrt of a negative, division by zero, or a
    // non-finite result.
    double eval(double x) const;
    // Same arithmetic without the finiteness check; may return inf or nan.
    double eval_unchecked(double x) const;

    // Fully parenthesized; parsing the output yields an identical tree.
    std::string to_string(char variable = 'n') const;

    friend bool operator==(const sequence_expr& a, const sequence_expr& b);

private:
    expr_ptr root_;
};

sequence_expr parse_sequence_expr(std::string_view text);

enum class sequence_role { lambda, q, delta };

const char* to_string(sequence_role role);

struct validation_options {
    // A lambda spec whose H(horizon) / H(horizon / 2) falls below 1 + epsilon
    // is flagged as slowly diverging (possibly convergent).
    double divergence_epsilon = 0.01;
    // delta(horizon) / delta(1) must reach this factor.
    double delta_growth_factor = 2.0;
};

struct divergence_report {
    long long horizon = 0;
    double sum_at_horizon = 0.0;
    double sum_at_half = 0.0;
    double ratio = 0.0;
    bool slow_growth_warning = false;
};

class sequence_spec {
public:
    const sequence_expr& expr() const { return expr_; }
    sequence_role role() const { return role_; }
    long long validated_horizon() const { return horizon_; }
    const std::optional<divergence_report>& divergence() const { return divergence_; }

    // Value at a positive integer index.
    double eval_at(long long index) const;
    // Value at a real argument >= 1 (used for indices beyond 2^63 and for
    // tail integrals).
    double eval_real(double x) const;
    // floor(value) as an exact integer; domain_error when not finite.
    big_int floor_at(long long index) const;

private:
    friend sequence_spec validate_spec(const sequence_expr&, sequence_role, long long,
                                       const validation_options&);
    sequence_spec(sequence_expr expr, sequence_role role, long long horizon)
        : expr_(std::move(expr)), role_(role), horizon_(horizon) {}

    sequence_expr expr_;
    sequence_role role_;
    long long horizon_;
    std::optional<divergence_report> divergence_;
};

sequence_spec validate_spec(const sequence_expr& expr, sequence_role role, long long horizon,
                            const validation_options& options = {});

// Convenience: parse then validate.
sequence_spec make_spec(std::string_view text, sequence_role role, long long horizon,
                        const validation_options& options = {});

// H(k) = sum_{i<=k} 1/lambda_i. Exact (113-bit accumulation) up to the cache
// budget; beyond it only the Euler-Maclaurin estimate is available.
// Not thread-safe: the cache grows on demand.
class reciprocal_sums {
public:
    static constexpr std::size_t default_cache_budget = std::size_t{1} << 20;

    explicit reciprocal_sums(sequence_spec lambda, std::size_t cache_budget = default_cache_budget);

    const sequence_spec& lambda() const { return lambda_; }
    std::size_t cache_budget() const { return budget_; }
    std::size_t cached() const { return cache_.size(); }

    // Throws resource_limit when k exceeds the cache budget.
    wide_real partial_sum(std::size_t k);
    double value(std::size_t k) { return static_cast<double>(partial_sum(k)); }

    // log H(k) for integral k >= 1 given as a double. Exact path for
    // k <= cache budget, Euler-Maclaurin tail anchored at the budget otherwise.
    double log_estimate(double k);
    bool is_exact(double k) const { return k <= static_cast<double>(budget_); }

private:
    void extend_to(std::size_t k);
    double inverse_lambda(double x) const;
    double tail_integral(double log_k);

    sequence_spec lambda_;
    std::size_t budget_;
    std::vector<wide_real> cache_;
    // Cumulative integral of e^t / lambda(e^t) over [log K, log K + j * h].
    std::vector<long double> tail_table_;
};

// Short alias matching the operation name used in docs and the CLI.
inline wide_real partial_sum_reciprocal(reciprocal_sums& sums, std::size_t k) {
    return sums.partial_sum(k);
}

}  // namespace gbv
