#include "gbv/seqspec.hpp"

#include "gbv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace gbv {

expr_ptr make_literal(double value) {
    return std::make_shared<const expr_node>(expr_node{expr_kind::literal, value, nullptr, nullptr});
}

expr_ptr make_variable() {
    return std::make_shared<const expr_node>(expr_node{expr_kind::variable, 0.0, nullptr, nullptr});
}

expr_ptr make_unary(expr_kind kind, expr_ptr arg) {
    return std::make_shared<const expr_node>(expr_node{kind, 0.0, std::move(arg), nullptr});
}

expr_ptr make_binary(expr_kind kind, expr_ptr lhs, expr_ptr rhs) {
    return std::make_shared<const expr_node>(expr_node{kind, 0.0, std::move(lhs), std::move(rhs)});
}

namespace {

class parser {
public:
    explicit parser(std::string_view text) : text_(text) {}

    expr_ptr parse() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw syntax_error(pos_, "unexpected trailing input");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw syntax_error(pos_, std::string("expected '") + c + "'");
    }

    expr_ptr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(expr_kind::add, lhs, parse_term());
            else if (accept('-'))
                lhs = make_binary(expr_kind::subtract, lhs, parse_term());
            else
                return lhs;
        }
    }

    expr_ptr parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(expr_kind::multiply, lhs, parse_unary());
            else if (accept('/'))
                lhs = make_binary(expr_kind::divide, lhs, parse_unary());
            else
                return lhs;
        }
    }

    expr_ptr parse_unary() {
        if (accept('-')) return make_unary(expr_kind::negate, parse_unary());
        return parse_power();
    }

    expr_ptr parse_power() {
        auto base = parse_primary();
        if (accept('^')) return make_binary(expr_kind::power, base, parse_unary());
        return base;
    }

    expr_ptr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw syntax_error(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "i" || name == "n") return make_variable();
            expr_kind kind;
            if (name == "sqrt")
                kind = expr_kind::sqrt;
            else if (name == "log")
                kind = expr_kind::log;
            else if (name == "exp")
                kind = expr_kind::exp;
            else
                throw unknown_identifier(start, std::string(name));
            expect('(');
            auto arg = parse_expr();
            expect(')');
            return make_unary(kind, arg);
        }
        throw syntax_error(pos_, std::string("unexpected character '") + c + "'");
    }

    expr_ptr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t count = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) throw syntax_error(start, "malformed number");
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw syntax_error(pos_, "malformed exponent");
        }
        double value = 0.0;
        const auto first = text_.data() + start;
        const auto last = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || !std::isfinite(value))
            throw syntax_error(start, "number out of range");
        return make_literal(value);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval_node(const expr_node& node, double x, bool checked) {
    auto fail = [&](const char* what) -> double {
        if (checked) throw domain_error(what);
        return std::numeric_limits<double>::quiet_NaN();
    };
    switch (node.kind) {
        case expr_kind::literal: return node.value;
        case expr_kind::variable: return x;
        case expr_kind::negate: return -eval_node(*node.lhs, x, checked);
        case expr_kind::add: return eval_node(*node.lhs, x, checked) + eval_node(*node.rhs, x, checked);
        case expr_kind::subtract: return eval_node(*node.lhs, x, checked) - eval_node(*node.rhs, x, checked);
        case expr_kind::multiply: return eval_node(*node.lhs, x, checked) * eval_node(*node.rhs, x, checked);
        case expr_kind::divide: {
            const double num = eval_node(*node.lhs, x, checked);
            const double den = eval_node(*node.rhs, x, checked);
            if (den == 0.0) return fail("division by zero");
            return num / den;
        }
        case expr_kind::power: {
            const double base = eval_node(*node.lhs, x, checked);
            const double expo = eval_node(*node.rhs, x, checked);
            if (base < 0.0 && std::trunc(expo) != expo) return fail("negative base with fractional exponent");
            if (base == 0.0 && expo < 0.0) return fail("zero to a negative power");
            return std::pow(base, expo);
        }
        case expr_kind::sqrt: {
            const double a = eval_node(*node.lhs, x, checked);
            if (a < 0.0) return fail("sqrt of a negative value");
            return std::sqrt(a);
        }
        case expr_kind::log: {
            const double a = eval_node(*node.lhs, x, checked);
            if (!(a > 0.0)) return fail("log of a nonpositive value");
            return std::log(a);
        }
        case expr_kind::exp: return std::exp(eval_node(*node.lhs, x, checked));
    }
    return fail("corrupt expression");
}

bool same_tree(const expr_node& a, const expr_node& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == expr_kind::literal) return a.value == b.value;
    if (a.lhs && !same_tree(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !same_tree(*a.rhs, *b.rhs)) return false;
    return true;
}

void print_node(const expr_node& node, char variable, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print_node(*node.lhs, variable, out);
        out += op;
        print_node(*node.rhs, variable, out);
        out += ')';
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        print_node(*node.lhs, variable, out);
        out += ')';
    };
    switch (node.kind) {
        case expr_kind::literal: {
            char buf[64];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, node.value);
            out.append(buf, ptr);
            return;
        }
        case expr_kind::variable: out += variable; return;
        case expr_kind::negate:
            out += "(-";
            print_node(*node.lhs, variable, out);
            out += ')';
            return;
        case expr_kind::add: binary(" + "); return;
        case expr_kind::subtract: binary(" - "); return;
        case expr_kind::multiply: binary(" * "); return;
        case expr_kind::divide: binary(" / "); return;
        case expr_kind::power: binary("^"); return;
        case expr_kind::sqrt: call("sqrt"); return;
        case expr_kind::log: call("log"); return;
        case expr_kind::exp: call("exp"); return;
    }
}

}  // namespace

sequence_expr::sequence_expr(expr_ptr root) : root_(std::move(root)) {
    if (!root_) throw error("empty expression tree");
}

double sequence_expr::eval(double x) const {
    const double v = eval_node(*root_, x, true);
    if (!std::isfinite(v)) throw domain_error("non-finite value at argument " + std::to_string(x));
    return v;
}

double sequence_expr::eval_unchecked(double x) const { return eval_node(*root_, x, false); }

std::string sequence_expr::to_string(char variable) const {
    std::string out;
    print_node(*root_, variable, out);
    return out;
}

bool operator==(const sequence_expr& a, const sequence_expr& b) { return same_tree(*a.root_, *b.root_); }

sequence_expr parse_sequence_expr(std::string_view text) {
    if (text.empty()) throw syntax_error(0, "empty expression");
    return sequence_expr(parser(text).parse());
}

const char* to_string(sequence_role role) {
    switch (role) {
        case sequence_role::lambda: return "lambda";
        case sequence_role::q: return "q";
        case sequence_role::delta: return "delta";
    }
    return "?";
}

double sequence_spec::eval_at(long long index) const {
    if (index < 1) throw domain_error("index must be >= 1");
    return eval_real(static_cast<double>(index));
}

double sequence_spec::eval_real(double x) const {
    if (!(x >= 1.0)) throw domain_error("argument must be >= 1");
    const double v = expr_.eval(x);
    if (!(v > 0.0)) throw domain_error(std::string(gbv::to_string(role_)) + " is not positive at " + std::to_string(x));
    return v;
}

big_int sequence_spec::floor_at(long long index) const {
    const double v = std::floor(eval_at(index));
    // Every finite double is an integer times a power of two; the conversion is exact.
    return big_int(v);
}

sequence_spec validate_spec(const sequence_expr& expr, sequence_role role, long long horizon,
                            const validation_options& options) {
    if (horizon < 2) throw error("validation horizon must be >= 2");
    double previous = 0.0;
    double first = 0.0;
    for (long long i = 1; i <= horizon; ++i) {
        double v = 0.0;
        try {
            v = expr.eval(static_cast<double>(i));
        } catch (const domain_error&) {
            throw nonpositive_value(i);
        }
        if (!(v > 0.0)) throw nonpositive_value(i);
        if (i == 1) {
            first = v;
        } else if (role == sequence_role::lambda ? v < previous : v <= previous) {
            throw monotonicity_violation(i);
        }
        previous = v;
    }
    if (role == sequence_role::delta && !(previous >= options.delta_growth_factor * first)) {
        throw unboundedness_evidence("delta grows by less than a factor of " +
                                     std::to_string(options.delta_growth_factor) + " over the horizon");
    }

    sequence_spec spec(expr, role, horizon);
    if (role == sequence_role::lambda) {
        wide_real full = 0;
        wide_real half = 0;
        const long long mid = horizon / 2;
        for (long long i = 1; i <= horizon; ++i) {
            full += wide_real(1) / wide_real(expr.eval(static_cast<double>(i)));
            if (i == mid) half = full;
        }
        divergence_report report;
        report.horizon = horizon;
        report.sum_at_horizon = static_cast<double>(full);
        report.sum_at_half = static_cast<double>(half);
        report.ratio = report.sum_at_horizon / report.sum_at_half;
        report.slow_growth_warning = report.ratio < 1.0 + options.divergence_epsilon;
        spec.divergence_ = report;
    }
    return spec;
}

sequence_spec make_spec(std::string_view text, sequence_role role, long long horizon,
                        const validation_options& options) {
    return validate_spec(parse_sequence_expr(text), role, horizon, options);
}

reciprocal_sums::reciprocal_sums(sequence_spec lambda, std::size_t cache_budget)
    : lambda_(std::move(lambda)), budget_(cache_budget) {
    if (lambda_.role() != sequence_role::lambda) throw error("reciprocal sums need a lambda spec");
    if (budget_ < 1) throw error("cache budget must be positive");
}

void reciprocal_sums::extend_to(std::size_t k) {
    if (k > budget_)
        throw resource_limit("H(" + std::to_string(k) + ") exceeds the cache budget of " + std::to_string(budget_));
    if (cache_.size() >= k) return;
    if (k > cache_.capacity()) cache_.reserve(std::min(budget_, std::max(k, 2 * cache_.capacity())));
    wide_real running = cache_.empty() ? wide_real(0) : cache_.back();
    for (std::size_t i = cache_.size() + 1; i <= k; ++i) {
        running += wide_real(1) / wide_real(lambda_.eval_at(static_cast<long long>(i)));
        cache_.push_back(running);
    }
}

wide_real reciprocal_sums::partial_sum(std::size_t k) {
    if (k < 1) throw domain_error("partial sums start at k = 1");
    extend_to(k);
    return cache_[k - 1];
}

double reciprocal_sums::inverse_lambda(double x) const {
    const double v = lambda_.expr().eval_unchecked(x);
    if (v == std::numeric_limits<double>::infinity()) return 0.0;
    if (!(v > 0.0) || std::isnan(v)) throw domain_error("lambda is not positive at " + std::to_string(x));
    return 1.0 / v;
}

namespace {
constexpr double tail_step = 1.0 / 32.0;
}

double reciprocal_sums::tail_integral(double log_k) {
    const double t0 = std::log(static_cast<double>(budget_));
    auto integrand = [this](double t) {
        const double x = std::exp(t);
        return x * inverse_lambda(x);
    };
    const double offset = (log_k - t0) / tail_step;
    const auto panel = static_cast<std::size_t>(std::floor(offset));
    if (tail_table_.empty()) tail_table_.push_back(0.0L);
    while (tail_table_.size() <= panel) {
        const double a = t0 + static_cast<double>(tail_table_.size() - 1) * tail_step;
        tail_table_.push_back(tail_table_.back() +
                              boost::math::quadrature::gauss<double, 8>::integrate(integrand, a, a + tail_step));
    }
    const double a = t0 + static_cast<double>(panel) * tail_step;
    long double total = tail_table_[panel];
    if (log_k > a) total += boost::math::quadrature::gauss<double, 8>::integrate(integrand, a, log_k);
    return static_cast<double>(total);
}

double reciprocal_sums::log_estimate(double k) {
    if (!(k >= 1.0)) throw domain_error("partial sums start at k = 1");
    if (is_exact(k)) return std::log(value(static_cast<std::size_t>(k)));

    // Euler-Maclaurin: sum_{K<i<=k} f(i) = int_K^k f + (f(k) - f(K)) / 2
    //                                        + (f'(k) - f'(K)) / 12 + ...
    const double anchor = static_cast<double>(budget_);
    const double exact = value(budget_);
    auto derivative = [this](double x) {
        const double h = 1e-4 * x;
        return (inverse_lambda(x + h) - inverse_lambda(x - h)) / (2.0 * h);
    };
    const double tail = tail_integral(std::log(k)) + 0.5 * (inverse_lambda(k) - inverse_lambda(anchor)) +
                        (derivative(k) - derivative(anchor)) / 12.0;
    return std::log(exact + tail);
}

}  // namespace gbv
