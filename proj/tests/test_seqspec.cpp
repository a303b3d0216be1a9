#include "gbv/errors.hpp"
#include "gbv/random.hpp"
#include "gbv/seqspec.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace gbv;

namespace {

expr_ptr random_tree(rng_engine& rng, int depth) {
    const auto pick = uniform_int(rng, 0, depth <= 0 ? 1 : 9);
    switch (pick) {
        case 0: {
            static const double literals[] = {0.5, 1, 2, 3, 7.25, 1e-3, 10, 1e20};
            return make_literal(literals[uniform_int(rng, 0, 7)]);
        }
        case 1: return make_variable();
        case 2: return make_unary(expr_kind::negate, random_tree(rng, depth - 1));
        case 3: return make_binary(expr_kind::add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 4: return make_binary(expr_kind::subtract, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 5: return make_binary(expr_kind::multiply, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 6: return make_binary(expr_kind::divide, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 7: return make_binary(expr_kind::power, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 8: return make_unary(expr_kind::sqrt, random_tree(rng, depth - 1));
        default: {
            const expr_kind f = uniform_int(rng, 0, 1) ? expr_kind::log : expr_kind::exp;
            return make_unary(f, random_tree(rng, depth - 1));
        }
    }
}

// Independent evaluator: plain recursion; nullopt where the value is undefined.
std::optional<double> reference_eval(const expr_node& node, double x) {
    using opt = std::optional<double>;
    auto a = [&]() { return reference_eval(*node.lhs, x); };
    auto b = [&]() { return reference_eval(*node.rhs, x); };
    switch (node.kind) {
        case expr_kind::literal: return node.value;
        case expr_kind::variable: return x;
        case expr_kind::negate: { auto u = a(); return u ? opt(-*u) : u; }
        case expr_kind::add: { auto u = a(), v = b(); return u && v ? opt(*u + *v) : std::nullopt; }
        case expr_kind::subtract: { auto u = a(), v = b(); return u && v ? opt(*u - *v) : std::nullopt; }
        case expr_kind::multiply: { auto u = a(), v = b(); return u && v ? opt(*u * *v) : std::nullopt; }
        case expr_kind::divide: {
            auto u = a(), v = b();
            if (!u || !v || *v == 0) return std::nullopt;
            return *u / *v;
        }
        case expr_kind::power: {
            auto u = a(), v = b();
            if (!u || !v || (*u < 0 && std::trunc(*v) != *v) || (*u == 0 && *v < 0)) return std::nullopt;
            return std::pow(*u, *v);
        }
        case expr_kind::sqrt: { auto u = a(); if (!u || *u < 0) return std::nullopt; return std::sqrt(*u); }
        case expr_kind::log: { auto u = a(); if (!u || !(*u > 0)) return std::nullopt; return std::log(*u); }
        case expr_kind::exp: { auto u = a(); return u ? opt(std::exp(*u)) : u; }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("parse examples") {
    auto id = parse_sequence_expr("i");
    CHECK(id.root().kind == expr_kind::variable);
    CHECK(id.eval(7) == 7);

    auto e = parse_sequence_expr("2^sqrt(n)");
    REQUIRE(e.root().kind == expr_kind::power);
    CHECK(e.root().lhs->kind == expr_kind::literal);
    CHECK(e.root().lhs->value == 2);
    CHECK(e.root().rhs->kind == expr_kind::sqrt);
    CHECK(e.root().rhs->lhs->kind == expr_kind::variable);

    try {
        parse_sequence_expr("log(");
        FAIL("expected syntax_error");
    } catch (const syntax_error& err) {
        CHECK(err.offset() == 4);
    }
    CHECK_THROWS_AS(parse_sequence_expr("m + 1"), unknown_identifier);
    CHECK_THROWS_AS(parse_sequence_expr("sin(n)"), unknown_identifier);
    CHECK_THROWS_AS(parse_sequence_expr(""), syntax_error);
    CHECK_THROWS_AS(parse_sequence_expr("1 +"), syntax_error);
    CHECK_THROWS_AS(parse_sequence_expr("(n"), syntax_error);
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_sequence_expr("2^3^2").eval(1) == 512);
    CHECK(parse_sequence_expr("-2^2").eval(1) == -4);
    CHECK(parse_sequence_expr("2^-1").eval(1) == 0.5);
    CHECK(parse_sequence_expr("1 - 2 - 3").eval(1) == -4);
    CHECK(parse_sequence_expr("8 / 4 / 2").eval(1) == 1);
    CHECK(parse_sequence_expr("1 + 2 * n").eval(3) == 7);
    CHECK(parse_sequence_expr("1.5e2 + n").eval(1) == 151);
    CHECK(parse_sequence_expr("exp(log(n))").eval(5) == doctest::Approx(5));
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(parse_sequence_expr("1/(n-1)").eval(1), domain_error);
    CHECK_THROWS_AS(parse_sequence_expr("log(n-1)").eval(1), domain_error);
    CHECK_THROWS_AS(parse_sequence_expr("sqrt(1-n)").eval(2), domain_error);
    CHECK_THROWS_AS(parse_sequence_expr("(-n)^0.5").eval(2), domain_error);
    CHECK_THROWS_AS(parse_sequence_expr("exp(n)").eval(1000), domain_error);
}

TEST_CASE("validate_spec examples") {
    auto lambda = make_spec("i", sequence_role::lambda, 100);
    REQUIRE(lambda.divergence());
    CHECK(lambda.divergence()->sum_at_horizon == doctest::Approx(5.187377517639621));

    try {
        make_spec("1/i", sequence_role::lambda, 100);
        FAIL("expected monotonicity_violation");
    } catch (const monotonicity_violation& e) {
        CHECK(e.index() == 2);
    }
    try {
        make_spec("n-5", sequence_role::q, 100);
        FAIL("expected nonpositive_value");
    } catch (const nonpositive_value& e) {
        CHECK(e.index() == 1);
    }
    // q must increase strictly, lambda only weakly.
    CHECK_NOTHROW(make_spec("1", sequence_role::lambda, 50));
    CHECK_THROWS_AS(make_spec("2", sequence_role::q, 50), monotonicity_violation);
    CHECK_THROWS_AS(make_spec("2 - 1/n", sequence_role::delta, 50), unboundedness_evidence);
    CHECK(make_spec("i*i", sequence_role::lambda, 100).divergence()->slow_growth_warning);
    CHECK_FALSE(make_spec("i", sequence_role::lambda, 100).divergence()->slow_growth_warning);
}

TEST_CASE("eval_at examples") {
    CHECK(make_spec("i", sequence_role::lambda, 10).eval_at(7) == 7);
    CHECK(make_spec("2^n", sequence_role::delta, 10).eval_at(10) == 1024);
    CHECK(make_spec("sqrt(n)", sequence_role::q, 10).eval_at(9) == 3);
    CHECK(make_spec("2^n", sequence_role::delta, 10).floor_at(100) == (big_int(1) << 100));
    CHECK_THROWS_AS(make_spec("2^n", sequence_role::delta, 10).eval_at(0), domain_error);
}

TEST_CASE("partial_sum_reciprocal examples") {
    reciprocal_sums harmonic(make_spec("i", sequence_role::lambda, 10));
    CHECK(static_cast<double>(partial_sum_reciprocal(harmonic, 4)) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(static_cast<double>(partial_sum_reciprocal(harmonic, 1)) == 1.0);
    reciprocal_sums flat(make_spec("1", sequence_role::lambda, 10));
    CHECK(static_cast<double>(partial_sum_reciprocal(flat, 10)) == 10.0);

    reciprocal_sums small(make_spec("i", sequence_role::lambda, 10), 100);
    CHECK_THROWS_AS(small.partial_sum(101), resource_limit);
    CHECK_THROWS_AS(small.partial_sum(0), domain_error);
}

TEST_CASE("partial sums increase by 1/lambda") {
    for (const char* text : {"i", "sqrt(i)", "1", "i*log(i+1)", "i^2"}) {
        reciprocal_sums sums(make_spec(text, sequence_role::lambda, 100));
        auto lambda = make_spec(text, sequence_role::lambda, 100);
        for (std::size_t k = 1; k < 2000; ++k) {
            const auto a = sums.partial_sum(k), b = sums.partial_sum(k + 1);
            REQUIRE(b > a);
            CHECK(static_cast<double>(b - a) ==
                  doctest::Approx(1.0 / lambda.eval_at(static_cast<long long>(k + 1))).epsilon(1e-12));
        }
    }
}

TEST_CASE("tail estimate matches exact sums and closed forms") {
    // Anchor at 1000 in one instance, exact sums in the other.
    for (const char* text : {"i", "sqrt(i)", "1", "i*log(i+1)"}) {
        reciprocal_sums exact(make_spec(text, sequence_role::lambda, 100));
        reciprocal_sums tail(make_spec(text, sequence_role::lambda, 100), 1000);
        for (double k : {1001.0, 1500.0, 4096.0, 77777.0, 500000.0}) {
            CHECK_FALSE(tail.is_exact(k));
            CHECK(tail.log_estimate(k) == doctest::Approx(exact.log_estimate(k)).epsilon(1e-10));
        }
    }
    reciprocal_sums harmonic(make_spec("i", sequence_role::lambda, 100));
    const double gamma = 0.57721566490153286;
    for (double e : {30.0, 100.0, 400.0}) {
        const double k = std::exp2(e);
        const double closed = e * std::log(2.0) + gamma + 1 / (2 * k);
        CHECK(harmonic.log_estimate(k) == doctest::Approx(std::log(closed)).epsilon(1e-13));
    }
    // Estimates do not depend on what was cached before.
    reciprocal_sums fresh(make_spec("i", sequence_role::lambda, 100));
    const double before = fresh.log_estimate(std::exp2(50));
    fresh.partial_sum(1 << 20);
    CHECK(fresh.log_estimate(std::exp2(50)) == before);
}

TEST_CASE("print then parse is the identity on random trees") {
    rng_engine rng(20240611);
    for (int t = 0; t < 1000; ++t) {
        const sequence_expr e(random_tree(rng, 5));
        const auto text = e.to_string();
        const auto back = parse_sequence_expr(text);
        REQUIRE_MESSAGE(back == e, text);
        CHECK(back.to_string() == text);
        CHECK(parse_sequence_expr(e.to_string('i')) == e);
    }
}

TEST_CASE("eval agrees with an independent evaluator") {
    rng_engine rng(7);
    int compared = 0;
    for (int t = 0; t < 2000; ++t) {
        const sequence_expr e(random_tree(rng, 4));
        for (double x : {1.0, 2.0, 3.0, 17.0}) {
            const auto expected = reference_eval(e.root(), x);
            if (!expected || !std::isfinite(*expected)) {
                CHECK_THROWS_AS(e.eval(x), domain_error);
                continue;
            }
            const double got = e.eval(x);
            ++compared;
            CHECK_MESSAGE(std::abs(got - *expected) <= 1e-12 * std::abs(*expected), e.to_string());
        }
    }
    CHECK(compared > 1000);
}
