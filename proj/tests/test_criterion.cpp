#include "gbv/criterion.hpp"
#include "gbv/errors.hpp"
#include "gbv/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace gbv;

namespace {

reciprocal_sums weights(const char* text) { return reciprocal_sums(make_spec(text, sequence_role::lambda, 100)); }
sequence_spec q_spec(const char* text) { return make_spec(text, sequence_role::q, 64); }
sequence_spec delta_spec(const char* text) { return make_spec(text, sequence_role::delta, 64); }

std::vector<long long> one_to(long long n) {
    std::vector<long long> ns(static_cast<std::size_t>(n));
    std::iota(ns.begin(), ns.end(), 1LL);
    return ns;
}

// Direct scan in long double; the oracle for exact rows.
double direct_indicator(const char* lambda, double p, double q, long long upper) {
    const auto spec = make_spec(lambda, sequence_role::lambda, 100);
    long double h = 0, best = 0;
    for (long long k = 1; k <= upper; ++k) {
        h += 1.0L / spec.eval_at(k);
        best = std::max(best, std::pow(static_cast<long double>(k), 1.0L / q) / std::pow(h, 1.0L / p));
    }
    return static_cast<double>(best);
}

}  // namespace

TEST_CASE("flat weights give one") {
    auto flat = weights("1");
    for (long long n : {1, 5, 20, 60}) {
        const auto row = hps_indicator(flat, 1, q_spec("1+n"), delta_spec("2^n"), n, 4096);
        CHECK(row.value == doctest::Approx(1));
        CHECK(row.k_star == 1);
    }
    CHECK(goginava_indicator(flat, q_spec("1+n"), 30, 4096).value == doctest::Approx(1));
}

TEST_CASE("exact rows agree with a direct scan") {
    auto harmonic = weights("i");
    const auto row = hps_indicator(harmonic, 1, q_spec("sqrt(n)"), delta_spec("2^sqrt(n)"), 64, 1 << 16);
    CHECK(row.exact);
    CHECK(row.value == doctest::Approx(direct_indicator("i", 1, 8, 256)).epsilon(1e-12));
    CHECK(row.value <= 1.0 + 1e-12);
    for (const char* lambda : {"i", "sqrt(i)", "i*log(i+1)"}) {
        auto sums = weights(lambda);
        for (double p : {1.0, 2.0}) {
            const auto r = hps_indicator(sums, p, q_spec("1+n"), delta_spec("3*n"), 40, 1 << 16);
            CHECK(r.value == doctest::Approx(direct_indicator(lambda, p, 41, 120)).epsilon(1e-12));
        }
    }
}

TEST_CASE("single term at n = 1") {
    auto sums = weights("i+2");
    const auto row = hps_indicator(sums, 2, q_spec("n"), delta_spec("1+n/2"), 1, 100);
    CHECK(row.k_star == 1);
    CHECK(row.value == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("dyadic special case") {
    auto sums = weights("sqrt(i)");
    for (long long n : {3, 17, 40}) {
        const auto a = goginava_indicator(sums, q_spec("sqrt(n)"), n, 1000);
        const auto b = hps_indicator(sums, 1, q_spec("sqrt(n)"), delta_spec("2^n"), n, 1000);
        CHECK(a.value == b.value);
        CHECK(a.k_star == b.k_star);
    }
    // The k = 2^n end dominates: about 2^sqrt(n) / (n log 2 + gamma).
    auto harmonic = weights("i");
    const auto row = goginava_indicator(harmonic, make_spec("sqrt(n)", sequence_role::q, 400), 100, 4096);
    CHECK_FALSE(row.exact);
    CHECK(row.k_star == std::exp2(100));
    CHECK(row.value == doctest::Approx(1024 / (100 * std::log(2.0) + 0.5772156649015329)).epsilon(1e-9));
}

TEST_CASE("grid scans never beat exact scans") {
    rng_engine rng(12);
    for (int t = 0; t < 20; ++t) {
        const char* lambdas[] = {"i", "sqrt(i)", "1", "i^0.7"};
        auto sums = weights(lambdas[t % 4]);
        const long long n = uniform_int(rng, 8, 50);
        const auto q = q_spec("1+sqrt(n)");
        const auto delta = delta_spec("n*n*n");
        const auto coarse = hps_indicator(sums, 1.5, q, delta, n, 16);
        const auto exact = hps_indicator(sums, 1.5, q, delta, n, 1 << 20);
        CHECK(exact.exact);
        CHECK(coarse.value <= exact.value * (1 + 1e-12));
    }
}

TEST_CASE("larger reciprocal sums give a smaller indicator") {
    // Smaller weights give larger reciprocal sums.
    auto a = weights("2*i+1");
    auto b = weights("i");
    for (long long n = 1; n <= 30; ++n)
        CHECK(hps_indicator(b, 1, q_spec("1+n"), delta_spec("2^n"), n, 2048).value <=
              hps_indicator(a, 1, q_spec("1+n"), delta_spec("2^n"), n, 2048).value * (1 + 1e-12));
}

TEST_CASE("profiles and verdicts") {
    auto flat = weights("1");
    const auto ns = one_to(60);
    const auto profile = limsup_profile(flat, 1, q_spec("1+n"), delta_spec("2^n"), ns, 1024);
    for (const auto& row : profile.rows) CHECK(row.value <= 1 + 1e-12);
    CHECK(profile.summary.tail_trend_slope <= 1e-12);
    CHECK(decide_inclusion(flat, 1, q_spec("1+n"), delta_spec("2^n"), ns, 1024).verdict ==
          inclusion_verdict::evidence_included);

    auto harmonic = weights("i");
    const auto excluded = decide_inclusion(harmonic, 1, q_spec("2-1/n"), delta_spec("2^n"), ns, 1024);
    CHECK(excluded.verdict == inclusion_verdict::evidence_excluded);
    CHECK(excluded.profile.summary.tail_trend_slope > 0.05);
    CHECK(excluded.last_quarter_increasing);

    const auto sqrt_case = decide_inclusion(harmonic, 1, q_spec("sqrt(n)"), delta_spec("2^sqrt(n)"), ns, 1024);
    CHECK(sqrt_case.verdict == inclusion_verdict::evidence_included);
    CHECK(sqrt_case.profile.summary.max_value == doctest::Approx(4.0 / 3.0));
    CHECK(sqrt_case.profile.summary.attaining_n == 1);
}

TEST_CASE("rearrangement inequality examples") {
    const std::vector<double> ones{1, 1};
    auto a = check_rearrangement_inequality(ones, ones, 2);
    CHECK(a.lhs == doctest::Approx(2));
    CHECK(a.rhs == doctest::Approx(4));
    CHECK(a.holds);
    auto b = check_rearrangement_inequality(std::vector<double>{2, 1}, std::vector<double>{1, 0.5}, 1);
    CHECK(b.lhs == doctest::Approx(3));
    CHECK(b.rhs == doctest::Approx(10.0 / 3.0));
    CHECK(b.holds);
    auto c = check_rearrangement_inequality(std::vector<double>{1}, std::vector<double>{0.3}, 0.5);
    CHECK(c.lhs == doctest::Approx(1));
    CHECK(c.rhs == doctest::Approx(1));
    CHECK(c.holds);

    CHECK_THROWS_AS(check_rearrangement_inequality(std::vector<double>{1, 2}, ones, 1), sort_violation);
    CHECK_THROWS_AS(check_rearrangement_inequality(std::vector<double>{1, -1}, ones, 1), negative_input);
    CHECK_THROWS_AS(check_rearrangement_inequality(ones, std::vector<double>{0, 0}, 1), domain_error);
}

TEST_CASE("rearrangement inequality on random sorted inputs") {
    rng_engine rng(77);
    for (double e : {0.3, 0.7, 1.0, 2.0, 5.0}) {
        for (int t = 0; t < 2000; ++t) {
            const auto size = static_cast<std::size_t>(uniform_int(rng, 1, 12));
            std::vector<double> x(size), y(size);
            for (auto& v : x) v = uniform_real(rng, 0, 2);
            for (auto& v : y) v = uniform_real(rng, 0, 2);
            std::sort(x.rbegin(), x.rend());
            std::sort(y.rbegin(), y.rend());
            CHECK(check_rearrangement_inequality(x, y, e).holds);
        }
    }
}

TEST_CASE("sufficiency bound") {
    auto harmonic = weights("i");
    const auto q = q_spec("1+n");
    const auto delta = delta_spec("2^n");
    const auto constant = check_sufficiency_bound(step_function::constant(1), harmonic, 1, q, delta, 6, 1024);
    CHECK(constant.lhs == 0);
    CHECK(constant.holds);
    const step_function jump({rational(0), rational(1, 3), rational(1)}, {0.0, -2.0}, -2.0);
    const auto single = check_sufficiency_bound(jump, harmonic, 1, q, delta, 6, 1024);
    CHECK(single.lhs == doctest::Approx(2));
    CHECK(single.rhs >= 2);
    CHECK(single.holds);
}
