#include "gbv/errors.hpp"
#include "gbv/random.hpp"
#include "gbv/stepfn.hpp"

#include <doctest.h>

using namespace gbv;

namespace {

rational r(long long p, long long q = 1) { return rational(p, q); }

step_function quarters(std::vector<double> values, double at_one) {
    return step_function({r(0), r(1, 4), r(1, 2), r(3, 4), r(1)}, std::move(values), at_one);
}

step_function half_indicator() { return step_function({r(0), r(1, 2), r(1)}, {0.0, 1.0}, 1.0); }

}  // namespace

TEST_CASE("rational text round trip") {
    CHECK(to_string(r(3, 6)) == "1/2");
    CHECK(to_string(r(4, 2)) == "2");
    CHECK(parse_rational("6/8") == r(3, 4));
    CHECK(parse_rational("-1/3") == r(-1, 3));
    CHECK(parse_rational("5") == r(5));
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational("a/2"), error);
    CHECK_THROWS_AS(parse_rational(""), error);
}

TEST_CASE("construction validates and canonicalizes") {
    CHECK_THROWS_AS(step_function({r(0), r(1)}, {}, 0.0), error);
    CHECK_THROWS_AS(step_function({r(0), r(1, 2)}, {1.0}, 0.0), error);
    CHECK_THROWS_AS(step_function({r(0), r(1, 2), r(1, 2), r(1)}, {1.0, 2.0, 3.0}, 0.0), error);
    const step_function merged({r(0), r(1, 3), r(2, 3), r(1)}, {1.0, 1.0, 2.0}, 2.0);
    CHECK(merged.pieces() == 2);
    CHECK(merged.breakpoints() == std::vector<rational>{r(0), r(2, 3), r(1)});
    // idempotent
    const step_function again(merged.breakpoints(), merged.values(), merged.value_at_one());
    CHECK(again == merged);
    CHECK_THROWS_AS(interval(r(1, 2), r(1, 2)), out_of_domain);
    CHECK_THROWS_AS(interval(r(-1, 2), r(1, 2)), out_of_domain);
}

TEST_CASE("evaluate examples") {
    CHECK(step_function::constant(3).evaluate(r(7, 10)) == 3);
    CHECK(half_indicator().evaluate(r(1, 2)) == 1);
    CHECK(half_indicator().evaluate(r(1, 2) - r(1, 1000)) == 0);
    CHECK(half_indicator().evaluate(r(1)) == 1);
    CHECK(quarters({0, 1, 0.5, 2}, 7).evaluate(r(1)) == 7);
    CHECK_THROWS_AS(half_indicator().evaluate(r(11, 10)), out_of_domain);
    CHECK_THROWS_AS(half_indicator().evaluate(r(-1, 10)), out_of_domain);
}

TEST_CASE("increment examples") {
    CHECK(increment(step_function::constant(2), interval(r(1, 5), r(4, 5))) == 0);
    CHECK(increment(half_indicator(), interval(r(1, 4), r(3, 4))) == 1);
    CHECK(increment(quarters({0, 1, 0.5, 2}, 2), interval(r(0), r(1))) == 2);
}

TEST_CASE("monotone extrema points") {
    using points = std::vector<rational>;
    CHECK(monotone_extrema_points(quarters({0, 1, 2, 3}, 3)) == points{r(0), r(1)});
    CHECK(monotone_extrema_points(step_function::constant(5)) == points{r(0), r(1)});
    // f = 1 on [1/4, 1/2) is the run maximum and 0.5 on [1/2, 3/4) the run minimum;
    // both are attained at the left ends of their pieces.
    CHECK(monotone_extrema_points(quarters({0, 1, 0.5, 2}, 2)) == points{r(0), r(1, 4), r(1, 2), r(1)});
    // a jump at 1 only
    CHECK(monotone_extrema_points(quarters({0, 1, 0.5, 2}, -1)) == points{r(0), r(1, 4), r(1, 2), r(3, 4), r(1)});
}

TEST_CASE("random step functions") {
    const auto one = random_step_function(1, {}, 9);
    CHECK(one.pieces() == 1);
    CHECK(random_step_function(5, {}, 42) == random_step_function(5, {}, 42));
    CHECK_FALSE(random_step_function(5, {}, 42) == random_step_function(5, {}, 43));
    const auto f = random_step_function(5, {}, 42);
    CHECK(f.pieces() == 5);
    for (std::size_t j = 1; j < f.values().size(); ++j) CHECK(f.values()[j] != f.values()[j - 1]);
    for (double v : f.grid_values()) CHECK((v >= -1 && v <= 1));
    CHECK_THROWS_AS(random_step_function(0, {}, 1), error);
    CHECK_THROWS_AS(random_step_function(3, {1, 1}, 1), error);
}

TEST_CASE("increment is additive and bounded by the oscillation") {
    rng_engine rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto f = random_step_function(static_cast<std::size_t>(uniform_int(rng, 1, 8)), {}, 1000 + t);
        std::vector<rational> xs;
        for (int j = 0; j < 3; ++j) xs.push_back(r(uniform_int(rng, 0, 120), 120));
        std::sort(xs.begin(), xs.end());
        if (xs[0] == xs[1] || xs[1] == xs[2]) continue;
        const double whole = increment(f, interval(xs[0], xs[2]));
        CHECK(whole == doctest::Approx(increment(f, interval(xs[0], xs[1])) + increment(f, interval(xs[1], xs[2]))));
        const auto w = f.grid_values();
        const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        CHECK(std::abs(whole) <= *hi - *lo);
    }
}

TEST_CASE("nonoverlap test") {
    CHECK(is_nonoverlapping({interval(r(0), r(1, 2)), interval(r(1, 2), r(1))}));
    CHECK_FALSE(is_nonoverlapping({interval(r(0), r(2, 3)), interval(r(1, 2), r(1))}));
    CHECK(is_nonoverlapping({}));
}
