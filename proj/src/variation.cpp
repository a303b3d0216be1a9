#include "gbv/variation.hpp"

#include "gbv/logdomain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gbv {

const char* to_string(variation_method method) {
    switch (method) {
        case variation_method::extrema_bnb: return "extrema_bnb";
        case variation_method::brute_force: return "brute_force";
        case variation_method::greedy_lower_bound: return "greedy_lower_bound";
    }
    return "?";
}

namespace {

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw domain_error("p must be a finite real >= 1");
}

// -log(lambda_j) for j = 1..count.
std::vector<double> log_weights(reciprocal_sums& lambda, std::size_t count) {
    std::vector<double> w(count);
    for (std::size_t j = 0; j < count; ++j) w[j] = -std::log(lambda.lambda().eval_at(static_cast<long long>(j + 1)));
    return w;
}

// Family ordering for ties: fewer intervals first, then lexicographic endpoints.
bool family_less(const interval_family& a, const interval_family& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].lo() != b[i].lo()) return a[i].lo() < b[i].lo();
        if (a[i].hi() != b[i].hi()) return a[i].hi() < b[i].hi();
    }
    return false;
}

constexpr double tie_tolerance = 1e-12;

struct incumbent {
    double log_objective = log_zero;
    interval_family family;

    // Returns true when (log_value, family) should replace the incumbent.
    bool improves(double log_value, const interval_family& candidate) const {
        if (log_value == log_zero && log_objective == log_zero) return family_less(candidate, family);
        if (log_value > log_objective + tie_tolerance) return true;
        if (log_value < log_objective - tie_tolerance) return false;
        return family_less(candidate, family);
    }
};

interval_family sorted_family(interval_family family) {
    std::sort(family.begin(), family.end(), [](const interval& a, const interval& b) { return a.lo() < b.lo(); });
    return family;
}

struct candidate {
    std::size_t lo;  // index into the point list
    std::size_t hi;
    double log_gain;  // p * log |increment|
    std::uint64_t gaps;
};

class extrema_search {
public:
    extrema_search(const std::vector<rational>& points, const std::vector<double>& point_values,
                   std::vector<double> weights, double p, std::int64_t budget)
        : points_(points), weights_(std::move(weights)), budget_(budget) {
        for (std::size_t a = 0; a < points.size(); ++a) {
            for (std::size_t b = a + 1; b < points.size(); ++b) {
                const double d = point_values[b] - point_values[a];
                if (d == 0.0) continue;
                std::uint64_t gaps = 0;
                for (std::size_t g = a; g < b; ++g) gaps |= std::uint64_t{1} << g;
                candidates_.push_back({a, b, log_abs_pow(d, p), gaps});
            }
        }
        std::stable_sort(candidates_.begin(), candidates_.end(),
                         [](const candidate& x, const candidate& y) { return x.log_gain > y.log_gain; });
    }

    void run() {
        seed_greedy();
        chosen_.clear();
        visit(0, 0, log_zero);
    }

    bool exhausted() const { return exhausted_; }
    std::int64_t nodes() const { return nodes_; }
    const incumbent& best() const { return best_; }

    // Ignores compatibility: the best possible pairing of any candidates.
    double root_bound() const { return bound(0, 0, 0, log_zero); }

private:
    interval_family to_family(const std::vector<std::size_t>& picks) const {
        interval_family family;
        for (auto c : picks) family.emplace_back(points_[candidates_[c].lo], points_[candidates_[c].hi]);
        return sorted_family(std::move(family));
    }

    void seed_greedy() {
        std::uint64_t used = 0;
        double total = log_zero;
        std::vector<std::size_t> picks;
        for (std::size_t c = 0; c < candidates_.size() && picks.size() < weights_.size(); ++c) {
            if (candidates_[c].gaps & used) continue;
            used |= candidates_[c].gaps;
            total = log_add(total, candidates_[c].log_gain + weights_[picks.size()]);
            picks.push_back(c);
        }
        best_.log_objective = total;
        best_.family = to_family(picks);
    }

    // Upper bound on any completion: the next compatible candidates in gain
    // order take the next unused weights.
    double bound(std::size_t from, std::size_t count, std::uint64_t used, double current) const {
        double total = current;
        std::size_t next = count;
        for (std::size_t c = from; c < candidates_.size() && next < weights_.size(); ++c) {
            if (candidates_[c].gaps & used) continue;
            total = log_add(total, candidates_[c].log_gain + weights_[next]);
            ++next;
        }
        return total;
    }

    void visit(std::size_t index, std::uint64_t used, double current) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (index == candidates_.size() || chosen_.size() == weights_.size()) {
            if (current < best_.log_objective - tie_tolerance) return;
            auto family = to_family(chosen_);
            if (best_.improves(current, family)) {
                best_.log_objective = current;
                best_.family = std::move(family);
            }
            return;
        }
        if (bound(index, chosen_.size(), used, current) < best_.log_objective - tie_tolerance) return;

        const auto& c = candidates_[index];
        if (!(c.gaps & used)) {
            const double next = log_add(current, c.log_gain + weights_[chosen_.size()]);
            chosen_.push_back(index);
            visit(index + 1, used | c.gaps, next);
            chosen_.pop_back();
        }
        visit(index + 1, used, current);
    }

    const std::vector<rational>& points_;
    std::vector<double> weights_;
    std::vector<candidate> candidates_;
    std::vector<std::size_t> chosen_;
    incumbent best_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

double family_value(const step_function& f, const interval_family& family, reciprocal_sums& lambda, double p) {
    check_p(p);
    std::vector<double> gains;
    for (const auto& i : family) gains.push_back(log_abs_pow(increment(f, i), p));
    std::sort(gains.begin(), gains.end(), std::greater<>());
    const auto w = log_weights(lambda, gains.size());
    double total = log_zero;
    for (std::size_t j = 0; j < gains.size(); ++j) total = log_add(total, gains[j] + w[j]);
    return exp_or_zero(total / p);
}

variation_report lambda_p_variation(const step_function& f, reciprocal_sums& lambda, double p,
                                    const variation_budget& budget) {
    check_p(p);
    const auto points = monotone_extrema_points(f);
    if (points.size() > 65) throw resource_limit("more than 64 monotone runs");
    std::vector<double> point_values;
    for (const auto& x : points) point_values.push_back(f.evaluate(x));

    extrema_search search(points, point_values, log_weights(lambda, points.size() - 1), p, budget.max_nodes);
    search.run();

    variation_report report;
    report.log_objective = search.best().log_objective;
    report.value = exp_or_zero(report.log_objective / p);
    report.optimal_family = search.best().family;
    report.nodes_explored = search.nodes();
    if (search.exhausted()) {
        report.method = variation_method::greedy_lower_bound;
        throw budget_exceeded(report.value, exp_or_zero(search.root_bound() / p), report);
    }
    return report;
}

variation_report lambda_p_variation_bruteforce(const step_function& f, reciprocal_sums& lambda, double p,
                                               std::size_t max_intervals) {
    check_p(p);
    const auto& grid = f.breakpoints();
    if (grid.size() > 12) throw guard_exceeded("brute force needs at most 12 breakpoints");
    const auto w = f.grid_values();
    const std::size_t n = grid.size();

    std::vector<double> inv_lambda(n);
    for (std::size_t j = 0; j < n; ++j) inv_lambda[j] = 1.0 / lambda.lambda().eval_at(static_cast<long long>(j + 1));

    variation_report report;
    report.method = variation_method::brute_force;
    double best = 0.0;
    bool have_best = false;
    interval_family best_family;
    std::vector<std::pair<std::size_t, std::size_t>> chosen;

    auto score = [&] {
        std::vector<double> powers;
        for (auto [a, b] : chosen) powers.push_back(std::pow(std::abs(w[b] - w[a]), p));
        std::sort(powers.begin(), powers.end(), std::greater<>());
        double total = 0.0;
        for (std::size_t j = 0; j < powers.size(); ++j) total += powers[j] * inv_lambda[j];
        return total;
    };

    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        ++report.nodes_explored;
        const double total = score();
        if (!have_best || total >= best * (1 - tie_tolerance)) {
            interval_family family;
            for (auto [a, b] : chosen) family.emplace_back(grid[a], grid[b]);
            if (!have_best || total > best * (1 + tie_tolerance) || family_less(family, best_family)) {
                best = total;
                best_family = std::move(family);
                have_best = true;
            }
        }
        if (chosen.size() == max_intervals) return;
        for (std::size_t a = start; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                chosen.emplace_back(a, b);
                extend(b);
                chosen.pop_back();
            }
        }
    };
    extend(0);

    // Zero-increment intervals add nothing; drop them from the reported family.
    interval_family trimmed;
    for (const auto& i : best_family)
        if (increment(f, i) != 0.0) trimmed.push_back(i);
    report.optimal_family = std::move(trimmed);
    report.value = std::pow(best, 1.0 / p);
    report.log_objective = best > 0.0 ? std::log(best) : log_zero;
    return report;
}

double waterman_shiba_norm(const step_function& f, reciprocal_sums& lambda, double p, const variation_budget& budget) {
    return std::abs(f.evaluate(rational(0))) + lambda_p_variation(f, lambda, p, budget).value;
}

}  // namespace gbv
