#include "gbv/wiener.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gbv {

namespace {

std::size_t jump_count(const step_function& f) {
    const auto w = f.grid_values();
    std::size_t jumps = 0;
    for (std::size_t j = 1; j < w.size(); ++j) jumps += w[j] != w[j - 1];
    return jumps;
}

void check_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw domain_error("q(n) must be a finite positive real");
}

rational reciprocal_of(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw domain_error("delta(n) must be a finite positive real");
    return rational(1) / rational(delta);
}

template <class Inner>
wiener_report run_horizon(const sequence_spec& q, const sequence_spec& delta, long long horizon, Inner&& inner) {
    if (horizon < 1) throw error("horizon must be >= 1");
    if (delta.eval_at(1) < 1.0) throw horizon_too_small("delta(1) < 1: no interval is long enough");
    wiener_report report;
    report.truncated_at = horizon;
    double best_log = log_zero;
    for (long long n = 1; n <= horizon; ++n) {
        auto row = inner(q.eval_at(n), reciprocal_of(delta.eval_at(n)));
        row.n = n;
        const double log_value = row.log_inner == log_zero ? log_zero : row.log_inner / row.q;
        if (report.attaining_n == 0 || log_value > best_log) {
            best_log = log_value;
            report.attaining_n = n;
        }
        report.per_n.push_back(std::move(row));
    }
    report.value = exp_or_zero(best_log);
    return report;
}

}  // namespace

std::vector<rational> refined_grid(const step_function& f, const rational& min_length) {
    const auto reach = static_cast<long long>(jump_count(f));
    std::vector<rational> grid;
    for (const auto& t : f.breakpoints()) {
        for (long long j = -reach; j <= reach; ++j) {
            rational x = t + min_length * j;
            if (x >= 0 && x <= 1) grid.push_back(std::move(x));
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

wiener_row wiener_inner(const step_function& f, double q, const rational& min_length, const wiener_options& options) {
    check_q(q);
    wiener_row row;
    row.q = q;
    row.min_length = min_length;
    if (min_length > 1) return row;

    const auto grid = refined_grid(f, min_length);
    if (grid.size() > options.max_grid_points)
        throw resource_limit("refined grid has " + std::to_string(grid.size()) + " points");
    std::vector<double> w;
    w.reserve(grid.size());
    for (const auto& x : grid) w.push_back(f.evaluate(x));

    // best[i]: optimum using intervals inside [0, grid[i]]; from[i]: start of
    // the last interval ending at grid[i], or npos when best[i] = best[i - 1].
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<double> best(grid.size(), log_zero);
    std::vector<std::size_t> from(grid.size(), npos);
    std::size_t limit = 0;  // grid[k] <= grid[i] - min_length exactly for k < limit
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) best[i] = best[i - 1];
        while (limit < i && grid[i] - grid[limit] >= min_length) ++limit;
        for (std::size_t k = 0; k < limit; ++k) {
            const double d = w[i] - w[k];
            if (d == 0.0) continue;
            const double candidate = log_add(best[k], log_abs_pow(d, q));
            if (candidate > best[i]) {
                best[i] = candidate;
                from[i] = k;
            }
        }
    }

    row.log_inner = best.back();
    row.value = exp_or_zero(row.log_inner / q);
    for (std::size_t i = grid.size() - 1;;) {
        if (from[i] != npos) {
            row.family.emplace_back(grid[from[i]], grid[i]);
            i = from[i];
        } else if (i == 0) {
            break;
        } else {
            --i;
        }
    }
    std::reverse(row.family.begin(), row.family.end());
    return row;
}

wiener_row wiener_inner_bruteforce(const step_function& f, double q, const rational& min_length) {
    check_q(q);
    if (f.pieces() > 10) throw guard_exceeded("oracle enumeration needs at most 10 pieces");
    wiener_row row;
    row.q = q;
    row.min_length = min_length;
    if (min_length > 1) return row;

    // Boxes: the half-open pieces [t_j, t_{j+1}) and the closed point {1}.
    struct box {
        rational lo, hi;
        double value;
        bool closed;
    };
    std::vector<box> boxes;
    const auto& t = f.breakpoints();
    for (std::size_t j = 0; j < f.pieces(); ++j) boxes.push_back({t[j], t[j + 1], f.values()[j], false});
    boxes.push_back({rational(1), rational(1), f.value_at_one(), true});
    auto fits = [&](const rational& x, const box& b) { return b.closed ? x <= b.hi : x < b.hi; };

    long double best = 0.0L;
    interval_family best_family;
    interval_family current;
    // pos: earliest admissible position of the next left endpoint.
    std::function<void(std::size_t, const rational&, long double)> extend = [&](std::size_t first_box,
                                                                                  const rational& pos,
                                                                                  long double total) {
        if (total > best) {
            best = total;
            best_family = current;
        }
        for (std::size_t a = first_box; a < boxes.size(); ++a) {
            const rational left = std::max(boxes[a].lo, pos);
            if (!fits(left, boxes[a])) continue;
            for (std::size_t b = a + 1; b < boxes.size(); ++b) {
                if (boxes[b].value == boxes[a].value) continue;
                const rational right = std::max<rational>(boxes[b].lo, left + min_length);
                if (!fits(right, boxes[b])) continue;
                current.emplace_back(left, right);
                extend(b, right,
                       total + std::pow(static_cast<long double>(std::abs(boxes[b].value - boxes[a].value)),
                                        static_cast<long double>(q)));
                current.pop_back();
            }
        }
    };
    extend(0, rational(0), 0.0L);

    row.log_inner = best > 0 ? static_cast<double>(std::log(best)) : log_zero;
    row.value = best > 0 ? static_cast<double>(std::pow(best, 1.0L / static_cast<long double>(q))) : 0.0;
    row.family = std::move(best_family);
    return row;
}

wiener_report wiener_variation(const step_function& f, const sequence_spec& q, const sequence_spec& delta,
                               long long horizon, const wiener_options& options) {
    return run_horizon(q, delta, horizon,
                       [&](double qn, const rational& length) { return wiener_inner(f, qn, length, options); });
}

wiener_report wiener_bruteforce(const step_function& f, const sequence_spec& q, const sequence_spec& delta,
                                long long horizon) {
    return run_horizon(q, delta, horizon,
                       [&](double qn, const rational& length) { return wiener_inner_bruteforce(f, qn, length); });
}

degeneracy_report is_degenerate_wiener(const sequence_spec& q, const sequence_spec& delta, long long horizon) {
    if (horizon < 1) throw error("horizon must be >= 1");
    degeneracy_report report;
    double best_log = log_zero;
    for (long long n = 1; n <= horizon; ++n) {
        const double log_value = std::log(delta.eval_at(n)) / q.eval_at(n);
        report.values.push_back(std::exp(log_value));
        if (report.attaining_n == 0 || log_value > best_log) {
            best_log = log_value;
            report.attaining_n = n;
        }
    }
    report.sup_value = std::exp(best_log);
    const auto tail = static_cast<std::size_t>(std::max<long long>(1, horizon / 4));
    const std::size_t head = report.values.size() - tail;
    if (head == 0) {
        report.bounded = false;
        return report;
    }
    const double head_max = *std::max_element(report.values.begin(), report.values.begin() + head);
    const double tail_max = *std::max_element(report.values.begin() + head, report.values.end());
    report.bounded = tail_max <= head_max * (1 + 1e-12);
    return report;
}

}  // namespace gbv
