#include "gbv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gbv {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

// Integral doubles such as k* may exceed 2^53; print them without exponent.
std::string format_integral(double x) {
    char buf[400];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
}

std::string csv_real(double x) { return format_real(x); }

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + path);
    out << contents;
    if (!out) throw input_error("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const step_function& f) {
    json breakpoints = json::array();
    for (const auto& t : f.breakpoints()) breakpoints.push_back(to_string(t));
    json values = json::array();
    for (double v : f.values()) values.push_back(v);
    return {{"breakpoints", breakpoints}, {"values", values}, {"value_at_one", f.value_at_one()}};
}

step_function step_function_from_json(const json& j) {
    try {
        if (!j.is_object()) throw input_error("step function must be a JSON object");
        std::vector<rational> breakpoints;
        for (const auto& t : j.at("breakpoints")) {
            if (!t.is_string()) throw input_error("breakpoints must be strings \"p/q\"");
            breakpoints.push_back(parse_rational(t.get<std::string>()));
        }
        std::vector<double> values;
        for (const auto& v : j.at("values")) {
            if (!v.is_number()) throw input_error("values must be numbers");
            values.push_back(v.get<double>());
        }
        const auto& one = j.at("value_at_one");
        if (!one.is_number()) throw input_error("value_at_one must be a number");
        return step_function(std::move(breakpoints), std::move(values), one.get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("step function JSON: ") + e.what());
    }
}

json to_json(const interval& i) { return {{"lo", to_string(i.lo())}, {"hi", to_string(i.hi())}}; }

json to_json(const interval_family& family) {
    json out = json::array();
    for (const auto& i : family) out.push_back(to_json(i));
    return out;
}

json to_json(const variation_report& report) {
    return {{"value", format_real(report.value)},
            {"log_objective", format_real(report.log_objective)},
            {"method", to_string(report.method)},
            {"nodes_explored", report.nodes_explored},
            {"optimal_family", to_json(report.optimal_family)}};
}

json to_json(const wiener_row& row) {
    return {{"n", row.n},
            {"q", format_real(row.q)},
            {"min_length", to_string(row.min_length)},
            {"inner_value_log", format_real(row.log_inner)},
            {"value", format_real(row.value)},
            {"family", to_json(row.family)}};
}

json to_json(const wiener_report& report) {
    json rows = json::array();
    for (const auto& row : report.per_n) rows.push_back(to_json(row));
    return {{"value", format_real(report.value)},
            {"attaining_n", report.attaining_n},
            {"truncated_at", report.truncated_at},
            {"per_n", rows}};
}

json to_json(const degeneracy_report& report) {
    json values = json::array();
    for (double v : report.values) values.push_back(format_real(v));
    return {{"bounded", report.bounded},
            {"sup_value", format_real(report.sup_value)},
            {"attaining_n", report.attaining_n},
            {"values", values}};
}

json to_json(const indicator_row& row) {
    return {{"n", row.n},
            {"k_star", format_integral(row.k_star)},
            {"value", format_real(row.value)},
            {"log_value", format_real(row.log_value)},
            {"exact", row.exact}};
}

json to_json(const indicator_profile& profile) {
    json rows = json::array();
    for (const auto& row : profile.rows) rows.push_back(to_json(row));
    return {{"max_value", format_real(profile.summary.max_value)},
            {"attaining_n", profile.summary.attaining_n},
            {"tail_trend_slope", format_real(profile.summary.tail_trend_slope)},
            {"rows", rows}};
}

json to_json(const inclusion_report& report) {
    return {{"verdict", to_string(report.verdict)},
            {"first_quarter_max", format_real(report.first_quarter_max)},
            {"last_quarter_max", format_real(report.last_quarter_max)},
            {"last_quarter_increasing", report.last_quarter_increasing},
            {"note", report.note},
            {"profile", to_json(report.profile)}};
}

json to_json(const inequality_check& check) {
    return {{"lhs", format_real(check.lhs)}, {"rhs", format_real(check.rhs)}, {"holds", check.holds}};
}

json to_json(const divergence_report& report) {
    return {{"horizon", report.horizon},
            {"sum_at_horizon", format_real(report.sum_at_horizon)},
            {"sum_at_half", format_real(report.sum_at_half)},
            {"ratio", format_real(report.ratio)},
            {"slow_growth_warning", report.slow_growth_warning}};
}

json to_json(const witness_level& level) {
    return {{"k", level.k},
            {"n_k", level.n_k},
            {"q_nk", format_real(level.q_nk)},
            {"delta_floor", level.delta_floor.str()},
            {"m_k", level.m_k.str()},
            {"m_exact", level.m_exact},
            {"indicator", format_real(std::exp(level.log_indicator))},
            {"log_indicator", format_real(level.log_indicator)},
            {"phi", format_real(std::exp(level.log_phi))},
            {"log_phi", format_real(level.log_phi)},
            {"s_k", level.s_k.str()},
            {"n_teeth", level.n_teeth.str()}};
}

json to_json(const witness_params& params) {
    json levels = json::array();
    for (const auto& l : params.levels) levels.push_back(to_json(l));
    return {{"p", format_real(params.p)}, {"q_at_one", format_real(params.q_at_one)}, {"levels", levels}};
}

json to_json(const comb_function& comb) {
    json levels = json::array();
    for (const auto& c : comb.levels()) {
        levels.push_back({{"k", c.k},
                          {"start", to_string(c.start)},
                          {"start_decimal", format_real(to_double(c.start))},
                          {"tooth_width", to_string(c.tooth_width)},
                          {"tooth_width_decimal", format_real(to_double(c.tooth_width))},
                          {"period", to_string(c.period)},
                          {"period_decimal", format_real(to_double(c.period))},
                          {"teeth", c.teeth.str()},
                          {"height", format_real(c.height)},
                          {"log_height", format_real(c.log_height)}});
    }
    return {{"levels", levels}};
}

json to_json(const std::vector<level_check>& checks) {
    json out = json::array();
    for (const auto& c : checks) out.push_back({{"k", c.k}, {"name", c.name}, {"holds", c.holds}});
    return out;
}

json to_json(const norm_check& check) {
    json levels = json::array();
    for (const auto& l : check.per_level)
        levels.push_back({{"k", l.k},
                          {"log_norm", format_real(l.log_norm)},
                          {"log_doubled", format_real(l.log_doubled)},
                          {"log_ceiling", format_real(l.log_ceiling)}});
    return {{"total_bound", format_real(check.total_bound)}, {"holds", check.holds}, {"per_level", levels}};
}

json to_json(const lower_bound_check& check) {
    return {{"k", check.k},
            {"lower_bound", format_real(check.lower_bound)},
            {"log_lower_bound", format_real(check.log_lower_bound)},
            {"holds", check.holds}};
}

json to_json(const cross_check_report& report) {
    json dp = json::array(), analytic = json::array();
    for (double v : report.dp_values) dp.push_back(format_real(v));
    for (double v : report.analytic_bounds) analytic.push_back(format_real(v));
    return {{"skipped", report.skipped},
            {"notice", report.notice},
            {"consistent", report.consistent},
            {"dp_values", dp},
            {"analytic_bounds", analytic}};
}

std::string wiener_csv(const wiener_report& report) {
    std::string out = "n,q,inverse_delta,inner_value_log,value\n";
    for (const auto& row : report.per_n)
        out += std::to_string(row.n) + "," + csv_real(row.q) + "," + csv_real(to_double(row.min_length)) + "," +
               csv_real(row.log_inner) + "," + csv_real(row.value) + "\n";
    return out;
}

std::string profile_csv(const indicator_profile& profile) {
    std::string out = "n,k_star,value,exact\n";
    for (const auto& row : profile.rows)
        out += std::to_string(row.n) + "," + format_integral(row.k_star) + "," + csv_real(row.value) + "," +
               (row.exact ? "1" : "0") + "\n";
    return out;
}

}  // namespace gbv
