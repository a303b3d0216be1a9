// gbv: command-line front end. Every command writes a JSON report (also on
// failure) and exits with the codes listed in README.md.
#include "gbv/criterion.hpp"
#include "gbv/errors.hpp"
#include "gbv/io.hpp"
#include "gbv/random.hpp"
#include "gbv/scenario.hpp"
#include "gbv/variation.hpp"
#include "gbv/wiener.hpp"
#include "gbv/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

using gbv::json;

enum exit_code : int {
    ok = 0,
    negative = 1,  // excluded / not found / inequality violated
    invalid_input = 2,
    budget = 3,
    inconclusive = 4,
    chain = 5,
    resources = 6,
    internal = 7,
};

struct overrides {
    std::string scenario_path;
    std::optional<std::string> out_dir, json_path, csv_path, lambda, q, delta, function_path;
    std::optional<double> p;
    std::optional<long long> horizon;
    std::optional<std::size_t> scan_budget;
    std::optional<std::uint64_t> seed;
    std::optional<int> levels;

    // command specific
    std::size_t random_pieces = 0;
    long long max_nodes = gbv::variation_budget{}.max_nodes;
    std::optional<long long> n_limit;
    std::size_t max_breakpoints = 10'000;
    std::string x_list, y_list;
    double exponent = 1.0;
    std::size_t trials = 0;
};

gbv::scenario build_scenario(const overrides& o) {
    gbv::scenario s = o.scenario_path.empty() ? gbv::scenario{} : gbv::load_scenario(o.scenario_path);
    if (o.out_dir) s.out_dir = *o.out_dir;
    if (o.json_path) s.json_path = *o.json_path;
    if (o.csv_path) s.csv_path = *o.csv_path;
    if (o.lambda) s.lambda = *o.lambda;
    if (o.q) s.q = *o.q;
    if (o.delta) s.delta = *o.delta;
    if (o.function_path) s.function_path = *o.function_path;
    if (o.p) s.p = *o.p;
    if (o.horizon) s.horizon = *o.horizon;
    if (o.scan_budget) s.scan_budget = *o.scan_budget;
    if (o.seed) s.seed = *o.seed;
    if (o.levels) s.levels = *o.levels;
    return s;
}

std::string output_path(const gbv::scenario& s, const std::optional<std::string>& explicit_path,
                        const std::string& command, const char* extension) {
    if (explicit_path) return *explicit_path;
    return (std::filesystem::path(s.out_dir) / (command + extension)).string();
}

json scenario_json(const gbv::scenario& s) {
    return {{"lambda", s.lambda}, {"q", s.q},   {"delta", s.delta},
            {"p", gbv::format_real(s.p)},       {"horizon", s.horizon},
            {"scan_budget", s.scan_budget},     {"seed", s.seed}};
}

std::vector<long long> one_to(long long horizon) {
    std::vector<long long> ns(static_cast<std::size_t>(std::max(1LL, horizon)));
    std::iota(ns.begin(), ns.end(), 1LL);
    return ns;
}

gbv::step_function load_function(const gbv::scenario& s, const overrides& o) {
    if (o.random_pieces > 0) return gbv::random_step_function(o.random_pieces, {}, s.seed);
    if (!s.function_path) throw gbv::input_error("a --function file or --random-pieces is required");
    json j;
    try {
        j = json::parse(gbv::read_file(*s.function_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw gbv::input_error(std::string("function file: ") + e.what());
    }
    return gbv::step_function_from_json(j);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw gbv::input_error("cannot parse list entry '" + item + "'");
        }
    }
    return out;
}

// Runs one command; fills `doc` and returns the exit code.
int run_variation(const gbv::scenario& s, const overrides& o, json& doc) {
    const auto v = gbv::validate(s);
    const auto f = load_function(s, o);
    doc["function"] = gbv::to_json(f);
    gbv::reciprocal_sums sums(v.lambda);
    try {
        const auto report = gbv::lambda_p_variation(f, sums, s.p, {o.max_nodes});
        doc["report"] = gbv::to_json(report);
        doc["norm"] = gbv::format_real(std::abs(f.evaluate(gbv::rational(0))) + report.value);
        doc["status"] = "ok";
        return ok;
    } catch (const gbv::budget_exceeded& e) {
        doc["status"] = "budget_exceeded";
        doc["lower_bound"] = gbv::format_real(e.lower_bound());
        doc["upper_bound"] = gbv::format_real(e.upper_bound());
        doc["report"] = gbv::to_json(e.best());
        return budget;
    }
}

int run_wiener(const gbv::scenario& s, const overrides& o, json& doc) {
    const auto v = gbv::validate(s);
    const auto f = load_function(s, o);
    doc["function"] = gbv::to_json(f);
    const auto report = gbv::wiener_variation(f, v.q, v.delta, s.horizon);
    doc["report"] = gbv::to_json(report);
    doc["degeneracy"] = gbv::to_json(gbv::is_degenerate_wiener(v.q, v.delta, s.horizon));
    gbv::write_file(output_path(s, s.csv_path, "wiener", ".csv"), gbv::wiener_csv(report));
    doc["status"] = "ok";
    return ok;
}

int run_profile(const gbv::scenario& s, const overrides&, json& doc) {
    const auto v = gbv::validate(s);
    gbv::reciprocal_sums sums(v.lambda);
    const auto ns = one_to(s.horizon);
    const auto profile = gbv::limsup_profile(sums, s.p, v.q, v.delta, ns, s.scan_budget);
    doc["profile"] = gbv::to_json(profile);
    gbv::write_file(output_path(s, s.csv_path, "profile", ".csv"), gbv::profile_csv(profile));
    doc["status"] = "ok";
    return ok;
}

int run_decide(const gbv::scenario& s, const overrides&, json& doc) {
    const auto csv = output_path(s, s.csv_path, "decide", ".csv");
    gbv::write_file(csv, "n,k_star,value,exact\n");  // present even when validation fails
    const auto v = gbv::validate(s);
    gbv::reciprocal_sums sums(v.lambda);
    const auto ns = one_to(s.horizon);
    const auto report = gbv::decide_inclusion(sums, s.p, v.q, v.delta, ns, s.scan_budget);
    doc["decision"] = gbv::to_json(report);
    gbv::write_file(csv, gbv::profile_csv(report.profile));
    doc["status"] = gbv::to_string(report.verdict);
    switch (report.verdict) {
        case gbv::inclusion_verdict::evidence_included: return ok;
        case gbv::inclusion_verdict::evidence_excluded: return negative;
        case gbv::inclusion_verdict::inconclusive: return inconclusive;
    }
    return internal;
}

int run_witness(const gbv::scenario& s, const overrides& o, json& doc) {
    const auto v = gbv::validate(s);
    gbv::reciprocal_sums sums(v.lambda);
    gbv::witness_search_options options;
    options.n_search_limit = o.n_limit.value_or(s.horizon);
    options.scan_budget = s.scan_budget;
    doc["levels_requested"] = s.levels;
    doc["n_search_limit"] = options.n_search_limit;

    gbv::witness_params params;
    try {
        params = gbv::find_witness_levels(sums, s.p, v.q, v.delta, s.levels, options);
    } catch (const gbv::not_found& e) {
        doc["status"] = "not_found";
        doc["message"] = e.what();
        const double q1 = v.q.eval_at(1);
        doc["evidence"] = {{"level", e.level()},
                           {"limit", e.limit()},
                           {"threshold", gbv::format_real(std::exp2(gbv::witness_threshold_log2(e.level(), q1)))}};
        return negative;
    }
    doc["params"] = gbv::to_json(params);
    doc["comb"] = gbv::to_json(gbv::build_witness(params));

    try {
        const auto invariants = gbv::check_level_invariants(params);
        doc["invariants"] = gbv::to_json(invariants);
        for (const auto& c : invariants)
            if (!c.holds) throw gbv::chain_violation(c.k, c.name);
        doc["norm"] = gbv::to_json(gbv::verify_witness_norm(params, sums));
        json bounds = json::array();
        for (std::size_t i = 0; i < params.levels.size(); ++i)
            bounds.push_back(gbv::to_json(gbv::verify_witness_variation_lowerbound(params, sums, i)));
        doc["lower_bounds"] = bounds;
    } catch (const gbv::chain_violation& e) {
        doc["status"] = "chain_violation";
        doc["message"] = e.what();
        doc["violation"] = {{"level", e.level()}, {"step", e.step()}};
        return chain;
    }
    const auto cross = gbv::cross_check_witness_small(params, sums, v.q, v.delta, o.max_breakpoints);
    doc["cross_check"] = gbv::to_json(cross);
    if (!cross.skipped && !cross.consistent) {
        doc["status"] = "chain_violation";
        doc["violation"] = {{"level", 0}, {"step", "wiener DP below analytic bound"}};
        return chain;
    }
    doc["status"] = "ok";
    return ok;
}

int run_check_inequality(const gbv::scenario& s, const overrides& o, json& doc) {
    if (o.trials == 0) {
        const auto x = parse_list(o.x_list);
        const auto y = parse_list(o.y_list);
        const auto check = gbv::check_rearrangement_inequality(x, y, o.exponent);
        doc["check"] = gbv::to_json(check);
        doc["status"] = check.holds ? "ok" : "violated";
        return check.holds ? ok : negative;
    }
    gbv::rng_engine rng(s.seed);
    std::size_t violations = 0;
    json failures = json::array();
    for (std::size_t t = 0; t < o.trials; ++t) {
        const auto size = static_cast<std::size_t>(gbv::uniform_int(rng, 1, 20));
        std::vector<double> x(size), y(size);
        for (auto& e : x) e = gbv::uniform_real(rng, 0.0, 1.0);
        for (auto& e : y) e = gbv::uniform_real(rng, 0.0, 1.0);
        std::sort(x.rbegin(), x.rend());
        std::sort(y.rbegin(), y.rend());
        const auto check = gbv::check_rearrangement_inequality(x, y, o.exponent);
        if (!check.holds) {
            ++violations;
            if (failures.size() < 10) failures.push_back({{"trial", t}, {"check", gbv::to_json(check)}});
        }
    }
    doc["trials"] = o.trials;
    doc["exponent"] = gbv::format_real(o.exponent);
    doc["violations"] = violations;
    doc["failures"] = failures;
    doc["status"] = violations == 0 ? "ok" : "violated";
    return violations == 0 ? ok : negative;
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const gbv::syntax_error*>(&e)) return "syntax_error";
    if (dynamic_cast<const gbv::unknown_identifier*>(&e)) return "unknown_identifier";
    if (dynamic_cast<const gbv::monotonicity_violation*>(&e)) return "monotonicity_violation";
    if (dynamic_cast<const gbv::nonpositive_value*>(&e)) return "nonpositive_value";
    if (dynamic_cast<const gbv::unboundedness_evidence*>(&e)) return "unboundedness_evidence";
    if (dynamic_cast<const gbv::domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const gbv::scenario_error*>(&e)) return "scenario_error";
    if (dynamic_cast<const gbv::input_error*>(&e)) return "input_error";
    if (dynamic_cast<const gbv::out_of_domain*>(&e)) return "out_of_domain";
    if (dynamic_cast<const gbv::horizon_too_small*>(&e)) return "horizon_too_small";
    if (dynamic_cast<const gbv::sort_violation*>(&e)) return "sort_violation";
    if (dynamic_cast<const gbv::negative_input*>(&e)) return "negative_input";
    if (dynamic_cast<const gbv::resource_limit*>(&e)) return "resource_limit";
    if (dynamic_cast<const gbv::guard_exceeded*>(&e)) return "guard_exceeded";
    if (dynamic_cast<const gbv::error*>(&e)) return "error";
    return "internal_error";
}

int exit_for(const std::exception& e) {
    if (dynamic_cast<const gbv::resource_limit*>(&e) || dynamic_cast<const gbv::guard_exceeded*>(&e))
        return resources;
    if (dynamic_cast<const gbv::error*>(&e)) return invalid_input;
    return internal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambda-variation, generalized Wiener variation and the inclusion criterion for step functions"};
    app.require_subcommand(1);
    app.fallthrough();

    overrides o;
    app.add_option("--scenario", o.scenario_path, "TOML scenario file");
    app.add_option("--out", o.out_dir, "Directory for default output files");
    app.add_option("--json", o.json_path, "JSON report path (default <out>/<command>.json)");
    app.add_option("--csv", o.csv_path, "CSV path (default <out>/<command>.csv)");
    app.add_option("--horizon", o.horizon, "Largest n");
    app.add_option("--scan-budget", o.scan_budget, "Indicator scan budget per n");
    app.add_option("--seed", o.seed, "Seed for generated inputs");
    app.add_option("--lambda", o.lambda, "Lambda sequence expression in i");
    app.add_option("--q", o.q, "q(n) expression");
    app.add_option("--delta", o.delta, "delta(n) expression");
    app.add_option("--p", o.p, "Exponent p >= 1");

    auto* variation = app.add_subcommand("variation", "p-Lambda-variation of a step function");
    auto* wiener = app.add_subcommand("wiener", "Generalized Wiener variation of a step function");
    for (auto* sub : {variation, wiener}) {
        sub->add_option("--function", o.function_path, "Step function JSON file");
        sub->add_option("--random-pieces", o.random_pieces, "Use a seeded random step function instead");
    }
    variation->add_option("--max-nodes", o.max_nodes, "Branch and bound node budget");
    app.add_subcommand("profile", "Indicator profile for n = 1..horizon");
    app.add_subcommand("decide", "Finite-horizon inclusion verdict");
    auto* witness = app.add_subcommand("witness", "Construct and verify the comb witness");
    witness->add_option("--levels", o.levels, "Number of levels K");
    witness->add_option("--n-limit", o.n_limit, "Largest n searched (default: horizon)");
    witness->add_option("--max-breakpoints", o.max_breakpoints, "Materialization guard for the DP cross-check");
    auto* inequality = app.add_subcommand("check-inequality", "Rearrangement inequality check");
    inequality->add_option("--x", o.x_list, "Comma separated nonincreasing x");
    inequality->add_option("--y", o.y_list, "Comma separated nonincreasing y");
    inequality->add_option("--exponent", o.exponent, "Exponent e >= 0");
    inequality->add_option("--trials", o.trials, "Random seeded instances instead of --x/--y");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cout << gbv::dump({{"status", "error"}, {"error_kind", "usage_error"}, {"message", e.what()}});
        return invalid_input;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json doc;
    doc["command"] = command;
    doc["status"] = "error";
    int code = internal;
    gbv::scenario s;
    bool have_scenario = false;
    try {
        s = build_scenario(o);
        have_scenario = true;
        doc["scenario"] = scenario_json(s);
        if (command == "variation") code = run_variation(s, o, doc);
        else if (command == "wiener") code = run_wiener(s, o, doc);
        else if (command == "profile") code = run_profile(s, o, doc);
        else if (command == "decide") code = run_decide(s, o, doc);
        else if (command == "witness") code = run_witness(s, o, doc);
        else code = run_check_inequality(s, o, doc);
    } catch (const std::exception& e) {
        code = exit_for(e);
        doc["status"] = "error";
        doc["error_kind"] = error_kind(e);
        doc["message"] = e.what();
        if (const auto* se = dynamic_cast<const gbv::syntax_error*>(&e)) doc["offset"] = se->offset();
        if (const auto* ue = dynamic_cast<const gbv::unknown_identifier*>(&e)) doc["offset"] = ue->offset();
        if (const auto* me = dynamic_cast<const gbv::monotonicity_violation*>(&e)) doc["index"] = me->index();
        if (const auto* ne = dynamic_cast<const gbv::nonpositive_value*>(&e)) doc["index"] = ne->index();
    }
    doc["exit_code"] = code;

    const std::string text = gbv::dump(doc);
    std::string path;
    if (have_scenario) {
        path = output_path(s, s.json_path, command, ".json");
    } else {
        path = o.json_path.value_or((std::filesystem::path(o.out_dir.value_or(".")) / (command + ".json")).string());
    }
    try {
        gbv::write_file(path, text);
    } catch (const gbv::error& e) {
        std::cerr << e.what() << "\n";
        std::cout << text;
        return code == ok ? invalid_input : code;
    }
    std::cout << command << ": " << doc["status"].get<std::string>() << " (" << path << ")\n";
    return code;
}
