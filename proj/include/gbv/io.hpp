#pragma once

#include "gbv/criterion.hpp"
#include "gbv/errors.hpp"
#include "gbv/stepfn.hpp"
#include "gbv/variation.hpp"
#include "gbv/wiener.hpp"
#include "gbv/witness.hpp"

#include <json.hpp>

#include <string>

namespace gbv {

using json = nlohmann::ordered_json;

// Malformed input files (JSON shape, unreadable paths).
class input_error : public error {
public:
    using error::error;
};

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
// Pretty-printed with a trailing newline.
std::string dump(const json& j);

json to_json(const step_function& f);
// {"breakpoints": ["p/q", ...], "values": [...], "value_at_one": x}
step_function step_function_from_json(const json& j);

json to_json(const interval& i);
json to_json(const interval_family& family);
json to_json(const variation_report& report);
json to_json(const wiener_row& row);
json to_json(const wiener_report& report);
json to_json(const degeneracy_report& report);
json to_json(const indicator_row& row);
json to_json(const indicator_profile& profile);
json to_json(const inclusion_report& report);
json to_json(const inequality_check& check);
json to_json(const divergence_report& report);

json to_json(const witness_level& level);
json to_json(const witness_params& params);
json to_json(const comb_function& comb);
json to_json(const std::vector<level_check>& checks);
json to_json(const norm_check& check);
json to_json(const lower_bound_check& check);
json to_json(const cross_check_report& report);

// n, q(n), 1/delta(n), inner_value_log, value
std::string wiener_csv(const wiener_report& report);
// n, k_star, value, exact
std::string profile_csv(const indicator_profile& profile);

}  // namespace gbv
