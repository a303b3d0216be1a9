#pragma once

#include "gbv/errors.hpp"
#include "gbv/seqspec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gbv {

// Flat TOML subset: `key = "string"`, `key = number`, `key = true|false`,
// comments after '#', blank lines. Tables and arrays are rejected.
struct scenario {
    std::string lambda = "i";
    std::string q = "n+1";
    std::string delta = "2^n";
    double p = 1.0;
    long long horizon = 64;
    std::size_t scan_budget = std::size_t{1} << 16;
    std::uint64_t seed = 1;
    int levels = 3;
    std::string out_dir = ".";
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
    std::optional<std::string> function_path;
};

class scenario_error : public error {
public:
    scenario_error(std::size_t line, const std::string& what)
        : error("scenario line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Keys missing from the text keep their defaults.
scenario parse_scenario(std::string_view text, scenario base = {});
scenario load_scenario(const std::string& path);

// The three specs, validated at the scenario horizon.
struct validated_scenario {
    scenario raw;
    sequence_spec lambda;
    sequence_spec q;
    sequence_spec delta;
};

// Throws the seqspec errors, or domain_error when p < 1.
validated_scenario validate(const scenario& s);

}  // namespace gbv
