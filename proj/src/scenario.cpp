#include "gbv/scenario.hpp"

#include "gbv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <variant>

namespace gbv {

namespace {

using toml_value = std::variant<std::string, double, bool>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Parses a value and whatever follows it on the line (only a comment is allowed).
toml_value parse_value(std::string_view text, std::size_t line) {
    if (text.empty()) throw scenario_error(line, "missing value");
    std::string_view rest;
    toml_value value;
    if (text.front() == '"' || text.front() == '\'') {
        const char quote = text.front();
        std::string out;
        std::size_t i = 1;
        for (; i < text.size() && text[i] != quote; ++i) {
            if (quote == '"' && text[i] == '\\') {
                if (++i == text.size()) break;
                switch (text[i]) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: throw scenario_error(line, "unsupported escape");
                }
            } else {
                out += text[i];
            }
        }
        if (i >= text.size()) throw scenario_error(line, "unterminated string");
        value = out;
        rest = text.substr(i + 1);
    } else {
        const auto end = std::min(text.find('#'), text.size());
        std::string token(trim(text.substr(0, end)));
        rest = text.substr(end);
        if (token == "true" || token == "false") {
            value = token == "true";
        } else {
            token.erase(std::remove(token.begin(), token.end(), '_'), token.end());
            if (!token.empty() && token.front() == '+') token.erase(0, 1);
            double x = 0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
            if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
                throw scenario_error(line, "cannot parse value '" + token + "'");
            value = x;
        }
    }
    rest = trim(rest);
    if (!rest.empty() && rest.front() != '#') throw scenario_error(line, "trailing characters after value");
    return value;
}

const std::string& as_string(const toml_value& v, std::size_t line, const std::string& key) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw scenario_error(line, key + " must be a string");
}

double as_number(const toml_value& v, std::size_t line, const std::string& key) {
    if (const auto* x = std::get_if<double>(&v)) return *x;
    throw scenario_error(line, key + " must be a number");
}

long long as_integer(const toml_value& v, std::size_t line, const std::string& key, long long lo) {
    const double x = as_number(v, line, key);
    if (x != std::floor(x) || x < static_cast<double>(lo) || x > 9.0e15)
        throw scenario_error(line, key + " must be an integer >= " + std::to_string(lo));
    return static_cast<long long>(x);
}

}  // namespace

scenario parse_scenario(std::string_view text, scenario s) {
    std::size_t line_number = 0;
    while (!text.empty()) {
        ++line_number;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') throw scenario_error(line_number, "tables are not supported");
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw scenario_error(line_number, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = parse_value(trim(line.substr(eq + 1)), line_number);

        if (key == "lambda") s.lambda = as_string(value, line_number, key);
        else if (key == "q") s.q = as_string(value, line_number, key);
        else if (key == "delta") s.delta = as_string(value, line_number, key);
        else if (key == "p") s.p = as_number(value, line_number, key);
        else if (key == "horizon") s.horizon = as_integer(value, line_number, key, 1);
        else if (key == "scan_budget") s.scan_budget = static_cast<std::size_t>(as_integer(value, line_number, key, 2));
        else if (key == "seed") s.seed = static_cast<std::uint64_t>(as_integer(value, line_number, key, 0));
        else if (key == "levels") s.levels = static_cast<int>(as_integer(value, line_number, key, 1));
        else if (key == "out") s.out_dir = as_string(value, line_number, key);
        else if (key == "json") s.json_path = as_string(value, line_number, key);
        else if (key == "csv") s.csv_path = as_string(value, line_number, key);
        else if (key == "function") s.function_path = as_string(value, line_number, key);
        else throw scenario_error(line_number, "unknown key '" + key + "'");
    }
    return s;
}

scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

validated_scenario validate(const scenario& s) {
    if (!(s.p >= 1.0) || !std::isfinite(s.p)) throw domain_error("p must be a finite real >= 1");
    const long long horizon = std::max(2LL, s.horizon);
    return {s, make_spec(s.lambda, sequence_role::lambda, horizon), make_spec(s.q, sequence_role::q, horizon),
            make_spec(s.delta, sequence_role::delta, horizon)};
}

}  // namespace gbv
