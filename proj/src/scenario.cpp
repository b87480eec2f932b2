/*
* Copyright (C) 2026 seiropt contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "seiropt/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace seiropt {

namespace {

std::string trim(const std::string& text)
{
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    if (first == std::string::npos) {
        return {};
    }
    const std::size_t last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::string line_tag(int line)
{
    return line > 0 ? "line " + std::to_string(line) : "override";
}

double parse_double(const KeyValue& kv)
{
    const std::string& v = kv.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument(line_tag(kv.line) + ": value '" + v + "' for key '" + kv.key +
                                    "' is not a number");
    }
    return out;
}

long long parse_count(const KeyValue& kv)
{
    const std::string& v = kv.value;
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument(line_tag(kv.line) + ": value '" + v + "' for key '" + kv.key +
                                    "' is not an integer");
    }
    return out;
}

void apply_assignments(Scenario& scenario, const std::vector<KeyValue>& entries, bool& n_steps_seen)
{
    std::set<std::string> seen;
    for (const KeyValue& kv : entries) {
        if (!seen.insert(kv.key).second) {
            throw std::invalid_argument(line_tag(kv.line) + ": duplicate key '" + kv.key + "'");
        }
        if (kv.key == "beta") {
            scenario.params.beta = parse_double(kv);
        }
        else if (kv.key == "gamma") {
            scenario.params.gamma = parse_double(kv);
        }
        else if (kv.key == "mu") {
            scenario.params.mu = parse_double(kv);
        }
        else if (kv.key == "u_max") {
            scenario.params.u_max = parse_double(kv);
        }
        else if (kv.key == "p_max") {
            scenario.params.p_max = parse_double(kv);
        }
        else if (kv.key == "s0") {
            scenario.x0.s = parse_double(kv);
        }
        else if (kv.key == "e0") {
            scenario.x0.e = parse_double(kv);
        }
        else if (kv.key == "i0") {
            scenario.x0.i = parse_double(kv);
        }
        else if (kv.key == "r0") {
            scenario.x0.r = parse_double(kv);
        }
        else if (kv.key == "t0") {
            scenario.grid.t0 = parse_double(kv);
        }
        else if (kv.key == "T") {
            scenario.grid.T = parse_double(kv);
        }
        else if (kv.key == "n_steps") {
            const long long n = parse_count(kv);
            if (n < 1 || n > 100000000) {
                throw std::invalid_argument(line_tag(kv.line) + ": n_steps must lie in [1, 1e8], got " + kv.value);
            }
            scenario.grid.n_steps = static_cast<int>(n);
            n_steps_seen = true;
        }
        else {
            throw std::invalid_argument(line_tag(kv.line) + ": unknown key '" + kv.key + "'");
        }
    }
}

} // namespace

std::vector<KeyValue> parse_key_value_lines(const std::string& text)
{
    std::vector<KeyValue> entries;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string stripped = trim(raw);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line) + ": expected 'key = value', got '" +
                                        stripped + "'");
        }
        KeyValue kv;
        kv.line = line;
        kv.key = trim(stripped.substr(0, eq));
        kv.value = trim(stripped.substr(eq + 1));
        if (kv.key.empty() || kv.value.empty()) {
            throw std::invalid_argument("line " + std::to_string(line) + ": expected 'key = value', got '" +
                                        stripped + "'");
        }
        entries.push_back(std::move(kv));
    }
    return entries;
}

Scenario parse_scenario(const std::string& text)
{
    return parse_scenario(text, {});
}

Scenario parse_scenario(const std::string& text, const std::vector<KeyValue>& overrides)
{
    Scenario scenario;
    bool n_steps_seen = false;
    apply_assignments(scenario, parse_key_value_lines(text), n_steps_seen);

    // Command-line overrides replace file assignments, so re-assignment
    // across the two stages is fine; duplicates within a stage are not.
    bool n_steps_overridden = false;
    apply_assignments(scenario, overrides, n_steps_overridden);
    n_steps_seen = n_steps_seen || n_steps_overridden;

    if (!n_steps_seen) {
        const long long n = default_n_steps(scenario.grid.t0, scenario.grid.T);
        if (n > 100000000) {
            throw std::invalid_argument("horizon too long for the default step; set n_steps explicitly");
        }
        scenario.grid.n_steps = static_cast<int>(n);
    }
    scenario.validate();
    return scenario;
}

std::string format_exact(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) {
        throw std::runtime_error("failed to format a double");
    }
    return std::string(buf.data(), ptr);
}

std::string format_scenario(const Scenario& scenario)
{
    std::string out;
    out += "beta = " + format_exact(scenario.params.beta) + "\n";
    out += "gamma = " + format_exact(scenario.params.gamma) + "\n";
    out += "mu = " + format_exact(scenario.params.mu) + "\n";
    out += "u_max = " + format_exact(scenario.params.u_max) + "\n";
    out += "p_max = " + format_exact(scenario.params.p_max) + "\n";
    out += "s0 = " + format_exact(scenario.x0.s) + "\n";
    out += "e0 = " + format_exact(scenario.x0.e) + "\n";
    out += "i0 = " + format_exact(scenario.x0.i) + "\n";
    out += "r0 = " + format_exact(scenario.x0.r) + "\n";
    out += "t0 = " + format_exact(scenario.grid.t0) + "\n";
    out += "T = " + format_exact(scenario.grid.T) + "\n";
    out += "n_steps = " + std::to_string(scenario.grid.n_steps) + "\n";
    return out;
}

long long default_n_steps(double t0, double T)
{
    // Keep the nominal step at 0.01 regardless of horizon length.
    const long long n = std::llround((T - t0) * 100.0);
    return std::max<long long>(2, n);
}

} // namespace seiropt
