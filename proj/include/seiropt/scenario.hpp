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
#pragma once

#include "seiropt/types.hpp"

#include <string>
#include <vector>

namespace seiropt {

// One `key = value` assignment, tagged with the 1-based line it came from.
// Overrides passed on the command line use line 0.
struct KeyValue {
    int line = 0;
    std::string key;
    std::string value;
};

// Splits config text into assignments. `#` starts a comment (full-line or
// trailing), blank lines are skipped, keys and values are trimmed. A line
// that is neither blank, comment, nor `key = value` raises invalid_argument
// naming the line number.
std::vector<KeyValue> parse_key_value_lines(const std::string& text);

// Builds a Scenario from config text. Recognized keys: beta, gamma, mu,
// u_max, p_max, s0, e0, i0, r0, t0, T, n_steps. Any key may be omitted;
// defaults match Scenario{}. When n_steps is omitted it is derived from the
// horizon so the step stays 0.01. Unknown or duplicate keys and unparsable
// values raise invalid_argument with the offending line number. The result
// is validated before being returned.
Scenario parse_scenario(const std::string& text);

// Same, but `overrides` (typically from --set flags) are applied after the
// file's assignments and replace them key-by-key. Duplicates within the
// override list itself are also rejected.
Scenario parse_scenario(const std::string& text, const std::vector<KeyValue>& overrides);

// Shortest decimal form that parses back to exactly the same double.
std::string format_exact(double value);

// Serializes a scenario as config text that parse_scenario() round-trips
// bit-for-bit. Used for the summary sidecar.
std::string format_scenario(const Scenario& scenario);

// Default node-count rule used when a config omits n_steps.
long long default_n_steps(double t0, double T);

} // namespace seiropt
