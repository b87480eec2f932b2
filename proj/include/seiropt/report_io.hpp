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

#include "seiropt/pmp.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace seiropt {

// Raised for unreadable, unwritable, or structurally malformed files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scalar comparison between two solutions on the same grid. The gap and the
// L2 distance are symmetric; peak_time_u, peak_time_p, max_i, and terminal_r
// describe solution `a` (swap the arguments for the other side).
struct ComparisonMetrics {
    double objective_gap = 0.0;
    double control_l2_distance = 0.0;
    double peak_time_u = 0.0;
    double peak_time_p = 0.0;
    double max_i = 0.0;
    double terminal_r = 0.0;
};

// Time of the largest value in `values` on `grid` (earliest node on ties).
double control_peak_time(const TimeGrid& grid, std::span<const double> values);

// Sidecar summary text for a report: solver metadata followed by the exact
// scenario echo, all in `key = value` form.
std::string format_summary(const SolveReport& report);

// Writes `report` as a CSV at `csv_path` plus a `<csv_path>.summary` sidecar.
// CSV columns: t,s,e,i,r,u,p,lambda1,lambda2,lambda3,lambda4 with 9
// significant digits and LF line endings; adjoint columns are left empty for
// reports without costates. Output is byte-deterministic.
void write_solution(const SolveReport& report, const std::filesystem::path& csv_path);

// Reads back a CSV written by write_solution, using the sidecar for the
// scenario and solver metadata. States are re-validated at a tolerance
// matching the 9-digit rounding. Structural problems raise IoError.
SolveReport read_solution(const std::filesystem::path& csv_path);

// Fills all metric fields; both reports must share one grid. Reports without
// a stored objective (plain simulations) contribute 0 to the gap.
ComparisonMetrics compare_solutions(const SolveReport& a, const SolveReport& b);

// Emits a gnuplot script at `script_path` plotting states and controls from
// `csv_path`, referencing the CSV by relative path where possible. Running
// the script produces `<script stem>.png` next to it.
void write_plot_script(const SolveReport& report, const std::filesystem::path& csv_path,
                       const std::filesystem::path& script_path);

} // namespace seiropt
