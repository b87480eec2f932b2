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
#include "seiropt/report_io.hpp"

#include "seiropt/objectives.hpp"
#include "seiropt/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace seiropt {

namespace {

constexpr const char* csv_header = "t,s,e,i,r,u,p,lambda1,lambda2,lambda3,lambda4";

// States re-read from 9-significant-digit text cannot satisfy the strict
// simplex tolerance, so round-tripped rows are checked at this one instead.
constexpr double reread_state_tol = 1e-6;

std::string format_cell(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) {
        throw IoError("failed while reading '" + path.string() + "'");
    }
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out.good()) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

std::vector<std::string> split_csv_row(const std::string& line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_csv_number(const std::string& field, std::size_t row, const char* column)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError("row " + std::to_string(row) + ": column " + column + " holds '" + field +
                      "', which is not a number");
    }
    return out;
}

Method method_from_string(const std::string& text)
{
    if (text == "fbsm") {
        return Method::Fbsm;
    }
    if (text == "direct") {
        return Method::Direct;
    }
    if (text == "simulate") {
        return Method::Simulate;
    }
    throw IoError("unknown method '" + text + "' in summary");
}

double parse_summary_number(const std::string& value, const std::string& key)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw IoError("summary key '" + key + "' holds '" + value + "', which is not a number");
    }
    return out;
}

} // namespace

double control_peak_time(const TimeGrid& grid, std::span<const double> values)
{
    if (values.size() != static_cast<std::size_t>(grid.n_nodes())) {
        throw std::invalid_argument("control series length does not match the grid");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best]) { // strict, so ties keep the earliest node
            best = k;
        }
    }
    return grid.time_at(static_cast<int>(best));
}

std::string format_summary(const SolveReport& report)
{
    std::string out;
    out += "method = " + std::string(to_string(report.method)) + "\n";
    if (report.problem) {
        out += "problem = " + std::string(to_string(*report.problem)) + "\n";
    }
    if (report.objective) {
        out += "objective = " + format_exact(*report.objective) + "\n";
    }
    out += "converged = " + std::string(report.converged ? "1" : "0") + "\n";
    out += "iterations = " + std::to_string(report.sweeps_or_iters) + "\n";
    out += "stationarity_residual = " + format_exact(report.stationarity_residual) + "\n";
    out += format_scenario(report.scenario);
    return out;
}

void write_solution(const SolveReport& report, const std::filesystem::path& csv_path)
{
    const std::size_t n_nodes = static_cast<std::size_t>(report.trajectory.grid.n_nodes());
    if (report.trajectory.states.size() != n_nodes || report.controls.u_values.size() != n_nodes ||
        report.controls.p_values.size() != n_nodes) {
        throw std::invalid_argument("report arrays do not match the grid");
    }
    if (report.adjoints && report.adjoints->costates.size() != n_nodes) {
        throw std::invalid_argument("report adjoint array does not match the grid");
    }

    std::string csv;
    csv.reserve(n_nodes * 96 + 64);
    csv += csv_header;
    csv += '\n';
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const StateFractions& x = report.trajectory.states[k];
        csv += format_cell(report.trajectory.grid.time_at(static_cast<int>(k)));
        csv += ',';
        csv += format_cell(x.s);
        csv += ',';
        csv += format_cell(x.e);
        csv += ',';
        csv += format_cell(x.i);
        csv += ',';
        csv += format_cell(x.r);
        csv += ',';
        csv += format_cell(report.controls.u_values[k]);
        csv += ',';
        csv += format_cell(report.controls.p_values[k]);
        if (report.adjoints) {
            const AdjointVector& lam = report.adjoints->costates[k];
            csv += ',';
            csv += format_cell(lam.lambda1);
            csv += ',';
            csv += format_cell(lam.lambda2);
            csv += ',';
            csv += format_cell(lam.lambda3);
            csv += ',';
            csv += format_cell(lam.lambda4);
        }
        else {
            csv += ",,,,";
        }
        csv += '\n';
    }
    write_text_file(csv_path, csv);

    std::filesystem::path summary_path = csv_path;
    summary_path += ".summary";
    write_text_file(summary_path, format_summary(report));
}

SolveReport read_solution(const std::filesystem::path& csv_path)
{
    std::filesystem::path summary_path = csv_path;
    summary_path += ".summary";

    // Sidecar first: it carries the grid needed to size-check the CSV.
    std::map<std::string, std::string> meta;
    std::string scenario_text;
    for (const KeyValue& kv : parse_key_value_lines(read_text_file(summary_path))) {
        if (kv.key == "method" || kv.key == "problem" || kv.key == "objective" || kv.key == "converged" ||
            kv.key == "iterations" || kv.key == "stationarity_residual") {
            if (!meta.emplace(kv.key, kv.value).second) {
                throw IoError("summary repeats key '" + kv.key + "'");
            }
        }
        else {
            scenario_text += kv.key + " = " + kv.value + "\n";
        }
    }
    for (const char* required : {"method", "converged", "iterations", "stationarity_residual"}) {
        if (!meta.count(required)) {
            throw IoError("summary is missing key '" + std::string(required) + "'");
        }
    }

    SolveReport report;
    report.method = method_from_string(meta.at("method"));
    if (meta.count("problem")) {
        report.problem = problem_from_string(meta.at("problem"));
        if (!report.problem) {
            throw IoError("unknown problem '" + meta.at("problem") + "' in summary");
        }
    }
    if (meta.count("objective")) {
        report.objective = parse_summary_number(meta.at("objective"), "objective");
    }
    const std::string& conv = meta.at("converged");
    if (conv != "0" && conv != "1") {
        throw IoError("summary key 'converged' must be 0 or 1, got '" + conv + "'");
    }
    report.converged = conv == "1";
    report.sweeps_or_iters = static_cast<int>(parse_summary_number(meta.at("iterations"), "iterations"));
    report.stationarity_residual = parse_summary_number(meta.at("stationarity_residual"), "stationarity_residual");
    report.scenario = parse_scenario(scenario_text);

    const TimeGrid& grid = report.scenario.grid;
    const std::size_t n_nodes = static_cast<std::size_t>(grid.n_nodes());
    const ControlVariant variant =
        report.problem ? problem_spec(*report.problem).variant : ControlVariant::Uncontrolled;

    std::istringstream csv(read_text_file(csv_path));
    std::string line;
    if (!std::getline(csv, line)) {
        throw IoError("'" + csv_path.string() + "' is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != csv_header) {
        throw IoError("'" + csv_path.string() + "' has an unexpected header '" + line + "'");
    }

    report.trajectory.grid = grid;
    report.trajectory.states.reserve(n_nodes);
    report.controls.grid = grid;
    report.controls.variant = variant;
    report.controls.u_values.reserve(n_nodes);
    report.controls.p_values.reserve(n_nodes);
    std::optional<bool> has_adjoints;
    AdjointTrajectory adjoints;
    adjoints.grid = grid;

    std::size_t row = 0;
    while (std::getline(csv, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue; // trailing newline
        }
        ++row;
        const std::vector<std::string> fields = split_csv_row(line);
        if (fields.size() != 11) {
            throw IoError("row " + std::to_string(row) + ": expected 11 fields, got " +
                          std::to_string(fields.size()));
        }
        if (row > n_nodes) {
            throw IoError("'" + csv_path.string() + "' has more rows than the grid in its summary");
        }

        const double t = parse_csv_number(fields[0], row, "t");
        const double expected_t = grid.time_at(static_cast<int>(row) - 1);
        if (std::abs(t - expected_t) > 1e-6 * std::max(1.0, std::abs(expected_t))) {
            throw IoError("row " + std::to_string(row) + ": time " + fields[0] +
                          " does not match the grid in the summary");
        }

        StateFractions x;
        x.s = parse_csv_number(fields[1], row, "s");
        x.e = parse_csv_number(fields[2], row, "e");
        x.i = parse_csv_number(fields[3], row, "i");
        x.r = parse_csv_number(fields[4], row, "r");
        x.validate(reread_state_tol);
        report.trajectory.states.push_back(x);
        report.controls.u_values.push_back(parse_csv_number(fields[5], row, "u"));
        report.controls.p_values.push_back(parse_csv_number(fields[6], row, "p"));

        const bool row_has_adjoints = !fields[7].empty() || !fields[8].empty() || !fields[9].empty() ||
                                      !fields[10].empty();
        if (has_adjoints && *has_adjoints != row_has_adjoints) {
            throw IoError("row " + std::to_string(row) + ": adjoint columns are filled on some rows but not others");
        }
        has_adjoints = row_has_adjoints;
        if (row_has_adjoints) {
            AdjointVector lam;
            lam.lambda1 = parse_csv_number(fields[7], row, "lambda1");
            lam.lambda2 = parse_csv_number(fields[8], row, "lambda2");
            lam.lambda3 = parse_csv_number(fields[9], row, "lambda3");
            lam.lambda4 = parse_csv_number(fields[10], row, "lambda4");
            adjoints.costates.push_back(lam);
        }
    }
    if (row != n_nodes) {
        throw IoError("'" + csv_path.string() + "' has " + std::to_string(row) + " data rows but the grid needs " +
                      std::to_string(n_nodes));
    }
    report.controls.validate(report.scenario.params);
    if (has_adjoints && *has_adjoints) {
        report.adjoints = std::move(adjoints);
    }
    return report;
}

ComparisonMetrics compare_solutions(const SolveReport& a, const SolveReport& b)
{
    const TimeGrid& grid = a.trajectory.grid;
    if (!grids_equal(grid, b.trajectory.grid)) {
        throw std::invalid_argument("cannot compare solutions on different grids");
    }

    ComparisonMetrics m;
    const double obj_a = a.objective.value_or(0.0);
    const double obj_b = b.objective.value_or(0.0);
    m.objective_gap = std::abs(obj_a - obj_b);

    const std::vector<double> w = trapezoid_weights(grid);
    double sq = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double du = a.controls.u_values[k] - b.controls.u_values[k];
        const double dp = a.controls.p_values[k] - b.controls.p_values[k];
        sq += w[k] * (du * du + dp * dp);
    }
    m.control_l2_distance = std::sqrt(sq);

    m.peak_time_u = control_peak_time(grid, a.controls.u_values);
    m.peak_time_p = control_peak_time(grid, a.controls.p_values);
    m.max_i = a.trajectory.states.front().i;
    for (const StateFractions& x : a.trajectory.states) {
        m.max_i = std::max(m.max_i, x.i);
    }
    m.terminal_r = a.trajectory.states.back().r;
    return m;
}

void write_plot_script(const SolveReport& report, const std::filesystem::path& csv_path,
                       const std::filesystem::path& script_path)
{
    const std::filesystem::path base =
        script_path.has_parent_path() ? script_path.parent_path() : std::filesystem::path(".");
    std::error_code ec;
    std::filesystem::path rel = std::filesystem::relative(csv_path, base, ec);
    if (ec || rel.empty()) {
        rel = csv_path;
    }
    const std::string data = rel.generic_string();
    const std::string png = script_path.stem().string() + ".png";

    std::string title;
    if (report.problem) {
        title = std::string(to_string(*report.problem)) + " via " + to_string(report.method);
    }
    else {
        title = "uncontrolled simulation";
    }

    std::string out;
    out += "set datafile separator ','\n";
    out += "set key autotitle columnhead\n";
    out += "set terminal pngcairo size 1200,900\n";
    out += "set output '" + png + "'\n";
    out += "set multiplot layout 2,1 title '" + title + "'\n";
    out += "set xlabel 't'\n";
    out += "set ylabel 'fraction'\n";
    out += "plot '" + data + "' using 1:2 with lines title 's', \\\n";
    out += "     '' using 1:3 with lines title 'e', \\\n";
    out += "     '' using 1:4 with lines title 'i', \\\n";
    out += "     '' using 1:5 with lines title 'r'\n";
    out += "set ylabel 'control'\n";
    out += "set yrange [-0.02:*]\n";
    out += "plot '" + data + "' using 1:6 with lines title 'u', \\\n";
    out += "     '' using 1:7 with lines title 'p'\n";
    out += "unset multiplot\n";
    write_text_file(script_path, out);
}

} // namespace seiropt
