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
#include "seiropt/cli.hpp"

#include "seiropt/direct.hpp"
#include "seiropt/numerics.hpp"
#include "seiropt/report_io.hpp"
#include "seiropt/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace seiropt {

namespace {

std::string format9(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string trim_copy(const std::string& text)
{
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    if (first == std::string::npos) {
        return {};
    }
    const std::size_t last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

Scenario load_scenario(const std::string& config_path, const std::vector<std::string>& sets)
{
    std::string text;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open config '" + config_path + "' for reading");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    std::vector<KeyValue> overrides;
    overrides.reserve(sets.size());
    for (const std::string& item : sets) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + item + "'");
        }
        KeyValue kv;
        kv.line = 0;
        kv.key = trim_copy(item.substr(0, eq));
        kv.value = trim_copy(item.substr(eq + 1));
        if (kv.key.empty() || kv.value.empty()) {
            throw std::invalid_argument("--set expects key=value, got '" + item + "'");
        }
        overrides.push_back(std::move(kv));
    }
    return parse_scenario(text, overrides);
}

InitStrategy init_from_string(const std::string& name)
{
    if (name == "zero") {
        return InitStrategy::Zero;
    }
    if (name == "max") {
        return InitStrategy::Max;
    }
    if (name == "random") {
        return InitStrategy::Random;
    }
    throw std::invalid_argument("unknown init strategy '" + name + "'");
}

void emit_outputs(const SolveReport& report, const std::string& out, const std::string& plot_script)
{
    write_solution(report, out);
    std::cout << format_summary(report);
    std::cout << "wrote " << out << "\n";
    std::cout << "wrote " << out << ".summary\n";
    if (!plot_script.empty()) {
        write_plot_script(report, out, plot_script);
        std::cout << "wrote " << plot_script << "\n";
    }
}

struct ScenarioOpts {
    std::string config_path;
    std::vector<std::string> sets;
};

void add_scenario_options(CLI::App* sub, ScenarioOpts& opts)
{
    sub->add_option("--config", opts.config_path, "Scenario config file (key = value lines)");
    sub->add_option("--set", opts.sets, "Override one scenario key, e.g. --set T=100 (repeatable)");
}

int run_simulate(const ScenarioOpts& sopts, const std::string& out, const std::string& plot_script)
{
    const Scenario scenario = load_scenario(sopts.config_path, sopts.sets);
    SolveReport report;
    report.method = Method::Simulate;
    report.scenario = scenario;
    report.controls = zero_controls(scenario.grid, ControlVariant::Uncontrolled);
    report.trajectory = integrate_forward(scenario.x0, scenario.params, report.controls);
    report.sweeps_or_iters = 0;
    report.converged = true;
    report.stationarity_residual = 0.0;
    emit_outputs(report, out, plot_script);
    return exit_ok;
}

struct SolveOpts {
    ScenarioOpts scenario;
    std::string problem;
    std::string method = "fbsm";
    std::string out;
    std::string plot_script;
    std::string init = "zero";
    std::uint64_t seed = default_seed;
    double damping = 0.5;
    double tol = -1.0; // negative means the method default
    int max_iter = 0;  // zero means the method default
};

int run_solve(const SolveOpts& opts)
{
    const Scenario scenario = load_scenario(opts.scenario.config_path, opts.scenario.sets);
    const std::optional<ProblemId> parsed = problem_from_string(opts.problem);
    if (!parsed) {
        throw std::invalid_argument("unknown problem '" + opts.problem + "'");
    }
    const ProblemId id = *parsed;

    SolveReport report;
    if (opts.method == "fbsm") {
        FbsmConfig cfg;
        cfg.damping = opts.damping;
        if (opts.tol > 0.0) {
            cfg.tol = opts.tol;
        }
        if (opts.max_iter > 0) {
            cfg.max_sweeps = opts.max_iter;
        }
        cfg.init = init_from_string(opts.init);
        cfg.seed = opts.seed;
        report = solve_fbsm(scenario, id, cfg);
    }
    else {
        DirectConfig cfg;
        if (opts.tol > 0.0) {
            cfg.grad_tol = opts.tol;
        }
        if (opts.max_iter > 0) {
            cfg.max_iters = opts.max_iter;
        }
        cfg.init = init_from_string(opts.init);
        cfg.seed = opts.seed;
        report = solve_projected_gradient(scenario, id, cfg);
    }

    std::string out = opts.out;
    if (out.empty()) {
        out = opts.problem + "_" + opts.method + ".csv";
    }
    emit_outputs(report, out, opts.plot_script);
    if (!report.converged) {
        std::cerr << "solver did not converge: residual " << format9(report.stationarity_residual) << " after "
                  << report.sweeps_or_iters << " iterations\n";
        return exit_no_convergence;
    }
    return exit_ok;
}

int run_compare(const std::string& path_a, const std::string& path_b)
{
    const SolveReport a = read_solution(path_a);
    const SolveReport b = read_solution(path_b);
    const ComparisonMetrics ab = compare_solutions(a, b);
    const ComparisonMetrics ba = compare_solutions(b, a);
    std::cout << "objective_gap = " << format9(ab.objective_gap) << "\n";
    std::cout << "control_l2_distance = " << format9(ab.control_l2_distance) << "\n";
    std::cout << "a.peak_time_u = " << format9(ab.peak_time_u) << "\n";
    std::cout << "a.peak_time_p = " << format9(ab.peak_time_p) << "\n";
    std::cout << "a.max_i = " << format9(ab.max_i) << "\n";
    std::cout << "a.terminal_r = " << format9(ab.terminal_r) << "\n";
    std::cout << "b.peak_time_u = " << format9(ba.peak_time_u) << "\n";
    std::cout << "b.peak_time_p = " << format9(ba.peak_time_p) << "\n";
    std::cout << "b.max_i = " << format9(ba.max_i) << "\n";
    std::cout << "b.terminal_r = " << format9(ba.terminal_r) << "\n";
    return exit_ok;
}

struct GradcheckOpts {
    ScenarioOpts scenario;
    std::string problem = "all";
    int coords = 20; // 0 checks every coordinate
    double delta = 1e-5;
    double fd_tol = 1e-4;
    std::uint64_t seed = default_seed;
};

double gradcheck_problem(ProblemId id, const Scenario& scenario, const GradcheckOpts& opts)
{
    const ProblemSetup setup = problem_spec(id);
    const ControlSignal signal = make_initial_controls(scenario, setup.variant, InitStrategy::Random, opts.seed);
    const GradientVector grad = objective_gradient(signal, scenario, id);

    const std::size_t n = scenario.grid.n_nodes();
    const std::size_t n_u = vaccination_active(setup.variant) ? n : 0;
    const std::size_t n_p = plasma_active(setup.variant) ? n : 0;
    const std::size_t total = n_u + n_p;

    auto analytic_at = [&](std::size_t c) { return c < n_u ? grad.du[c] : grad.dp[c - n_u]; };
    auto central_at = [&](std::size_t c) {
        ControlSignal probe = signal;
        std::vector<double>& channel = c < n_u ? probe.u_values : probe.p_values;
        const std::size_t k = c < n_u ? c : c - n_u;
        const double saved = channel[k];
        channel[k] = saved + opts.delta;
        const double plus =
            evaluate_cost(setup.weights, integrate_forward(scenario.x0, scenario.params, probe), probe);
        channel[k] = saved - opts.delta;
        const double minus =
            evaluate_cost(setup.weights, integrate_forward(scenario.x0, scenario.params, probe), probe);
        return (plus - minus) / (2.0 * opts.delta);
    };

    double worst = 0.0;
    std::size_t checked = 0;
    if (opts.coords == 0) {
        const GradientVector fd = finite_difference_gradient(signal, scenario, id, opts.delta);
        for (std::size_t c = 0; c < total; ++c) {
            const double reference = c < n_u ? fd.du[c] : fd.dp[c - n_u];
            worst = std::max(worst, std::abs(analytic_at(c) - reference) / (1.0 + std::abs(reference)));
        }
        checked = total;
    }
    else {
        std::mt19937_64 rng(opts.seed + 1);
        for (int draw = 0; draw < opts.coords; ++draw) {
            std::size_t c = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(total));
            c = std::min(c, total - 1);
            const double reference = central_at(c);
            worst = std::max(worst, std::abs(analytic_at(c) - reference) / (1.0 + std::abs(reference)));
        }
        checked = static_cast<std::size_t>(opts.coords);
    }
    std::cout << to_string(id) << ": checked " << checked << " coordinates, max_rel_err = " << format9(worst)
              << "\n";
    return worst;
}

int run_gradcheck(const GradcheckOpts& opts)
{
    if (opts.coords < 0) {
        throw std::invalid_argument("--coords must be nonnegative");
    }
    if (!(opts.delta > 0.0)) {
        throw std::invalid_argument("--delta must be positive");
    }
    if (!(opts.fd_tol > 0.0)) {
        throw std::invalid_argument("--fd-tol must be positive");
    }
    const Scenario scenario = load_scenario(opts.scenario.config_path, opts.scenario.sets);

    std::vector<ProblemId> ids;
    if (opts.problem == "all") {
        ids = {ProblemId::OC1, ProblemId::OC2, ProblemId::OC3, ProblemId::OC4, ProblemId::OC5};
    }
    else {
        const std::optional<ProblemId> parsed = problem_from_string(opts.problem);
        if (!parsed) {
            throw std::invalid_argument("unknown problem '" + opts.problem + "'");
        }
        ids = {*parsed};
    }

    double worst = 0.0;
    for (const ProblemId id : ids) {
        worst = std::max(worst, gradcheck_problem(id, scenario, opts));
    }
    std::cout << "max_rel_err = " << format9(worst) << "\n";
    if (worst > opts.fd_tol) {
        std::cerr << "gradient check failed: max relative error " << format9(worst) << " exceeds "
                  << format9(opts.fd_tol) << "\n";
        return exit_gradcheck;
    }
    return exit_ok;
}

int run_cli_impl(const std::vector<std::string>& args)
{
    CLI::App app{"SEIR vaccination/plasma-transfusion optimal-control toolkit", "seiropt"};
    app.require_subcommand(1);
    int exit_code = exit_ok;

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Integrate the uncontrolled model and write a CSV");
    ScenarioOpts sim_scenario;
    std::string sim_out = "simulate.csv";
    std::string sim_plot;
    add_scenario_options(simulate, sim_scenario);
    simulate->add_option("--out", sim_out, "Output CSV path")->capture_default_str();
    simulate->add_option("--plot-script", sim_plot, "Also write a gnuplot script at this path");
    simulate->callback([&]() { exit_code = run_simulate(sim_scenario, sim_out, sim_plot); });

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one of the optimal-control problems oc1..oc5");
    SolveOpts solve_opts;
    add_scenario_options(solve, solve_opts.scenario);
    solve->add_option("--problem", solve_opts.problem, "Problem id")
        ->required()
        ->check(CLI::IsMember({"oc1", "oc2", "oc3", "oc4", "oc5"}));
    solve->add_option("--method", solve_opts.method, "Solver")
        ->check(CLI::IsMember({"fbsm", "direct"}))
        ->capture_default_str();
    solve->add_option("--out", solve_opts.out, "Output CSV path (default <problem>_<method>.csv)");
    solve->add_option("--plot-script", solve_opts.plot_script, "Also write a gnuplot script at this path");
    solve->add_option("--init", solve_opts.init, "Initial control guess")
        ->check(CLI::IsMember({"zero", "max", "random"}))
        ->capture_default_str();
    solve->add_option("--seed", solve_opts.seed, "Seed for --init random")->capture_default_str();
    solve->add_option("--fbsm-damping", solve_opts.damping, "FBSM control-update damping in (0, 1]")
        ->capture_default_str();
    solve->add_option("--tol", solve_opts.tol,
                      "Convergence tolerance (FBSM residual or direct gradient norm); negative keeps the default");
    solve->add_option("--max-iter", solve_opts.max_iter, "Iteration cap; zero keeps the default");
    solve->callback([&]() { exit_code = run_solve(solve_opts); });

    // compare
    auto* compare = app.add_subcommand("compare", "Compare two solution CSVs written by simulate/solve");
    std::string compare_a;
    std::string compare_b;
    compare->add_option("csv_a", compare_a, "First solution CSV")->required();
    compare->add_option("csv_b", compare_b, "Second solution CSV")->required();
    compare->callback([&]() { exit_code = run_compare(compare_a, compare_b); });

    // gradcheck
    auto* gradcheck = app.add_subcommand(
        "gradcheck", "Check the adjoint objective gradient against central finite differences");
    GradcheckOpts gc_opts;
    add_scenario_options(gradcheck, gc_opts.scenario);
    gradcheck->add_option("--problem", gc_opts.problem, "Problem id or 'all'")
        ->check(CLI::IsMember({"all", "oc1", "oc2", "oc3", "oc4", "oc5"}))
        ->capture_default_str();
    gradcheck->add_option("--coords", gc_opts.coords, "Coordinates to sample per problem (0 = every coordinate)")
        ->capture_default_str();
    gradcheck->add_option("--delta", gc_opts.delta, "Central-difference step")->capture_default_str();
    gradcheck->add_option("--fd-tol", gc_opts.fd_tol, "Maximum acceptable relative error")->capture_default_str();
    gradcheck->add_option("--seed", gc_opts.seed, "Seed for the random controls and coordinate sample")
        ->capture_default_str();
    gradcheck->callback([&]() { exit_code = run_gradcheck(gc_opts); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::Success& e) {
        return app.exit(e); // --help and friends
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_code;
}

} // namespace

int run_cli(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli_impl(args);
}

int run_cli(const std::vector<std::string>& args)
{
    return run_cli_impl(args);
}

} // namespace seiropt
