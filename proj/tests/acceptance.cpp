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

// Acceptance gate for the toolkit: ten numbered end-to-end checks, each
// printing exactly one PASS/FAIL line with the measured quantities. Run a
// single criterion with `acceptance N` (used by ctest) or everything with
// `acceptance all`. The exit code is the number of failed criteria.

#include "seiropt/direct.hpp"
#include "seiropt/report_io.hpp"
#include "seiropt/scenario.hpp"

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

using namespace seiropt;

namespace {

struct Criterion {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...)
{
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

class Stopwatch {
public:
    double seconds() const
    {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Scenario stock()
{
    return Scenario{};
}

Scenario horizon(double T)
{
    Scenario scenario;
    scenario.grid.T = T;
    scenario.grid.n_steps = default_n_steps(scenario.grid.t0, T);
    return scenario;
}

double max_infected(const Trajectory& traj)
{
    double worst = 0.0;
    for (const StateFractions& x : traj.states) {
        worst = std::max(worst, x.i);
    }
    return worst;
}

// Time of the first node whose vaccination value has left the upper bound.
double saturation_end(const SolveReport& report, double slack)
{
    const std::vector<double>& u = report.controls.u_values;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] < report.scenario.params.u_max - slack) {
            return report.scenario.grid.time_at(static_cast<int>(k));
        }
    }
    return report.scenario.grid.T;
}

// Average decrease per unit time from the start of the decaying segment to
// the horizon. Positive for a control that falls off.
double mean_decay_rate(const SolveReport& report, double slack)
{
    const std::vector<double>& u = report.controls.u_values;
    std::size_t k0 = 0;
    while (k0 + 1 < u.size() && u[k0] >= report.scenario.params.u_max - slack) {
        ++k0;
    }
    const double t0 = report.scenario.grid.time_at(static_cast<int>(k0));
    const double T = report.scenario.grid.T;
    return (u[k0] - u.back()) / (T - t0);
}

// 1. Long uncontrolled run: epidemic burns out, most of the population ends
//    up recovered.
Criterion criterion1()
{
    constexpr double min_recovered = 0.40;
    constexpr double max_residual_fraction = 0.02;
    constexpr double budget_seconds = 1.0;

    Stopwatch clock;
    const Scenario scenario = horizon(100.0);
    const ControlSignal none = zero_controls(scenario.grid, ControlVariant::Uncontrolled);
    const Trajectory traj = integrate_forward(scenario.x0, scenario.params, none);
    const StateFractions& end = traj.states.back();
    const double elapsed = clock.seconds();

    Criterion c;
    c.pass = end.r > min_recovered && end.i < max_residual_fraction && end.e < max_residual_fraction &&
             elapsed < budget_seconds;
    c.detail = fmt("r(100)=%.4f i(100)=%.2e e(100)=%.2e [%.2f s]", end.r, end.i, end.e, elapsed);
    return c;
}

// 2. OC1 vaccination profile: starts at the bound and never increases.
Criterion criterion2()
{
    constexpr double bound_tol = 1e-3;
    constexpr double rise_tol = 1e-3;
    constexpr double budget_seconds = 10.0;

    Stopwatch clock;
    const SolveReport report = solve_fbsm(stock(), ProblemId::OC1);
    const std::vector<double>& u = report.controls.u_values;
    double max_rise = 0.0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        max_rise = std::max(max_rise, u[k + 1] - u[k]);
    }
    const double elapsed = clock.seconds();

    const bool starts_at_bound = std::abs(u.front() - report.scenario.params.u_max) <= bound_tol;
    const bool non_increasing = max_rise <= rise_tol;
    Criterion c;
    c.pass = report.converged && starts_at_bound && non_increasing && elapsed < budget_seconds;
    c.detail = fmt("u*(0)=%.6f (bound %.2f) max_rise=%.2e sweeps=%d [%.2f s]", u.front(),
                   report.scenario.params.u_max, max_rise, report.sweeps_or_iters, elapsed);
    return c;
}

// 3. OC2 vaccination profile: saturated for about three time units, then a
//    shallower decay than OC1's.
Criterion criterion3()
{
    constexpr double bound_slack = 1e-3;
    constexpr double saturation_min = 2.0;
    constexpr double saturation_max = 4.0;

    const SolveReport oc2 = solve_fbsm(stock(), ProblemId::OC2);
    const SolveReport oc1 = solve_fbsm(stock(), ProblemId::OC1);
    const double saturated_for = saturation_end(oc2, bound_slack);
    const double rate2 = mean_decay_rate(oc2, bound_slack);
    const double rate1 = mean_decay_rate(oc1, bound_slack);

    const bool saturation_ok = saturated_for >= saturation_min && saturated_for <= saturation_max;
    const bool shallower = std::abs(rate2) < std::abs(rate1);
    Criterion c;
    c.pass = oc1.converged && oc2.converged && saturation_ok && shallower;
    c.detail = fmt("saturated_for=%.2f decay_rate oc2=%.4f oc1=%.4f", saturated_for, rate2, rate1);
    return c;
}

// 4. Plasma transfusion peaks later than vaccination across problems.
Criterion criterion4()
{
    const SolveReport oc1 = solve_fbsm(stock(), ProblemId::OC1);
    const SolveReport oc3 = solve_fbsm(stock(), ProblemId::OC3);
    const double peak_u = control_peak_time(oc1.scenario.grid, oc1.controls.u_values);
    const double peak_p = control_peak_time(oc3.scenario.grid, oc3.controls.p_values);

    Criterion c;
    c.pass = oc1.converged && oc3.converged && peak_p > peak_u;
    c.detail = fmt("oc3 p* peak at t=%.3f, oc1 u* peak at t=%.3f", peak_p, peak_u);
    return c;
}

// 5. OC4 on the long horizon: no plasma transfusion early on, and its peak
//    comes after the OC3 peak.
Criterion criterion5()
{
    constexpr double quiet_level = 0.01;
    constexpr double quiet_span = 5.0;

    const Scenario scenario = horizon(100.0);
    const SolveReport oc4 = solve_fbsm(scenario, ProblemId::OC4);
    const SolveReport oc3 = solve_fbsm(scenario, ProblemId::OC3);

    double quiet_until = scenario.grid.T;
    const std::vector<double>& p4 = oc4.controls.p_values;
    for (std::size_t k = 0; k < p4.size(); ++k) {
        if (p4[k] >= quiet_level) {
            quiet_until = scenario.grid.time_at(static_cast<int>(k));
            break;
        }
    }
    const double peak3 = control_peak_time(scenario.grid, oc3.controls.p_values);
    const double peak4 = control_peak_time(scenario.grid, p4);

    Criterion c;
    c.pass = oc3.converged && oc4.converged && quiet_until >= quiet_span && peak3 < peak4;
    c.detail = fmt("oc4 p*<%.2f until t=%.2f; peaks oc3=%.2f oc4=%.2f", quiet_level, quiet_until, peak3, peak4);
    return c;
}

// 6. OC5: the vaccination peak precedes the plasma peak.
Criterion criterion6()
{
    const SolveReport oc5 = solve_fbsm(stock(), ProblemId::OC5);
    const double peak_u = control_peak_time(oc5.scenario.grid, oc5.controls.u_values);
    const double peak_p = control_peak_time(oc5.scenario.grid, oc5.controls.p_values);

    Criterion c;
    c.pass = oc5.converged && peak_u < peak_p;
    c.detail = fmt("peak_time_u=%.3f peak_time_p=%.3f", peak_u, peak_p);
    return c;
}

// 7. Combining both controls suppresses infections hardest; vaccination
//    alone recovers the most people.
Criterion criterion7()
{
    const SolveReport oc1 = solve_fbsm(stock(), ProblemId::OC1);
    const SolveReport oc3 = solve_fbsm(stock(), ProblemId::OC3);
    const SolveReport oc5 = solve_fbsm(stock(), ProblemId::OC5);
    const double mi1 = max_infected(oc1.trajectory);
    const double mi3 = max_infected(oc3.trajectory);
    const double mi5 = max_infected(oc5.trajectory);
    const double r1 = oc1.trajectory.states.back().r;
    const double r3 = oc3.trajectory.states.back().r;

    Criterion c;
    c.pass = oc1.converged && oc3.converged && oc5.converged && mi5 < mi1 && mi5 < mi3 && r1 > r3;
    c.detail = fmt("max_i oc5=%.5f oc1=%.5f oc3=%.5f; terminal_r oc1=%.4f oc3=%.4f", mi5, mi1, mi3, r1, r3);
    return c;
}

// 8. Cross-method oracle: the two solvers agree on every stock problem.
Criterion criterion8()
{
    constexpr double objective_rel_tol = 1e-3;
    constexpr double control_l2_tol = 0.02;
    constexpr double budget_seconds = 60.0;

    Stopwatch clock;
    double worst_rel = 0.0;
    double worst_l2 = 0.0;
    int not_converged = 0;
    for (const ProblemId id :
         {ProblemId::OC1, ProblemId::OC2, ProblemId::OC3, ProblemId::OC4, ProblemId::OC5}) {
        const SolveReport fbsm = solve_fbsm(stock(), id);
        const SolveReport direct = solve_projected_gradient(stock(), id);
        not_converged += fbsm.converged ? 0 : 1;
        not_converged += direct.converged ? 0 : 1;
        const double ja = fbsm.objective.value();
        const double jb = direct.objective.value();
        const double rel = std::abs(ja - jb) / std::max({std::abs(ja), std::abs(jb), 1e-12});
        worst_rel = std::max(worst_rel, rel);
        worst_l2 = std::max(worst_l2, compare_solutions(fbsm, direct).control_l2_distance);
    }
    const double elapsed = clock.seconds();

    Criterion c;
    c.pass = worst_rel <= objective_rel_tol && worst_l2 <= control_l2_tol && elapsed < budget_seconds;
    c.detail = fmt("worst objective rel gap=%.2e, worst control L2=%.2e, unconverged runs=%d [%.1f s]", worst_rel,
                   worst_l2, not_converged, elapsed);
    return c;
}

// 9. Property suite rolled into one gate:
//    (a) costate equations match central differences of the Hamiltonian,
//    (b) the adjoint objective gradient matches finite differences,
//    (c) computed trajectories stay on the simplex,
//    (d) terminal costates are exactly zero,
//    (e) the OC1 lambda4 component vanishes identically,
//    (f) FBSM lands on the same OC1 control from different starts.
Criterion criterion9()
{
    constexpr double adjoint_tol = 1e-6;
    constexpr double gradient_tol = 1e-4;
    constexpr double simplex_tol = 1e-9;
    constexpr double lambda4_tol = 1e-12;
    constexpr double init_gap_tol = 1e-3;
    constexpr int adjoint_cases = 1000;
    constexpr int gradient_coords = 20;

    const ProblemId ids[] = {ProblemId::OC1, ProblemId::OC2, ProblemId::OC3, ProblemId::OC4, ProblemId::OC5};
    const Scenario scenario = stock();
    const ModelParams& params = scenario.params;

    // (a) adjoint_rhs vs -dH/dx by central differences, random points.
    double worst_a = 0.0;
    {
        std::mt19937_64 rng = testsupport::make_rng(2024);
        constexpr double delta = 1e-6;
        for (const ProblemId id : ids) {
            const ProblemSetup setup = problem_spec(id);
            for (int trial = 0; trial < adjoint_cases; ++trial) {
                StateFractions x = testsupport::random_simplex_point(rng);
                const AdjointVector lam = testsupport::random_adjoint(rng);
                const double u = vaccination_active(setup.variant) ? uniform01(rng) * params.u_max : 0.0;
                const double p = plasma_active(setup.variant) ? uniform01(rng) * params.p_max : 0.0;
                const AdjointDerivative got = adjoint_rhs(x, lam, u, p, setup.weights, params, setup.variant);

                double* const coords[4] = {&x.s, &x.e, &x.i, &x.r};
                const double values[4] = {got.lambda1, got.lambda2, got.lambda3, got.lambda4};
                for (int c = 0; c < 4; ++c) {
                    const double saved = *coords[c];
                    *coords[c] = saved + delta;
                    const double up = hamiltonian(x, lam, u, p, setup.weights, params, setup.variant);
                    *coords[c] = saved - delta;
                    const double down = hamiltonian(x, lam, u, p, setup.weights, params, setup.variant);
                    *coords[c] = saved;
                    const double reference = -(up - down) / (2.0 * delta);
                    worst_a = std::max(worst_a, testsupport::rel_err(values[c], reference));
                }
            }
        }
    }

    // (b) objective_gradient vs central differences at sampled coordinates.
    double worst_b = 0.0;
    {
        constexpr double delta = 1e-5;
        for (const ProblemId id : ids) {
            const ProblemSetup setup = problem_spec(id);
            const ControlSignal signal = make_initial_controls(scenario, setup.variant, InitStrategy::Random, 7);
            const GradientVector grad = objective_gradient(signal, scenario, id);
            const std::size_t n = static_cast<std::size_t>(scenario.grid.n_nodes());
            const std::size_t n_u = vaccination_active(setup.variant) ? n : 0;
            const std::size_t n_p = plasma_active(setup.variant) ? n : 0;
            std::mt19937_64 rng = testsupport::make_rng(static_cast<std::uint64_t>(id) + 99);
            for (int draw = 0; draw < gradient_coords; ++draw) {
                std::size_t c =
                    static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n_u + n_p));
                c = std::min(c, n_u + n_p - 1);
                ControlSignal probe = signal;
                std::vector<double>& channel = c < n_u ? probe.u_values : probe.p_values;
                const std::size_t k = c < n_u ? c : c - n_u;
                const double saved = channel[k];
                channel[k] = saved + delta;
                const double up =
                    evaluate_cost(setup.weights, integrate_forward(scenario.x0, params, probe), probe);
                channel[k] = saved - delta;
                const double down =
                    evaluate_cost(setup.weights, integrate_forward(scenario.x0, params, probe), probe);
                const double reference = (up - down) / (2.0 * delta);
                const double analytic = c < n_u ? grad.du[k] : grad.dp[k];
                worst_b = std::max(worst_b, testsupport::rel_err(analytic, reference));
            }
        }
    }

    // (c)-(f) on the solved stock problems.
    double worst_c = 0.0;
    bool terminal_zero = true;
    double worst_lambda4 = 0.0;
    {
        const Scenario long_run = horizon(100.0);
        const Trajectory uncontrolled = integrate_forward(
            long_run.x0, long_run.params, zero_controls(long_run.grid, ControlVariant::Uncontrolled));
        for (const StateFractions& x : uncontrolled.states) {
            worst_c = std::max(worst_c, std::abs(x.sum() - 1.0));
        }
    }
    for (const ProblemId id : ids) {
        const SolveReport report = solve_fbsm(scenario, id);
        for (const StateFractions& x : report.trajectory.states) {
            worst_c = std::max(worst_c, std::abs(x.sum() - 1.0));
        }
        const AdjointVector& terminal = report.adjoints->costates.back();
        terminal_zero = terminal_zero && terminal.lambda1 == 0.0 && terminal.lambda2 == 0.0 &&
                        terminal.lambda3 == 0.0 && terminal.lambda4 == 0.0;
        if (id == ProblemId::OC1) {
            for (const AdjointVector& lam : report.adjoints->costates) {
                worst_lambda4 = std::max(worst_lambda4, std::abs(lam.lambda4));
            }
        }
    }

    // (f) three initializations of OC1.
    double worst_f = 0.0;
    {
        FbsmConfig cfg;
        SolveReport runs[3];
        cfg.init = InitStrategy::Zero;
        runs[0] = solve_fbsm(scenario, ProblemId::OC1, cfg);
        cfg.init = InitStrategy::Max;
        runs[1] = solve_fbsm(scenario, ProblemId::OC1, cfg);
        cfg.init = InitStrategy::Random;
        runs[2] = solve_fbsm(scenario, ProblemId::OC1, cfg);
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                const std::vector<double>& ua = runs[a].controls.u_values;
                const std::vector<double>& ub = runs[b].controls.u_values;
                for (std::size_t k = 0; k < ua.size(); ++k) {
                    worst_f = std::max(worst_f, std::abs(ua[k] - ub[k]));
                }
            }
        }
    }

    Criterion c;
    c.pass = worst_a < adjoint_tol && worst_b < gradient_tol && worst_c < simplex_tol && terminal_zero &&
             worst_lambda4 <= lambda4_tol && worst_f <= init_gap_tol;
    c.detail = fmt("(a)%.1e (b)%.1e (c)%.1e (d)%s (e)%.1e (f)%.1e", worst_a, worst_b, worst_c,
                   terminal_zero ? "exact" : "NONZERO", worst_lambda4, worst_f);
    return c;
}

// 10. Degenerate bounds force both solvers onto the uncontrolled trajectory,
//     bit for bit.
Criterion criterion10()
{
    Scenario scenario = stock();
    scenario.params.u_max = 0.0;
    scenario.params.p_max = 0.0;

    const Trajectory uncontrolled = integrate_forward(
        scenario.x0, scenario.params, zero_controls(scenario.grid, ControlVariant::Uncontrolled));

    int exact_runs = 0;
    int total_runs = 0;
    for (const ProblemId id :
         {ProblemId::OC1, ProblemId::OC2, ProblemId::OC3, ProblemId::OC4, ProblemId::OC5}) {
        const ProblemSetup setup = problem_spec(id);
        const double expected_cost =
            evaluate_cost(setup.weights, uncontrolled, zero_controls(scenario.grid, setup.variant));
        for (int method = 0; method < 2; ++method) {
            const SolveReport report =
                method == 0 ? solve_fbsm(scenario, id) : solve_projected_gradient(scenario, id);
            ++total_runs;
            bool same = report.converged && report.objective.has_value() &&
                        *report.objective == expected_cost;
            for (std::size_t k = 0; same && k < report.trajectory.states.size(); ++k) {
                const StateFractions& a = report.trajectory.states[k];
                const StateFractions& b = uncontrolled.states[k];
                same = a.s == b.s && a.e == b.e && a.i == b.i && a.r == b.r;
            }
            for (const double u : report.controls.u_values) {
                same = same && u == 0.0;
            }
            for (const double p : report.controls.p_values) {
                same = same && p == 0.0;
            }
            exact_runs += same ? 1 : 0;
        }
    }

    Criterion c;
    c.pass = exact_runs == total_runs;
    c.detail = fmt("%d/%d solver runs reproduce the uncontrolled trajectory and cost exactly", exact_runs,
                   total_runs);
    return c;
}

} // namespace

int main(int argc, char** argv)
{
    const std::function<Criterion()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9, criterion10};
    constexpr int n_criteria = 10;

    std::string which = "all";
    if (argc > 1) {
        which = argv[1];
    }
    if (argc > 2 || (which != "all" && (which.size() > 2 || which.empty() ||
                                        which.find_first_not_of("0123456789") != std::string::npos))) {
        std::fprintf(stderr, "usage: %s [1..%d|all]\n", argv[0], n_criteria);
        return 64;
    }

    int first = 1;
    int last = n_criteria;
    if (which != "all") {
        const int n = std::atoi(which.c_str());
        if (n < 1 || n > n_criteria) {
            std::fprintf(stderr, "usage: %s [1..%d|all]\n", argv[0], n_criteria);
            return 64;
        }
        first = last = n;
    }

    int failures = 0;
    for (int n = first; n <= last; ++n) {
        const Criterion result = criteria[n - 1]();
        std::printf("criterion %d: %s (%s)\n", n, result.pass ? "PASS" : "FAIL", result.detail.c_str());
        std::fflush(stdout);
        failures += result.pass ? 0 : 1;
    }
    return failures;
}
