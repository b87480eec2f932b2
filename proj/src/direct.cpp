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
#include "seiropt/direct.hpp"

#include "seiropt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace seiropt {

namespace {

// Line-search steps below this are treated as stagnation.
constexpr double min_line_search_step = 1e-12;

void require_variant(const ControlSignal& signal, ControlVariant variant)
{
    if (signal.variant != variant) {
        throw std::invalid_argument(std::string("control signal variant '") + to_string(signal.variant) +
                                    "' does not match the problem variant '" + to_string(variant) + "'");
    }
}

double evaluate_signal(const ControlSignal& signal, const Scenario& scenario, const CostWeights& w)
{
    return evaluate_cost(w, integrate_forward(scenario.x0, scenario.params, signal), signal);
}

// Zero out gradient components that point outside the box at active bounds,
// and return the Euclidean norm of what remains.
double projected_gradient_norm(const ControlSignal& signal, const GradientVector& grad, const ModelParams& params,
                               GradientVector& projected)
{
    const std::size_t n = grad.du.size();
    projected.du.assign(n, 0.0);
    projected.dp.assign(n, 0.0);
    double sq = 0.0;
    if (vaccination_active(signal.variant)) {
        for (std::size_t k = 0; k < n; ++k) {
            double g = grad.du[k];
            if ((signal.u_values[k] >= params.u_max && g > 0.0) || (signal.u_values[k] <= 0.0 && g < 0.0)) {
                g = 0.0;
            }
            projected.du[k] = g;
            sq += g * g;
        }
    }
    if (plasma_active(signal.variant)) {
        for (std::size_t k = 0; k < n; ++k) {
            double g = grad.dp[k];
            if ((signal.p_values[k] >= params.p_max && g > 0.0) || (signal.p_values[k] <= 0.0 && g < 0.0)) {
                g = 0.0;
            }
            projected.dp[k] = g;
            sq += g * g;
        }
    }
    return std::sqrt(sq);
}

ControlSignal take_step(const ControlSignal& signal, const GradientVector& grad, double step,
                        const ModelParams& params)
{
    ControlSignal out = signal;
    if (vaccination_active(signal.variant)) {
        for (std::size_t k = 0; k < out.u_values.size(); ++k) {
            out.u_values[k] = std::clamp(out.u_values[k] + step * grad.du[k], 0.0, params.u_max);
        }
    }
    if (plasma_active(signal.variant)) {
        for (std::size_t k = 0; k < out.p_values.size(); ++k) {
            out.p_values[k] = std::clamp(out.p_values[k] + step * grad.dp[k], 0.0, params.p_max);
        }
    }
    return out;
}

} // namespace

void DirectConfig::validate() const
{
    if (!(initial_step > 0.0)) {
        throw std::invalid_argument("direct initial step must be positive");
    }
    if (!(shrink > 0.0 && shrink < 1.0)) {
        throw std::invalid_argument("direct shrink factor must lie in (0, 1)");
    }
    if (!(sufficient_increase > 0.0)) {
        throw std::invalid_argument("direct sufficient-increase constant must be positive");
    }
    if (!(grad_tol > 0.0)) {
        throw std::invalid_argument("direct gradient tolerance must be positive");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("direct max_iters must be at least 1");
    }
}

GradientVector objective_gradient(const ControlSignal& signal, const Scenario& scenario, ProblemId id)
{
    const ProblemSetup setup = problem_spec(id);
    require_variant(signal, setup.variant);
    return objective_gradient(signal, scenario, setup.weights, setup.variant);
}

GradientVector objective_gradient(const ControlSignal& signal, const Scenario& scenario, const CostWeights& w,
                                  ControlVariant variant)
{
    require_variant(signal, variant);
    scenario.validate();
    const Trajectory traj = integrate_forward(scenario.x0, scenario.params, signal);
    const AdjointTrajectory adj = integrate_adjoint_backward(traj, signal, w, scenario.params);

    GradientVector grad;
    grad.du.assign(signal.u_values.size(), 0.0);
    grad.dp.assign(signal.p_values.size(), 0.0);
    kernels::control_gradient_grid(traj, adj, signal, w, grad.du, grad.dp);
    return grad;
}

GradientVector finite_difference_gradient(const ControlSignal& signal, const Scenario& scenario, ProblemId id,
                                          double delta, Exec exec)
{
    const ProblemSetup setup = problem_spec(id);
    require_variant(signal, setup.variant);
    return finite_difference_gradient(signal, scenario, setup.weights, setup.variant, delta, exec);
}

GradientVector finite_difference_gradient(const ControlSignal& signal, const Scenario& scenario, const CostWeights& w,
                                          ControlVariant variant, double delta, Exec exec)
{
    require_variant(signal, variant);
    if (!(delta > 0.0)) {
        throw std::invalid_argument("finite-difference delta must be positive");
    }
    scenario.validate();

    const std::size_t n = signal.u_values.size();
    GradientVector grad;
    grad.du.assign(n, 0.0);
    grad.dp.assign(n, 0.0);

    const std::ptrdiff_t n_u = vaccination_active(variant) ? static_cast<std::ptrdiff_t>(n) : 0;
    const std::ptrdiff_t n_p = plasma_active(variant) ? static_cast<std::ptrdiff_t>(n) : 0;
    const std::ptrdiff_t coords = n_u + n_p;

    // Each coordinate perturbs one node value in a scratch copy and restores
    // it, so the loop iterations are independent.
    auto coordinate_derivative = [&](ControlSignal& probe, std::ptrdiff_t c) {
        std::vector<double>& channel = c < n_u ? probe.u_values : probe.p_values;
        const std::size_t k = static_cast<std::size_t>(c < n_u ? c : c - n_u);
        const double saved = channel[k];
        channel[k] = saved + delta;
        const double plus = evaluate_signal(probe, scenario, w);
        channel[k] = saved - delta;
        const double minus = evaluate_signal(probe, scenario, w);
        channel[k] = saved;
        const double derivative = (plus - minus) / (2.0 * delta);
        if (c < n_u) {
            grad.du[k] = derivative;
        }
        else {
            grad.dp[k] = derivative;
        }
    };

    if (exec == Exec::Parallel) {
        std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            ControlSignal probe = signal;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
            for (std::ptrdiff_t c = 0; c < coords; ++c) {
                try {
                    coordinate_derivative(probe, c);
                }
                catch (...) {
#ifdef _OPENMP
#pragma omp critical(seiropt_fd_failure)
#endif
                    {
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    else {
        ControlSignal probe = signal;
        for (std::ptrdiff_t c = 0; c < coords; ++c) {
            coordinate_derivative(probe, c);
        }
    }
    return grad;
}

ControlSignal project_box(const ControlSignal& signal, const ModelParams& params)
{
    ControlSignal out = signal;
    if (vaccination_active(out.variant)) {
        kernels::clamp_values(out.u_values, 0.0, params.u_max);
    }
    else {
        std::fill(out.u_values.begin(), out.u_values.end(), 0.0);
    }
    if (plasma_active(out.variant)) {
        kernels::clamp_values(out.p_values, 0.0, params.p_max);
    }
    else {
        std::fill(out.p_values.begin(), out.p_values.end(), 0.0);
    }
    return out;
}

SolveReport solve_projected_gradient(const Scenario& scenario, ProblemId id, const DirectConfig& cfg)
{
    scenario.validate();
    cfg.validate();
    const ProblemSetup setup = problem_spec(id);

    ControlSignal controls = project_box(make_initial_controls(scenario, setup.variant, cfg.init, cfg.seed),
                                         scenario.params);
    Trajectory traj = integrate_forward(scenario.x0, scenario.params, controls);
    double objective = evaluate_cost(setup.weights, traj, controls);
    std::vector<double> history{objective};

    GradientVector projected;
    bool tolerance_reached = false;
    int accepted = 0;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const GradientVector grad = objective_gradient(controls, scenario, setup.weights, setup.variant);
        const double grad_norm = projected_gradient_norm(controls, grad, scenario.params, projected);
        if (grad_norm < cfg.grad_tol) {
            tolerance_reached = true;
            break;
        }

        double step = cfg.initial_step;
        bool accepted_step = false;
        ControlSignal candidate;
        Trajectory candidate_traj;
        double candidate_objective = 0.0;
        while (step >= min_line_search_step) {
            candidate = take_step(controls, grad, step, scenario.params);
            candidate_traj = integrate_forward(scenario.x0, scenario.params, candidate);
            candidate_objective = evaluate_cost(setup.weights, candidate_traj, candidate);
            if (candidate_objective >= objective + cfg.sufficient_increase * step * grad_norm * grad_norm) {
                accepted_step = true;
                break;
            }
            step *= cfg.shrink;
        }
        if (!accepted_step) {
            break; // line search stalled below the minimum step
        }

        controls = std::move(candidate);
        traj = std::move(candidate_traj);
        objective = candidate_objective;
        ++accepted;
        history.push_back(objective);
    }

    // Stationarity diagnostic at the final iterate, for cross-checking
    // against the indirect solver. Not part of the stopping test.
    const AdjointTrajectory adj = integrate_adjoint_backward(traj, controls, setup.weights, scenario.params);
    std::vector<double> char_u(controls.u_values.size());
    std::vector<double> char_p(controls.p_values.size());
    kernels::characterize_grid(traj, adj, scenario.params, setup.variant, char_u, char_p);
    const double residual = std::max(kernels::sup_abs_diff(controls.u_values, char_u),
                                     kernels::sup_abs_diff(controls.p_values, char_p));

    SolveReport report;
    report.problem = id;
    report.method = Method::Direct;
    report.scenario = scenario;
    report.trajectory = std::move(traj);
    report.controls = std::move(controls);
    report.adjoints = std::nullopt; // direct reports carry no costates
    report.objective = objective;
    report.sweeps_or_iters = accepted;
    report.converged = tolerance_reached;
    report.stationarity_residual = residual;
    report.objective_history = std::move(history);
    return report;
}

} // namespace seiropt
