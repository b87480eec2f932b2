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
#include "seiropt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace seiropt::kernels {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

void require_grid_arrays(const Trajectory& traj, const AdjointTrajectory& adj)
{
    require_same_size(traj.states.size(), adj.costates.size(), "characterize_grid");
}

} // namespace

namespace serial {

double weighted_sum(std::span<const double> weights, std::span<const double> values)
{
    require_same_size(weights.size(), values.size(), "weighted_sum");
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k] * values[k];
    }
    return acc;
}

double sup_abs_diff(std::span<const double> a, std::span<const double> b)
{
    require_same_size(a.size(), b.size(), "sup_abs_diff");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

void clamp_values(std::span<double> values, double lo, double hi)
{
    for (double& v : values) {
        v = std::clamp(v, lo, hi);
    }
}

void damped_update(std::span<double> values, std::span<const double> targets, double damping, double lo, double hi)
{
    require_same_size(values.size(), targets.size(), "damped_update");
    for (std::size_t k = 0; k < values.size(); ++k) {
        // The convex combination of two in-box values can stray by one ulp,
        // so clamp to keep bound feasibility exact.
        values[k] = std::clamp(damping * targets[k] + (1.0 - damping) * values[k], lo, hi);
    }
}

void cost_integrand_grid(const Trajectory& traj, const ControlSignal& signal, const CostWeights& w,
                         std::span<double> out)
{
    require_same_size(traj.states.size(), out.size(), "cost_integrand_grid");
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = integrand(w, traj.states[k], signal.u_values[k], signal.p_values[k]);
    }
}

void characterize_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ModelParams& params,
                       ControlVariant variant, std::span<double> u_out, std::span<double> p_out)
{
    require_grid_arrays(traj, adj);
    require_same_size(traj.states.size(), u_out.size(), "characterize_grid");
    require_same_size(traj.states.size(), p_out.size(), "characterize_grid");
    for (std::size_t k = 0; k < u_out.size(); ++k) {
        const ControlValues c = characterize_controls(traj.states[k], adj.costates[k], params, variant);
        u_out[k] = c.u;
        p_out[k] = c.p;
    }
}

void control_gradient_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ControlSignal& signal,
                           const CostWeights& w, std::span<double> du, std::span<double> dp)
{
    require_grid_arrays(traj, adj);
    require_same_size(traj.states.size(), du.size(), "control_gradient_grid");
    require_same_size(traj.states.size(), dp.size(), "control_gradient_grid");
    const double h = traj.grid.step();
    const std::size_t last = du.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const double node_weight = (k == 0 || k == last) ? 0.5 * h : h;
        const ControlValues g = hamiltonian_control_gradient(traj.states[k], adj.costates[k], signal.u_values[k],
                                                             signal.p_values[k], w, signal.variant);
        du[k] = node_weight * g.u;
        dp[k] = node_weight * g.p;
    }
}

} // namespace serial

double weighted_sum(std::span<const double> weights, std::span<const double> values)
{
    require_same_size(weights.size(), values.size(), "weighted_sum");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(weights.size());
    const std::ptrdiff_t chunks = (n + sum_chunk - 1) / sum_chunk;
    if (chunks <= 1) {
        return serial::weighted_sum(weights, values);
    }

    std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        const std::ptrdiff_t begin = c * sum_chunk;
        const std::ptrdiff_t end = std::min(begin + sum_chunk, n);
        double acc = 0.0;
        for (std::ptrdiff_t k = begin; k < end; ++k) {
            acc += weights[static_cast<std::size_t>(k)] * values[static_cast<std::size_t>(k)];
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }

    // Combining in index order keeps the result independent of the thread
    // count.
    double total = 0.0;
    for (double part : partial) {
        total += part;
    }
    return total;
}

double sup_abs_diff(std::span<const double> a, std::span<const double> b)
{
    require_same_size(a.size(), b.size(), "sup_abs_diff");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        worst = std::max(worst, std::abs(a[idx] - b[idx]));
    }
    return worst;
}

void clamp_values(std::span<double> values, double lo, double hi)
{
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        double& v = values[static_cast<std::size_t>(k)];
        v = std::clamp(v, lo, hi);
    }
}

void damped_update(std::span<double> values, std::span<const double> targets, double damping, double lo, double hi)
{
    require_same_size(values.size(), targets.size(), "damped_update");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        values[idx] = std::clamp(damping * targets[idx] + (1.0 - damping) * values[idx], lo, hi);
    }
}

void cost_integrand_grid(const Trajectory& traj, const ControlSignal& signal, const CostWeights& w,
                         std::span<double> out)
{
    require_same_size(traj.states.size(), out.size(), "cost_integrand_grid");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        out[idx] = integrand(w, traj.states[idx], signal.u_values[idx], signal.p_values[idx]);
    }
}

void characterize_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ModelParams& params,
                       ControlVariant variant, std::span<double> u_out, std::span<double> p_out)
{
    require_grid_arrays(traj, adj);
    require_same_size(traj.states.size(), u_out.size(), "characterize_grid");
    require_same_size(traj.states.size(), p_out.size(), "characterize_grid");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u_out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        const ControlValues c = characterize_controls(traj.states[idx], adj.costates[idx], params, variant);
        u_out[idx] = c.u;
        p_out[idx] = c.p;
    }
}

void control_gradient_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ControlSignal& signal,
                           const CostWeights& w, std::span<double> du, std::span<double> dp)
{
    require_grid_arrays(traj, adj);
    require_same_size(traj.states.size(), du.size(), "control_gradient_grid");
    require_same_size(traj.states.size(), dp.size(), "control_gradient_grid");
    const double h = traj.grid.step();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(du.size());
    const std::size_t last = du.size() - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        const double node_weight = (idx == 0 || idx == last) ? 0.5 * h : h;
        const ControlValues g = hamiltonian_control_gradient(traj.states[idx], adj.costates[idx],
                                                             signal.u_values[idx], signal.p_values[idx], w,
                                                             signal.variant);
        du[idx] = node_weight * g.u;
        dp[idx] = node_weight * g.p;
    }
}

} // namespace seiropt::kernels
