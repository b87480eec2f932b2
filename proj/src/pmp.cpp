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
#include "seiropt/pmp.hpp"

#include "seiropt/kernels.hpp"
#include "seiropt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace seiropt {

void FbsmConfig::validate() const
{
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw std::invalid_argument("fbsm damping must lie in (0, 1]");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("fbsm tolerance must be positive");
    }
    if (max_sweeps < 1) {
        throw std::invalid_argument("fbsm max_sweeps must be at least 1");
    }
}

const char* to_string(Method m)
{
    switch (m) {
    case Method::Simulate:
        return "simulate";
    case Method::Fbsm:
        return "fbsm";
    case Method::Direct:
        return "direct";
    }
    return "unknown";
}

namespace {

double dot(const AdjointVector& lam, const StateDerivative& d)
{
    return lam.lambda1 * d.s + lam.lambda2 * d.e + lam.lambda3 * d.i + lam.lambda4 * d.r;
}

} // namespace

double hamiltonian(const StateFractions& x, const AdjointVector& lam, double u, double p, const CostWeights& w,
                   const ModelParams& params, ControlVariant variant)
{
    return integrand(w, x, u, p) + dot(lam, controlled_rhs(x, params, u, p, variant));
}

AdjointDerivative adjoint_rhs(const StateFractions& x, const AdjointVector& lam, double u, double p,
                              const CostWeights& w, const ModelParams& params, ControlVariant variant)
{
    const double l1 = lam.lambda1;
    const double l2 = lam.lambda2;
    const double l3 = lam.lambda3;
    const double l4 = lam.lambda4;

    AdjointDerivative d;
    d.lambda1 = (l1 - l2) * params.beta * x.i;
    d.lambda2 = params.gamma * (l2 - l3);
    d.lambda3 = w.eta2 + (l1 - l2) * params.beta * x.s + (l3 - l4) * params.mu;
    d.lambda4 = -w.eta1;
    if (vaccination_active(variant)) {
        d.lambda1 += (l1 - l4) * u;
    }
    if (plasma_active(variant)) {
        d.lambda3 += (l3 - l4) * p * x.r;
        d.lambda4 += (l3 - l4) * p * x.i;
    }
    return d;
}

ControlValues characterize_controls(const StateFractions& x, const AdjointVector& lam, const ModelParams& params,
                                    ControlVariant variant)
{
    ControlValues c;
    if (vaccination_active(variant)) {
        c.u = std::clamp(0.5 * (lam.lambda4 - lam.lambda1) * x.s, 0.0, params.u_max);
    }
    if (plasma_active(variant)) {
        c.p = std::clamp(0.5 * (lam.lambda4 - lam.lambda3) * x.r * x.i, 0.0, params.p_max);
    }
    return c;
}

ControlValues hamiltonian_control_gradient(const StateFractions& x, const AdjointVector& lam, double u, double p,
                                           const CostWeights& w, ControlVariant variant)
{
    ControlValues g;
    if (vaccination_active(variant)) {
        g.u = -2.0 * w.eta3 * u + (lam.lambda4 - lam.lambda1) * x.s;
    }
    if (plasma_active(variant)) {
        g.p = -2.0 * w.eta4 * p + (lam.lambda4 - lam.lambda3) * x.r * x.i;
    }
    return g;
}

AdjointTrajectory integrate_adjoint_backward(const Trajectory& traj, const ControlSignal& signal,
                                             const CostWeights& w, const ModelParams& params)
{
    if (!grids_equal(traj.grid, signal.grid)) {
        throw std::invalid_argument("trajectory and control signal use different time grids");
    }
    const TimeGrid& grid = traj.grid;
    const std::size_t n_nodes = static_cast<std::size_t>(grid.n_nodes());
    if (traj.states.size() != n_nodes) {
        throw std::invalid_argument("trajectory does not match its grid");
    }

    AdjointTrajectory adj;
    adj.grid = grid;
    adj.costates.assign(n_nodes, AdjointVector{});

    const ControlVariant variant = signal.variant;
    const double hh = -grid.step(); // marching from T down to t0

    for (int k = grid.n_steps - 1; k >= 0; --k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        const StateFractions& x0 = traj.states[idx];
        const StateFractions& x1 = traj.states[idx + 1];
        const StateFractions xm = 0.5 * (x0 + x1);
        const double u0 = signal.u_values[idx];
        const double u1 = signal.u_values[idx + 1];
        const double p0 = signal.p_values[idx];
        const double p1 = signal.p_values[idx + 1];
        const double um = 0.5 * (u0 + u1);
        const double pm = 0.5 * (p0 + p1);

        const AdjointVector& lam = adj.costates[idx + 1];
        const AdjointDerivative k1 = adjoint_rhs(x1, lam, u1, p1, w, params, variant);
        const AdjointDerivative k2 = adjoint_rhs(xm, lam + (0.5 * hh) * k1, um, pm, w, params, variant);
        const AdjointDerivative k3 = adjoint_rhs(xm, lam + (0.5 * hh) * k2, um, pm, w, params, variant);
        const AdjointDerivative k4 = adjoint_rhs(x0, lam + hh * k3, u0, p0, w, params, variant);

        const AdjointVector next = lam + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!(next.sup_norm() <= 1e6)) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "adjoint integration diverged at t = %g (|lambda| = %g)", grid.time_at(k),
                          next.sup_norm());
            throw NumericError(msg);
        }
        adj.costates[idx] = next;
    }
    return adj;
}

ControlSignal make_initial_controls(const Scenario& scenario, ControlVariant variant, InitStrategy init,
                                    std::uint64_t seed)
{
    ControlSignal signal = zero_controls(scenario.grid, variant);
    switch (init) {
    case InitStrategy::Zero:
        break;
    case InitStrategy::Max:
        if (vaccination_active(variant)) {
            std::fill(signal.u_values.begin(), signal.u_values.end(), scenario.params.u_max);
        }
        if (plasma_active(variant)) {
            std::fill(signal.p_values.begin(), signal.p_values.end(), scenario.params.p_max);
        }
        break;
    case InitStrategy::Random: {
        // Both channels are drawn even when masked so the u-stream does not
        // depend on whether p is active; masked draws are discarded.
        std::mt19937_64 rng(seed);
        for (double& u : signal.u_values) {
            const double draw = scenario.params.u_max * uniform01(rng);
            u = vaccination_active(variant) ? draw : 0.0;
        }
        for (double& p : signal.p_values) {
            const double draw = scenario.params.p_max * uniform01(rng);
            p = plasma_active(variant) ? draw : 0.0;
        }
        break;
    }
    }
    return signal;
}

SolveReport solve_fbsm(const Scenario& scenario, ProblemId id, const FbsmConfig& cfg)
{
    scenario.validate();
    cfg.validate();
    const ProblemSetup setup = problem_spec(id);

    ControlSignal controls = make_initial_controls(scenario, setup.variant, cfg.init, cfg.seed);
    const std::size_t n_nodes = controls.u_values.size();
    std::vector<double> char_u(n_nodes);
    std::vector<double> char_p(n_nodes);

    Trajectory traj;
    AdjointTrajectory adj;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
    int sweep = 0;
    while (true) {
        ++sweep;
        traj = integrate_forward(scenario.x0, scenario.params, controls);
        adj = integrate_adjoint_backward(traj, controls, setup.weights, scenario.params);
        kernels::characterize_grid(traj, adj, scenario.params, setup.variant, char_u, char_p);
        residual = std::max(kernels::sup_abs_diff(controls.u_values, char_u),
                            kernels::sup_abs_diff(controls.p_values, char_p));
        if (residual < cfg.tol) {
            converged = true;
            break;
        }
        if (sweep >= cfg.max_sweeps) {
            break;
        }
        kernels::damped_update(controls.u_values, char_u, cfg.damping, 0.0, scenario.params.u_max);
        kernels::damped_update(controls.p_values, char_p, cfg.damping, 0.0, scenario.params.p_max);
    }

    SolveReport report;
    report.problem = id;
    report.method = Method::Fbsm;
    report.scenario = scenario;
    report.objective = evaluate_cost(setup.weights, traj, controls);
    report.trajectory = std::move(traj);
    report.controls = std::move(controls);
    report.adjoints = std::move(adj);
    report.sweeps_or_iters = sweep;
    report.converged = converged;
    report.stationarity_residual = residual;
    return report;
}

} // namespace seiropt
