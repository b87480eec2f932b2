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
#include "seiropt/dynamics.hpp"

#include <cmath>
#include <cstdio>

namespace seiropt {

namespace {

void check_control_sample(double value, double bound, const char* name)
{
    // Negated comparison so NaN samples are rejected as well.
    if (!(value >= -control_bound_slack && value <= bound + control_bound_slack)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "control sample %s = %g lies outside [0, %g]", name, value, bound);
        throw std::invalid_argument(msg);
    }
}

void check_on_simplex(const StateFractions& x, double t)
{
    const double drift_tol = 1e-6;
    const bool in_box = x.s >= -drift_tol && x.s <= 1.0 + drift_tol && x.e >= -drift_tol && x.e <= 1.0 + drift_tol &&
                        x.i >= -drift_tol && x.i <= 1.0 + drift_tol && x.r >= -drift_tol && x.r <= 1.0 + drift_tol;
    if (!in_box || !std::isfinite(x.sum()) || std::abs(x.sum() - 1.0) > drift_tol) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "state left the simplex at t = %g (sum = %g); refine the time grid", t,
                      x.sum());
        throw NumericError(msg);
    }
}

} // namespace

StateDerivative seir_rhs(const StateFractions& x, const ModelParams& params)
{
    const double infection = params.beta * x.s * x.i;
    StateDerivative d;
    d.s = -infection;
    d.e = infection - params.gamma * x.e;
    d.i = params.gamma * x.e - params.mu * x.i;
    d.r = params.mu * x.i;
    return d;
}

StateDerivative controlled_rhs(const StateFractions& x, const ModelParams& params, double u, double p,
                               ControlVariant variant)
{
    check_control_sample(u, params.u_max, "u");
    check_control_sample(p, params.p_max, "p");

    // Delegating to seir_rhs keeps the Uncontrolled variant bit-identical to
    // the plain vector field.
    StateDerivative d = seir_rhs(x, params);
    if (vaccination_active(variant)) {
        const double vaccination = u * x.s;
        d.s -= vaccination;
        d.r += vaccination;
    }
    if (plasma_active(variant)) {
        const double transfusion = p * x.r * x.i;
        d.i -= transfusion;
        d.r += transfusion;
    }
    return d;
}

Trajectory integrate_forward(const StateFractions& x0, const ModelParams& params, const ControlSignal& signal)
{
    x0.validate();
    params.validate();
    signal.validate(params);

    const TimeGrid& grid = signal.grid;
    const double h = grid.step();

    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(static_cast<std::size_t>(grid.n_nodes()));
    traj.states.push_back(x0);

    StateFractions x = x0;
    for (int k = 0; k < grid.n_steps; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        const double u0 = signal.u_values[idx];
        const double u1 = signal.u_values[idx + 1];
        const double p0 = signal.p_values[idx];
        const double p1 = signal.p_values[idx + 1];
        const double um = 0.5 * (u0 + u1);
        const double pm = 0.5 * (p0 + p1);

        const StateDerivative k1 = controlled_rhs(x, params, u0, p0, signal.variant);
        const StateDerivative k2 = controlled_rhs(x + (0.5 * h) * k1, params, um, pm, signal.variant);
        const StateDerivative k3 = controlled_rhs(x + (0.5 * h) * k2, params, um, pm, signal.variant);
        const StateDerivative k4 = controlled_rhs(x + h * k3, params, u1, p1, signal.variant);

        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_on_simplex(x, grid.time_at(k + 1));
        traj.states.push_back(x);
    }
    return traj;
}

} // namespace seiropt
