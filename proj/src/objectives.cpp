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
#include "seiropt/objectives.hpp"

#include "seiropt/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace seiropt {

void CostWeights::validate() const
{
    const struct {
        const char* name;
        double value;
    } weights[] = {{"eta1", eta1}, {"eta2", eta2}, {"eta3", eta3}, {"eta4", eta4}};

    for (const auto& w : weights) {
        if (!std::isfinite(w.value) || w.value < 0.0) {
            throw std::invalid_argument(std::string("cost weight ") + w.name + " must be nonnegative");
        }
    }
}

const char* to_string(ProblemId id)
{
    switch (id) {
    case ProblemId::OC1:
        return "oc1";
    case ProblemId::OC2:
        return "oc2";
    case ProblemId::OC3:
        return "oc3";
    case ProblemId::OC4:
        return "oc4";
    case ProblemId::OC5:
        return "oc5";
    }
    return "unknown";
}

std::optional<ProblemId> problem_from_string(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "oc1")
        return ProblemId::OC1;
    if (lower == "oc2")
        return ProblemId::OC2;
    if (lower == "oc3")
        return ProblemId::OC3;
    if (lower == "oc4")
        return ProblemId::OC4;
    if (lower == "oc5")
        return ProblemId::OC5;
    return std::nullopt;
}

ProblemSetup problem_spec(ProblemId id)
{
    switch (id) {
    case ProblemId::OC1:
        return {{0.0, 1.0, 1.0, 0.0}, ControlVariant::VaccinationOnly};
    case ProblemId::OC2:
        return {{1.0, 1.0, 1.0, 0.0}, ControlVariant::VaccinationOnly};
    case ProblemId::OC3:
        return {{0.0, 1.0, 0.0, 1.0}, ControlVariant::PlasmaOnly};
    case ProblemId::OC4:
        return {{1.0, 1.0, 0.0, 1.0}, ControlVariant::PlasmaOnly};
    case ProblemId::OC5:
        return {{0.0, 1.0, 1.0, 1.0}, ControlVariant::Both};
    }
    throw std::invalid_argument("unknown problem id");
}

double integrand(const CostWeights& w, const StateFractions& x, double u, double p)
{
    return w.eta1 * x.r - w.eta2 * x.i - w.eta3 * u * u - w.eta4 * p * p;
}

std::vector<double> trapezoid_weights(const TimeGrid& grid)
{
    const double h = grid.step();
    std::vector<double> weights(static_cast<std::size_t>(grid.n_nodes()), h);
    weights.front() = 0.5 * h;
    weights.back() = 0.5 * h;
    return weights;
}

double evaluate_cost(const CostWeights& w, const Trajectory& traj, const ControlSignal& signal)
{
    w.validate();
    if (!grids_equal(traj.grid, signal.grid)) {
        throw std::invalid_argument("trajectory and control signal use different time grids");
    }
    const std::size_t n_nodes = static_cast<std::size_t>(traj.grid.n_nodes());
    if (traj.states.size() != n_nodes || signal.u_values.size() != n_nodes) {
        throw std::invalid_argument("trajectory or control signal does not match its grid");
    }

    std::vector<double> values(n_nodes);
    kernels::cost_integrand_grid(traj, signal, w, values);
    return kernels::weighted_sum(trapezoid_weights(traj.grid), values);
}

} // namespace seiropt
