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
#include "seiropt/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace seiropt {

namespace {

std::string format_value(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

void StateFractions::validate(double tol) const
{
    const struct {
        const char* name;
        double value;
    } components[] = {{"s", s}, {"e", e}, {"i", i}, {"r", r}};

    for (const auto& c : components) {
        if (!std::isfinite(c.value) || c.value < -tol || c.value > 1.0 + tol) {
            throw std::invalid_argument(std::string("state fraction ") + c.name + " = " + format_value(c.value) +
                                        " lies outside [0, 1]");
        }
    }
    if (std::abs(sum() - 1.0) > tol) {
        throw std::invalid_argument("state fractions sum to " + format_value(sum()) + ", expected 1");
    }
}

void ModelParams::validate() const
{
    const struct {
        const char* name;
        double value;
    } rates[] = {{"beta", beta}, {"gamma", gamma}, {"mu", mu}};

    for (const auto& p : rates) {
        if (!std::isfinite(p.value) || p.value <= 0.0) {
            throw std::invalid_argument(std::string("parameter ") + p.name + " = " + format_value(p.value) +
                                        " must be positive");
        }
    }
    if (!std::isfinite(u_max) || u_max < 0.0 || u_max > 1.0) {
        throw std::invalid_argument("u_max = " + format_value(u_max) + " must lie in [0, 1]");
    }
    if (!std::isfinite(p_max) || p_max < 0.0 || p_max > 1.0) {
        throw std::invalid_argument("p_max = " + format_value(p_max) + " must lie in [0, 1]");
    }
}

const char* to_string(ControlVariant v)
{
    switch (v) {
    case ControlVariant::Uncontrolled:
        return "uncontrolled";
    case ControlVariant::VaccinationOnly:
        return "vaccination";
    case ControlVariant::PlasmaOnly:
        return "plasma";
    case ControlVariant::Both:
        return "both";
    }
    return "unknown";
}

void TimeGrid::validate() const
{
    if (!std::isfinite(t0) || !std::isfinite(T) || !(T > t0)) {
        throw std::invalid_argument("time grid requires T > t0, got t0 = " + format_value(t0) +
                                    ", T = " + format_value(T));
    }
    if (n_steps < 2) {
        throw std::invalid_argument("n_steps = " + std::to_string(n_steps) + " must be at least 2");
    }
}

bool grids_equal(const TimeGrid& a, const TimeGrid& b)
{
    return a.t0 == b.t0 && a.T == b.T && a.n_steps == b.n_steps;
}

void ControlSignal::validate(const ModelParams& params, double bound_slack) const
{
    grid.validate();
    const std::size_t n_nodes = static_cast<std::size_t>(grid.n_nodes());
    if (u_values.size() != n_nodes || p_values.size() != n_nodes) {
        throw std::invalid_argument("control signal holds " + std::to_string(u_values.size()) + " u-values and " +
                                    std::to_string(p_values.size()) + " p-values, expected " +
                                    std::to_string(n_nodes));
    }
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const double u = u_values[k];
        const double p = p_values[k];
        if (!vaccination_active(variant) && u != 0.0) {
            throw std::invalid_argument("u_values must be identically zero for variant '" +
                                        std::string(to_string(variant)) + "'");
        }
        if (!plasma_active(variant) && p != 0.0) {
            throw std::invalid_argument("p_values must be identically zero for variant '" +
                                        std::string(to_string(variant)) + "'");
        }
        if (!(u >= -bound_slack && u <= params.u_max + bound_slack)) {
            throw std::invalid_argument("u_values[" + std::to_string(k) + "] = " + format_value(u) +
                                        " lies outside [0, u_max]");
        }
        if (!(p >= -bound_slack && p <= params.p_max + bound_slack)) {
            throw std::invalid_argument("p_values[" + std::to_string(k) + "] = " + format_value(p) +
                                        " lies outside [0, p_max]");
        }
    }
}

ControlSignal zero_controls(const TimeGrid& grid, ControlVariant variant)
{
    ControlSignal signal;
    signal.grid = grid;
    signal.variant = variant;
    signal.u_values.assign(static_cast<std::size_t>(grid.n_nodes()), 0.0);
    signal.p_values.assign(static_cast<std::size_t>(grid.n_nodes()), 0.0);
    return signal;
}

double AdjointVector::sup_norm() const
{
    return std::max(std::max(std::abs(lambda1), std::abs(lambda2)), std::max(std::abs(lambda3), std::abs(lambda4)));
}

void Scenario::validate() const
{
    params.validate();
    x0.validate();
    grid.validate();
}

} // namespace seiropt
