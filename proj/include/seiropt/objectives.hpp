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

#include "seiropt/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace seiropt {

// Weights of the running reward
//   eta1*r - eta2*i - eta3*u^2 - eta4*p^2,
// which the solvers maximize over the horizon. The five stock problems use
// 0/1 weights; arbitrary nonnegative values are accepted.
struct CostWeights {
    double eta1 = 0.0; // reward on the recovered fraction
    double eta2 = 0.0; // penalty on the infected fraction
    double eta3 = 0.0; // quadratic cost of vaccination effort
    double eta4 = 0.0; // quadratic cost of plasma-transfusion effort

    void validate() const;
};

// The five stock optimal-control problems.
enum class ProblemId { OC1, OC2, OC3, OC4, OC5 };

const char* to_string(ProblemId id);
std::optional<ProblemId> problem_from_string(std::string_view name);

struct ProblemSetup {
    CostWeights weights;
    ControlVariant variant;
};

// Weights and control variant for each stock problem:
//   OC1 (0,1,1,0) vaccination      OC2 (1,1,1,0) vaccination
//   OC3 (0,1,0,1) plasma           OC4 (1,1,0,1) plasma
//   OC5 (0,1,1,1) both
ProblemSetup problem_spec(ProblemId id);

// Running reward at one point.
double integrand(const CostWeights& w, const StateFractions& x, double u, double p);

// Trapezoidal quadrature of the running reward over the shared grid.
// Throws std::invalid_argument if trajectory and signal grids differ.
double evaluate_cost(const CostWeights& w, const Trajectory& traj, const ControlSignal& signal);

// Trapezoidal node weights: h/2 at the endpoints, h inside.
std::vector<double> trapezoid_weights(const TimeGrid& grid);

} // namespace seiropt
