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

#include "seiropt/dynamics.hpp"
#include "seiropt/objectives.hpp"
#include "seiropt/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace seiropt {

struct ControlValues {
    double u = 0.0;
    double p = 0.0;
};

enum class InitStrategy { Zero, Max, Random };

enum class Method { Simulate, Fbsm, Direct };

const char* to_string(Method m);

struct FbsmConfig {
    // Convex damping of the control update: new = damping*characterized +
    // (1-damping)*old. Full replacement (damping = 1) oscillates on these
    // problems; 0.5 converges in a few dozen sweeps.
    double damping = 0.5;
    // Sweep stopping test: sup-norm stationarity residual below tol. The
    // damped update moves controls by damping times the residual, so this
    // also bounds the per-sweep control change.
    double tol = 1e-4;
    int max_sweeps = 1000;
    InitStrategy init = InitStrategy::Zero;
    std::uint64_t seed = default_seed;

    void validate() const;
};

struct SolveReport {
    // Unset for plain simulations, which have no objective either.
    std::optional<ProblemId> problem;
    Method method = Method::Simulate;
    Scenario scenario;
    Trajectory trajectory;
    ControlSignal controls;
    // Only the indirect method reports costates.
    std::optional<AdjointTrajectory> adjoints;
    std::optional<double> objective;
    int sweeps_or_iters = 0;
    bool converged = false;
    // sup over grid nodes of |stored control - characterized control|.
    double stationarity_residual = 0.0;
    // Objective after every accepted step (direct method only), starting
    // with the initial guess.
    std::vector<double> objective_history;
};

// Running reward plus costate-weighted controlled dynamics.
double hamiltonian(const StateFractions& x, const AdjointVector& lam, double u, double p, const CostWeights& w,
                   const ModelParams& params, ControlVariant variant);

// lambda_dot = -dH/dx. Written out by hand for the general weight/variant
// combination; the test suite checks every term against central differences
// of the Hamiltonian.
AdjointDerivative adjoint_rhs(const StateFractions& x, const AdjointVector& lam, double u, double p,
                              const CostWeights& w, const ModelParams& params, ControlVariant variant);

// Pointwise maximizer of the Hamiltonian over the admissible box:
//   u* = clamp((lambda4 - lambda1)*s/2,   0, u_max)
//   p* = clamp((lambda4 - lambda3)*r*i/2, 0, p_max)
// Inactive channels return 0. The closed form assumes unit weight on the
// quadratic control costs, which holds for all five stock problems.
ControlValues characterize_controls(const StateFractions& x, const AdjointVector& lam, const ModelParams& params,
                                    ControlVariant variant);

// (dH/du, dH/dp) at the given point; zero for inactive channels.
ControlValues hamiltonian_control_gradient(const StateFractions& x, const AdjointVector& lam, double u, double p,
                                           const CostWeights& w, ControlVariant variant);

// RK4 backward in time from the transversality condition lambda(T) = 0.
// Forward states and controls at RK half-steps are interpolated linearly
// from the stored nodes. The terminal node is exactly zero. Throws
// NumericError if any costate magnitude exceeds 1e6.
AdjointTrajectory integrate_adjoint_backward(const Trajectory& traj, const ControlSignal& signal,
                                             const CostWeights& w, const ModelParams& params);

// Initial control guess for the iterative solvers; values are clamped to
// the admissible box and inactive channels are zero.
ControlSignal make_initial_controls(const Scenario& scenario, ControlVariant variant, InitStrategy init,
                                    std::uint64_t seed);

// Forward-backward sweep: iterate forward integration, backward adjoint
// integration, pointwise control characterization, and a damped control
// update until the stationarity residual drops below cfg.tol. Non-
// convergence is flagged in the report, not fatal.
SolveReport solve_fbsm(const Scenario& scenario, ProblemId id, const FbsmConfig& cfg = {});

} // namespace seiropt
