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

#include "seiropt/objectives.hpp"
#include "seiropt/pmp.hpp"
#include "seiropt/types.hpp"

#include <cstddef>
#include <span>

// Grid-level kernels used by the solvers. The time-stepping loops are
// inherently sequential, but everything evaluated node-by-node across the
// grid is embarrassingly parallel and lives here. Each kernel has a plain
// serial reference implementation in kernels::serial and an OpenMP variant
// under kernels::. The solvers always call the OpenMP variants; the test
// suite checks them against the references, and the bench target compares
// their throughput.
//
// Determinism: the elementwise kernels write disjoint slots and are
// bit-identical to their references at any thread count. weighted_sum
// accumulates fixed-size chunks combined in index order, so its result does
// not depend on the thread count either (it may differ from the serial
// left-to-right sum in the last bits).

namespace seiropt::kernels {

// Below this many elements a parallel region costs more than it saves.
inline constexpr std::ptrdiff_t parallel_grain = 4096;
// Chunk length of the deterministic reduction.
inline constexpr std::ptrdiff_t sum_chunk = 2048;

namespace serial {

double weighted_sum(std::span<const double> weights, std::span<const double> values);

double sup_abs_diff(std::span<const double> a, std::span<const double> b);

void clamp_values(std::span<double> values, double lo, double hi);

// values = clamp(damping*targets + (1-damping)*values, lo, hi)
void damped_update(std::span<double> values, std::span<const double> targets, double damping, double lo, double hi);

void cost_integrand_grid(const Trajectory& traj, const ControlSignal& signal, const CostWeights& w,
                         std::span<double> out);

void characterize_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ModelParams& params,
                       ControlVariant variant, std::span<double> u_out, std::span<double> p_out);

// Objective gradient entries: trapezoidal node weight times dH/du (dH/dp).
void control_gradient_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ControlSignal& signal,
                           const CostWeights& w, std::span<double> du, std::span<double> dp);

} // namespace serial

double weighted_sum(std::span<const double> weights, std::span<const double> values);

double sup_abs_diff(std::span<const double> a, std::span<const double> b);

void clamp_values(std::span<double> values, double lo, double hi);

void damped_update(std::span<double> values, std::span<const double> targets, double damping, double lo, double hi);

void cost_integrand_grid(const Trajectory& traj, const ControlSignal& signal, const CostWeights& w,
                         std::span<double> out);

void characterize_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ModelParams& params,
                       ControlVariant variant, std::span<double> u_out, std::span<double> p_out);

void control_gradient_grid(const Trajectory& traj, const AdjointTrajectory& adj, const ControlSignal& signal,
                           const CostWeights& w, std::span<double> du, std::span<double> dp);

} // namespace seiropt::kernels
