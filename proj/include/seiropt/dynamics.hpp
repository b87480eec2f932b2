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

namespace seiropt {

// Uncontrolled SEIR vector field on population fractions:
//   ds/dt = -beta*s*i
//   de/dt =  beta*s*i - gamma*e
//   di/dt =  gamma*e  - mu*i
//   dr/dt =  mu*i
// The components cancel, so every trajectory conserves s+e+i+r.
StateDerivative seir_rhs(const StateFractions& x, const ModelParams& params);

// SEIR vector field with the control terms selected by `variant`:
// vaccination moves u*s from s to r, plasma transfusion moves p*r*i from i
// to r. Control samples are checked against the box bounds (with the
// documented finite-difference slack); Uncontrolled ignores u and p in the
// dynamics but still rejects out-of-range samples.
StateDerivative controlled_rhs(const StateFractions& x, const ModelParams& params, double u, double p,
                               ControlVariant variant);

// Classical RK4 on the signal's uniform grid. Control values at the RK
// half-steps are interpolated linearly between adjacent nodes. Throws
// NumericError if the computed state leaves the simplex by more than 1e-6,
// which indicates a too-coarse grid.
Trajectory integrate_forward(const StateFractions& x0, const ModelParams& params, const ControlSignal& signal);

} // namespace seiropt
