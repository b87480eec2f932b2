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

#include <random>
#include <vector>

namespace seiropt {

// One classical fourth-order Runge-Kutta step for dy/dt = f(t, y). Works for
// any state type with addition and scalar multiplication.
template <class State, class Rhs>
State rk4_step(Rhs&& f, double t, const State& y, double h)
{
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
    const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
    const State k4 = f(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State, class Rhs>
std::vector<State> rk4_integrate(Rhs&& f, const State& y0, const TimeGrid& grid)
{
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>(grid.n_nodes()));
    out.push_back(y0);
    const double h = grid.step();
    for (int k = 0; k < grid.n_steps; ++k) {
        out.push_back(rk4_step(f, grid.time_at(k), out.back(), h));
    }
    return out;
}

// Uniform draw in [0, 1) from the top 53 bits of the engine output. Avoids
// std::uniform_real_distribution, whose output is implementation-defined,
// so seeded runs reproduce across standard libraries.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace seiropt
