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

#include "seiropt/numerics.hpp"
#include "seiropt/types.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

namespace testsupport {

inline std::mt19937_64 make_rng(std::uint64_t seed)
{
    return std::mt19937_64(seed);
}

// Strictly positive fractions summing to 1, sampled via normalized
// exponentials so no corner of the simplex is favored.
inline seiropt::StateFractions random_simplex_point(std::mt19937_64& rng)
{
    double draws[4];
    double total = 0.0;
    for (double& d : draws) {
        d = -std::log(1.0 - seiropt::uniform01(rng));
        total += d;
    }
    seiropt::StateFractions x;
    x.s = draws[0] / total;
    x.e = draws[1] / total;
    x.i = draws[2] / total;
    x.r = 1.0 - x.s - x.e - x.i;
    return x;
}

inline seiropt::AdjointVector random_adjoint(std::mt19937_64& rng)
{
    seiropt::AdjointVector lam;
    lam.lambda1 = 4.0 * seiropt::uniform01(rng) - 2.0;
    lam.lambda2 = 4.0 * seiropt::uniform01(rng) - 2.0;
    lam.lambda3 = 4.0 * seiropt::uniform01(rng) - 2.0;
    lam.lambda4 = 4.0 * seiropt::uniform01(rng) - 2.0;
    return lam;
}

// Random feasible controls, strictly inside the box so finite-difference
// probes stay admissible.
inline seiropt::ControlSignal random_signal(const seiropt::TimeGrid& grid, seiropt::ControlVariant variant,
                                            const seiropt::ModelParams& params, std::mt19937_64& rng)
{
    seiropt::ControlSignal signal = seiropt::zero_controls(grid, variant);
    if (seiropt::vaccination_active(variant)) {
        for (double& u : signal.u_values) {
            u = (0.05 + 0.9 * seiropt::uniform01(rng)) * params.u_max;
        }
    }
    if (seiropt::plasma_active(variant)) {
        for (double& p : signal.p_values) {
            p = (0.05 + 0.9 * seiropt::uniform01(rng)) * params.p_max;
        }
    }
    return signal;
}

inline double rel_err(double value, double reference)
{
    return std::abs(value - reference) / (1.0 + std::abs(reference));
}

// Stock scenario on a smaller grid, for tests where the full 2000 steps
// would be wasted time.
inline seiropt::Scenario small_scenario(double T = 20.0, int n_steps = 200)
{
    seiropt::Scenario scenario;
    scenario.grid.T = T;
    scenario.grid.n_steps = n_steps;
    return scenario;
}

// Unique writable directory, removed when the object goes out of scope.
class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        char name[64];
        std::snprintf(name, sizeof name, "seiropt_test_%08x%08x", rd(), rd());
        path_ = std::filesystem::temp_directory_path() / name;
        std::filesystem::create_directories(path_);
    }

    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const
    {
        return path_;
    }

    std::filesystem::path file(const std::string& name) const
    {
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

} // namespace testsupport
