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

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace seiropt;

TEST_CASE("uncontrolled vector field matches hand-computed values at the default start")
{
    const ModelParams params;
    const StateFractions x{0.88, 0.07, 0.05, 0.0};
    const StateDerivative d = seir_rhs(x, params);
    CHECK(d.s == doctest::Approx(-0.0132).epsilon(1e-13));
    CHECK(d.e == doctest::Approx(-9.0e-06).epsilon(1e-9));
    CHECK(d.i == doctest::Approx(0.008209).epsilon(1e-13));
    CHECK(d.r == doctest::Approx(0.005).epsilon(1e-13));
}

TEST_CASE("controlled vector field moves mass between the right compartments")
{
    const ModelParams params;
    const StateFractions x{0.5, 0.2, 0.2, 0.1};
    const StateDerivative d = controlled_rhs(x, params, 0.2, 0.1, ControlVariant::Both);
    CHECK(d.s == doctest::Approx(-0.13).epsilon(1e-13));
    CHECK(d.e == doctest::Approx(-0.00774).epsilon(1e-13));
    CHECK(d.i == doctest::Approx(0.01574).epsilon(1e-13));
    CHECK(d.r == doctest::Approx(0.122).epsilon(1e-13));
}

TEST_CASE("masked-control variants reduce bitwise to the uncontrolled field")
{
    const ModelParams params;
    auto rng = testsupport::make_rng(7);
    for (int k = 0; k < 1000; ++k) {
        const StateFractions x = testsupport::random_simplex_point(rng);
        const StateDerivative base = seir_rhs(x, params);
        const StateDerivative unc = controlled_rhs(x, params, 0.0, 0.0, ControlVariant::Uncontrolled);
        CHECK(unc.s == base.s);
        CHECK(unc.e == base.e);
        CHECK(unc.i == base.i);
        CHECK(unc.r == base.r);

        // With both controls at zero the active branches must also collapse
        // to the same values.
        const StateDerivative both = controlled_rhs(x, params, 0.0, 0.0, ControlVariant::Both);
        CHECK(both.s == base.s);
        CHECK(both.e == base.e);
        CHECK(both.i == base.i);
        CHECK(both.r == base.r);
    }
}

TEST_CASE("vector field components cancel so the simplex is invariant")
{
    const ModelParams params;
    auto rng = testsupport::make_rng(11);
    for (int k = 0; k < 1000; ++k) {
        const StateFractions x = testsupport::random_simplex_point(rng);
        const double u = 0.5 * uniform01(rng);
        const double p = 0.3 * uniform01(rng);
        const StateDerivative d = controlled_rhs(x, params, u, p, ControlVariant::Both);
        CHECK(std::abs(d.s + d.e + d.i + d.r) < 1e-15);
    }
}

TEST_CASE("disease-free point with no susceptibles is a fixed point")
{
    const ModelParams params;
    const StateFractions x{0.0, 0.0, 0.0, 1.0};
    const StateDerivative d = seir_rhs(x, params);
    CHECK(d.s == 0.0);
    CHECK(d.e == 0.0);
    CHECK(d.i == 0.0);
    CHECK(d.r == 0.0);
}

TEST_CASE("forward integration conserves total population along the whole path")
{
    const Scenario scenario = testsupport::small_scenario(20.0, 400);
    auto rng = testsupport::make_rng(3);
    const ControlSignal signal =
        testsupport::random_signal(scenario.grid, ControlVariant::Both, scenario.params, rng);

    const Trajectory traj = integrate_forward(scenario.x0, scenario.params, signal);
    REQUIRE(traj.states.size() == 401);
    for (const StateFractions& x : traj.states) {
        CHECK(std::abs(x.sum() - 1.0) < 1e-12);
        CHECK(x.s >= -1e-12);
        CHECK(x.e >= -1e-12);
        CHECK(x.i >= -1e-12);
        CHECK(x.r >= -1e-12);
    }
}

TEST_CASE("grid refinement shows at least fourth-order convergence of the endpoint")
{
    const ModelParams params;
    const StateFractions x0{0.88, 0.07, 0.05, 0.0};

    auto endpoint = [&](int n) {
        TimeGrid grid;
        grid.T = 20.0;
        grid.n_steps = n;
        const Trajectory traj = integrate_forward(x0, params, zero_controls(grid, ControlVariant::Uncontrolled));
        return traj.states.back();
    };

    // Use the finest grid as the reference solution.
    const StateFractions ref = endpoint(1600);
    const StateFractions coarse = endpoint(100);
    const StateFractions fine = endpoint(200);
    const double err_coarse = std::abs(coarse.i - ref.i) + std::abs(coarse.s - ref.s);
    const double err_fine = std::abs(fine.i - ref.i) + std::abs(fine.s - ref.s);
    REQUIRE(err_fine > 0.0);
    CHECK(err_coarse / err_fine > 12.0);
}

TEST_CASE("control samples outside the box are rejected, slack is honored")
{
    const ModelParams params;
    const StateFractions x{0.5, 0.2, 0.2, 0.1};

    // Slightly out of bounds, inside the finite-difference slack: accepted.
    CHECK_NOTHROW(controlled_rhs(x, params, params.u_max + 5e-4, 0.0, ControlVariant::Both));
    CHECK_NOTHROW(controlled_rhs(x, params, -5e-4, 0.0, ControlVariant::Both));

    // Far out of bounds: rejected.
    CHECK_THROWS_AS(controlled_rhs(x, params, params.u_max + 0.01, 0.0, ControlVariant::Both),
                    std::invalid_argument);
    CHECK_THROWS_AS(controlled_rhs(x, params, 0.0, -0.01, ControlVariant::Both), std::invalid_argument);
    CHECK_THROWS_AS(controlled_rhs(x, params, 0.0, std::nan(""), ControlVariant::Both), std::invalid_argument);
}

TEST_CASE("integration on an absurdly coarse grid reports a numeric failure")
{
    Scenario scenario;
    scenario.grid.T = 100.0;
    scenario.grid.n_steps = 2;

    // Two 50-unit steps cannot keep the epidemic on the simplex.
    const ControlSignal signal = zero_controls(scenario.grid, ControlVariant::Uncontrolled);
    CHECK_THROWS_AS(integrate_forward(scenario.x0, scenario.params, signal), NumericError);
}

TEST_CASE("signal length must match its grid")
{
    const Scenario scenario = testsupport::small_scenario(20.0, 100);
    ControlSignal signal = zero_controls(scenario.grid, ControlVariant::VaccinationOnly);
    signal.u_values.pop_back();
    CHECK_THROWS_AS(integrate_forward(scenario.x0, scenario.params, signal), std::invalid_argument);
}
