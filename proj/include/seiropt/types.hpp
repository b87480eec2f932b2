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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace seiropt {

inline constexpr std::uint64_t default_seed = 12345;

// Slack used when checking control samples against their box bounds.
// Finite-difference probing of the objective deliberately pushes node values
// a few 1e-5 past a bound, which must not be rejected; genuinely invalid
// samples are orders of magnitude further out.
inline constexpr double control_bound_slack = 1e-3;

// Thrown when an integration leaves its validity envelope (simplex drift,
// costate blow-up). Distinct from std::invalid_argument, which covers
// malformed inputs and configuration.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Exec { Serial, Parallel };

// Population fractions (s, e, i, r). All model code works in fractions, so
// valid states live on the probability simplex. The same struct doubles as
// the vector-space type for state derivatives, whose components are rates.
struct StateFractions {
    double s = 0.0;
    double e = 0.0;
    double i = 0.0;
    double r = 0.0;

    double sum() const
    {
        return s + e + i + r;
    }

    // Throws std::invalid_argument naming the offending component. `tol`
    // widens both the componentwise [0,1] box and the simplex sum check.
    void validate(double tol = 1e-9) const;
};

using StateDerivative = StateFractions;

inline StateFractions operator+(const StateFractions& a, const StateFractions& b)
{
    return {a.s + b.s, a.e + b.e, a.i + b.i, a.r + b.r};
}

inline StateFractions operator-(const StateFractions& a, const StateFractions& b)
{
    return {a.s - b.s, a.e - b.e, a.i - b.i, a.r - b.r};
}

inline StateFractions operator*(double c, const StateFractions& a)
{
    return {c * a.s, c * a.e, c * a.i, c * a.r};
}

struct ModelParams {
    double beta  = 0.3;    // transmission coefficient, 1/time
    double gamma = 0.1887; // infectious rate, 1/time
    double mu    = 0.1;    // recovery rate, 1/time
    double u_max = 0.5;    // vaccination-rate bound
    double p_max = 0.3;    // plasma-transfusion-rate bound

    void validate() const;
};

enum class ControlVariant { Uncontrolled, VaccinationOnly, PlasmaOnly, Both };

constexpr bool vaccination_active(ControlVariant v)
{
    return v == ControlVariant::VaccinationOnly || v == ControlVariant::Both;
}

constexpr bool plasma_active(ControlVariant v)
{
    return v == ControlVariant::PlasmaOnly || v == ControlVariant::Both;
}

const char* to_string(ControlVariant v);

struct TimeGrid {
    double t0  = 0.0;
    double T   = 20.0;
    int n_steps = 2000;

    double step() const
    {
        return (T - t0) / n_steps;
    }

    // Node times; the last node returns T itself so terminal-condition
    // handling and file output do not depend on rounding of t0 + k*h.
    double time_at(int k) const
    {
        return k == n_steps ? T : t0 + k * step();
    }

    int n_nodes() const
    {
        return n_steps + 1;
    }

    void validate() const;
};

bool grids_equal(const TimeGrid& a, const TimeGrid& b);

struct ControlSignal {
    TimeGrid grid;
    std::vector<double> u_values;
    std::vector<double> p_values;
    ControlVariant variant = ControlVariant::Uncontrolled;

    void validate(const ModelParams& params, double bound_slack = control_bound_slack) const;
};

// All-zero signal of the right shape for a variant.
ControlSignal zero_controls(const TimeGrid& grid, ControlVariant variant);

struct Trajectory {
    TimeGrid grid;
    std::vector<StateFractions> states;
};

// Costates paired with (s, e, i, r). Also used for costate derivatives.
struct AdjointVector {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;

    double sup_norm() const;
};

using AdjointDerivative = AdjointVector;

inline AdjointVector operator+(const AdjointVector& a, const AdjointVector& b)
{
    return {a.lambda1 + b.lambda1, a.lambda2 + b.lambda2, a.lambda3 + b.lambda3, a.lambda4 + b.lambda4};
}

inline AdjointVector operator*(double c, const AdjointVector& a)
{
    return {c * a.lambda1, c * a.lambda2, c * a.lambda3, c * a.lambda4};
}

struct AdjointTrajectory {
    TimeGrid grid;
    std::vector<AdjointVector> costates;
};

// A full problem instance. The defaults are the baseline scenario every
// command starts from; a config file or override only has to name the
// values it changes.
struct Scenario {
    ModelParams params{};
    StateFractions x0{0.88, 0.07, 0.05, 0.0};
    TimeGrid grid{};

    void validate() const;
};

} // namespace seiropt
