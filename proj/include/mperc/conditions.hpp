// Copyright 2026 mperc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chart.hpp"
#include "grid_function.hpp"
#include "operators.hpp"
#include "params.hpp"

namespace mperc
{
enum class Verdict
{
    pass,
    fail,
    inconclusive
};

char const* to_string(Verdict v);

//! One Falconer-Grimmett constraint: axes j_1..j_k fixed to given digits
struct FgConstraint
{
    std::vector<int> axes;
    std::vector<int> digits;
    double sum = 0;
};

struct FgWitness
{
    std::vector<FgConstraint> constraints;
    double min_sum = 0;
};

struct BWitness
{
    double eps_hat = 0;
    Vec argmin;
    double floor = 0;
    double margin = 0;
    std::size_t points = 0;
};

struct AWitness
{
    double lambda1 = 0;
    double lambda2 = 0;
    int r = 0;
    //! min over lattice points of I2 of F^r 1_{I1} minus 2
    double margin = 0;
    std::size_t points = 0;
    //! deepest r examined
    int r_searched = 0;
    bool budget_exhausted = false;
};

struct ConditionReport
{
    std::string kind;  // "FG", "B" or "A"
    Verdict verdict = Verdict::inconclusive;
    double resolution = 0;
    std::string note;
    std::optional<FgWitness> fg;
    std::optional<BWitness> b;
    std::optional<AWitness> a;
};

//! Sums equal to 1 within this tolerance count as equality
inline constexpr double fg_equality_tol = 1e-12;

/*!
 * Falconer-Grimmett criterion on the first-level table: for every k-set of
 * axes and every digit assignment on them, sum p_A over matching cells.
 * Pass iff every sum > 1; fail iff some sum < 1; inconclusive otherwise.
 */
ConditionReport check_FG(Params const& params);

struct ConditionBOptions
{
    double h = 0.02;
    //! pass iff eps_hat > margin_factor * h
    double margin_factor = 2;
    //! interior points need f(z) > floor_factor * h * max f
    double floor_factor = 1;
};

/*!
 * eps_hat = min over interior lattice points of F f(z) / f(z) - 1.
 * Throws std::domain_error when no lattice point clears the floor.
 */
ConditionReport check_condition_B(Params const& params, Chart const& chart,
                                  Field const& f, ConditionBOptions const& opts = {});
ConditionReport check_condition_B(Params const& params, Chart const& chart,
                                  ConditionBOptions const& opts = {});

struct ConditionAOptions
{
    std::vector<double> lambda_grid = {0.5, 0.55, 0.6, 0.65, 0.7,
                                       0.75, 0.8, 0.85, 0.9, 0.95};
    int r_max = 6;
    double h = 0.02;
    //! certificate needs min F^r 1_{I1} - 2 > margin_tol
    double margin_tol = 1e-9;
    std::uint64_t budget = std::uint64_t{1} << 36;
};

/*!
 * Search concentric homothets I1 = lambda1 Delta, I2 = lambda2 Delta
 * (lambda1 < lambda2 < 1 from the grid) and r = 1..r_max for
 * F^r 1_{I1} >= 2 on every lattice point strictly inside I2. Returns the
 * pair with the largest margin at the smallest successful r; inconclusive
 * when nothing is found (a grid search cannot disprove the condition).
 */
ConditionReport find_condition_A(Params const& params, Chart const& chart,
                                 ConditionAOptions const& opts = {});

}  // namespace mperc
