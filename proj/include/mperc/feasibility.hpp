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

#include <vector>

namespace mperc
{
//! coeffs . u <= bound
struct Inequality
{
    std::vector<double> coeffs;
    double bound;
};

/*!
 * Decide whether a small system of linear inequalities has a solution by
 * Fourier-Motzkin elimination. Constraints with all coefficients zero
 * (after elimination) are infeasible iff bound < -tol.
 */
bool fourier_motzkin_feasible(std::vector<Inequality> system, int num_vars,
                              double tol = 1e-12);

/*!
 * Basic solutions of the system: every point where num_vars linearly
 * independent constraints are tight. A bounded nonempty system has at least
 * one feasible basic solution.
 */
std::vector<std::vector<double>> basic_solutions(
    std::vector<Inequality> const& system, int num_vars);

//! Largest violation max_i (coeffs_i . u - bound_i), <= 0 iff u is feasible
double max_violation(std::vector<Inequality> const& system,
                     std::vector<double> const& u);

}  // namespace mperc
