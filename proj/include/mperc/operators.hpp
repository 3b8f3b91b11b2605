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
#include <functional>
#include <stdexcept>

#include "chart.hpp"
#include "grid_function.hpp"
#include "params.hpp"
#include "realization.hpp"

namespace mperc
{
class BudgetExceeded : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Upper bound on M^{d r} for exhaustive level-r enumeration
inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 40;

//! Closed-containment tolerance used by the operators
inline constexpr double shadow_tol = 1e-9;

/*!
 * Visit every A in A_r whose shadow contains z, with psi_A(z) and the
 * product weight p_A, in a fixed depth-first digit order.
 *
 * Uses psi_{A|c}(z) = M psi_A(z) - Pi(c) and prunes any prefix whose
 * psi leaves Delta, since shadows of descendants nest in the parent's.
 */
void for_each_covering(Params const& params, Chart const& chart, Vec const& z,
                       int r,
                       std::function<void(Vec const& psi, double weight)> const& visit,
                       std::uint64_t budget = default_enumeration_budget);

//! F^r f(z) = sum over A in A_r with z in Pi(K_A) of p_A f(psi_A(z))
double apply_F(Params const& params, Chart const& chart, Field const& f,
               Vec const& z, int r,
               std::uint64_t budget = default_enumeration_budget);

//! G_n f(z) = sum over retained level-n A with z in Pi(K_A) of f(psi_A(z))
double apply_G(Realization const& real, Chart const& chart, Field const& f,
               Vec const& z, int n);

}  // namespace mperc
