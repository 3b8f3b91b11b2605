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

#include <cstddef>
#include <vector>

#include "params.hpp"
#include "realization.hpp"

namespace mperc
{
struct BranchingStats
{
    double offspring_mean = 0;
    double survival = 0;
    //! log_M of the offspring mean; NaN when the mean is zero
    double expected_dimension = 0;
    std::vector<std::size_t> level_counts;
};

/*!
 * Probability that the retained tree never dies out.
 *
 * The cube count is a Galton-Watson process with offspring generating
 * function g(s) = prod_A (1 - p_A + p_A s). Returns 1 - q*, q* the least
 * fixed point of g in [0,1], found by iterating s <- g(s) from 0 until
 * successive iterates differ by less than 1e-12. Subcritical and critical
 * tables (mean <= 1) return 0 directly.
 */
double survival_probability(Params const& params);

//! log(sum p_A) / log M; throws std::domain_error when sum p_A = 0
double expected_dimension(Params const& params);

BranchingStats branching_stats(Params const& params);
BranchingStats branching_stats(Realization const& real);

}  // namespace mperc
