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

#include "mperc/branching.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mperc
{
namespace
{
double generating_function(Params const& params, double s)
{
    double g = 1.0;
    for (double p : params.probabilities())
        g *= 1.0 - p + p * s;
    return g;
}
}  // namespace

double survival_probability(Params const& params)
{
    if (params.offspring_mean() <= 1.0)
        return 0.0;
    double q = 0.0;
    for (int iter = 0; iter < 10'000'000; ++iter)
    {
        double const next = generating_function(params, q);
        if (std::abs(next - q) < 1e-12)
        {
            q = next;
            break;
        }
        q = next;
    }
    return 1.0 - q;
}

double expected_dimension(Params const& params)
{
    double const mean = params.offspring_mean();
    if (mean <= 0.0)
        throw std::domain_error("expected_dimension: all probabilities are 0");
    return std::log(mean) / std::log(static_cast<double>(params.base()));
}

BranchingStats branching_stats(Params const& params)
{
    BranchingStats stats;
    stats.offspring_mean = params.offspring_mean();
    stats.survival = survival_probability(params);
    stats.expected_dimension = stats.offspring_mean > 0
                                   ? expected_dimension(params)
                                   : std::numeric_limits<double>::quiet_NaN();
    return stats;
}

BranchingStats branching_stats(Realization const& real)
{
    auto stats = branching_stats(real.params());
    for (int n = 0; n <= real.n_max(); ++n)
        stats.level_counts.push_back(real.count(n));
    return stats;
}

}  // namespace mperc
