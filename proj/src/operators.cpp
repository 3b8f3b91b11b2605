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

#include "mperc/operators.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mperc/shadow.hpp"

namespace mperc
{
void for_each_covering(Params const& params, Chart const& chart, Vec const& z,
                       int r,
                       std::function<void(Vec const&, double)> const& visit,
                       std::uint64_t budget)
{
    if (r < 0)
        throw std::invalid_argument("for_each_covering: r must be >= 0");
    double const log_cells = r * params.dim() * std::log2(params.base());
    if (log_cells > std::log2(static_cast<double>(budget)))
        throw BudgetExceeded("for_each_covering: M^(d r) exceeds the budget");

    auto const& delta = chart.delta();
    double const M = params.base();
    // Pi of every first-level digit vector
    std::vector<Vec> offsets;
    for (std::size_t c = 0; c < params.num_children(); ++c)
    {
        auto const digits = params.digits_of(c);
        Vec x(params.dim());
        for (int i = 0; i < params.dim(); ++i)
            x[i] = digits[i];
        offsets.push_back(chart.project(x));
    }
    auto const probs = params.probabilities();

    std::vector<Vec> stack(r + 1);
    stack[0] = z;
    auto descend = [&](auto&& self, int depth, double weight) -> void {
        Vec const& here = stack[depth];
        if (depth == r)
        {
            visit(here, weight);
            return;
        }
        for (std::size_t c = 0; c < offsets.size(); ++c)
        {
            if (probs[c] == 0)
                continue;
            Vec& next = stack[depth + 1];
            next = M * here - offsets[c];
            if (delta.min_slack(next) < -shadow_tol)
                continue;
            self(self, depth + 1, weight * probs[c]);
        }
    };
    if (delta.min_slack(z) >= -shadow_tol)
        descend(descend, 0, 1.0);
}

double apply_F(Params const& params, Chart const& chart, Field const& f,
               Vec const& z, int r, std::uint64_t budget)
{
    double sum = 0;
    for_each_covering(params, chart, z, r,
                      [&](Vec const& p, double w) { sum += w * f(p); }, budget);
    return sum;
}

double apply_G(Realization const& real, Chart const& chart, Field const& f,
               Vec const& z, int n)
{
    if (n < 0 || n > real.n_max())
        throw std::out_of_range("apply_G: level beyond n_max");
    auto const& delta = chart.delta();
    double const scale = std::pow(static_cast<double>(real.params().base()), n);
    double sum = 0;
    Vec psi_z(chart.dim());
    for (std::size_t i = 0; i < real.count(n); ++i)
    {
        Vec const offset = shadow_offset(chart, real.params().base(), n,
                                         real.cube(n, i));
        psi_z = scale * (z - offset);
        if (delta.min_slack(psi_z) >= -shadow_tol)
            sum += f(psi_z);
    }
    return sum;
}

}  // namespace mperc
