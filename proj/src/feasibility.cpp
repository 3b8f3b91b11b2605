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

#include "mperc/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mperc/linalg.hpp"

namespace mperc
{
bool fourier_motzkin_feasible(std::vector<Inequality> system, int num_vars,
                              double tol)
{
    for (int var = num_vars - 1; var >= 0; --var)
    {
        std::vector<Inequality> pos;
        std::vector<Inequality> neg;
        std::vector<Inequality> next;
        for (auto& ineq : system)
        {
            double const a = ineq.coeffs[var];
            // rounding residue from earlier combinations counts as zero
            if (std::abs(a) <= 1e-13)
                next.push_back(std::move(ineq));
            else if (a > 0)
                pos.push_back(std::move(ineq));
            else if (a < 0)
                neg.push_back(std::move(ineq));
        }
        // Normalize so the eliminated coefficient is +1 / -1 and combine
        for (auto const& p : pos)
        {
            double const ap = p.coeffs[var];
            for (auto const& q : neg)
            {
                double const aq = -q.coeffs[var];
                Inequality combined{std::vector<double>(num_vars, 0.0),
                                    p.bound / ap + q.bound / aq};
                for (int j = 0; j < var; ++j)
                    combined.coeffs[j] = p.coeffs[j] / ap + q.coeffs[j] / aq;
                next.push_back(std::move(combined));
            }
        }
        for (auto& ineq : next)
            ineq.coeffs[var] = 0.0;
        system = std::move(next);
    }
    return std::all_of(system.begin(), system.end(),
                       [tol](Inequality const& ineq) { return ineq.bound >= -tol; });
}

std::vector<std::vector<double>> basic_solutions(
    std::vector<Inequality> const& system, int num_vars)
{
    std::vector<std::vector<double>> result;
    auto const subsets = combinations(static_cast<int>(system.size()), num_vars);
    for (auto const& rows : subsets)
    {
        Mat a(num_vars, num_vars);
        Vec b(num_vars);
        for (int i = 0; i < num_vars; ++i)
        {
            for (int j = 0; j < num_vars; ++j)
                a(i, j) = system[rows[i]].coeffs[j];
            b[i] = system[rows[i]].bound;
        }
        Eigen::FullPivLU<Mat> lu(a);
        if (lu.rank() < num_vars)
            continue;
        Vec u = lu.solve(b);
        result.emplace_back(u.data(), u.data() + num_vars);
    }
    return result;
}

double max_violation(std::vector<Inequality> const& system,
                     std::vector<double> const& u)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (auto const& ineq : system)
    {
        double lhs = 0;
        for (std::size_t j = 0; j < u.size(); ++j)
            lhs += ineq.coeffs[j] * u[j];
        worst = std::max(worst, lhs - ineq.bound);
    }
    return worst;
}

}  // namespace mperc
