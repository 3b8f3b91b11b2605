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

#include "mperc/shadow.hpp"

#include <cmath>

#include "mperc/hash.hpp"

namespace mperc
{
Polytope const& delta_region(Chart const& chart)
{
    return chart.delta();
}

Vec shadow_offset(Chart const& chart, int base, int level,
                  std::span<std::int64_t const> coords)
{
    int const d = chart.ambient();
    double const scale = std::pow(static_cast<double>(base), -level);
    Vec x(d);
    for (int r = 0; r < d; ++r)
        x[r] = static_cast<double>(coords[r]) * scale;
    return chart.project(x);
}

Polytope shadow_of_cube(Chart const& chart, CubeIndex const& cube)
{
    return chart.delta().affine(cube.scale(), chart.project(cube.corner()));
}

Vec psi(Chart const& chart, CubeIndex const& cube, Vec const& z)
{
    return (z - chart.project(cube.corner())) / cube.scale();
}

Polytope homothetic_region(Chart const& chart, double lambda)
{
    if (!(lambda > 0 && lambda <= 1))
        throw std::invalid_argument("homothetic_region: lambda must be in (0,1]");
    return chart.delta().scaled_about(chart.center(), lambda);
}

std::vector<Inequality> fiber_system(Chart const& chart, CubeIndex const& cube,
                                     Vec const& z)
{
    int const k = chart.dim();
    int const m = chart.fiber_dim();
    Vec const lo = cube.corner();
    double const side = cube.scale();
    auto const& plane = chart.plane();
    auto const& fiber = chart.fiber_axes();
    Mat const& N = chart.n();

    std::vector<Inequality> system;
    for (int j = 0; j < m; ++j)
    {
        std::vector<double> e(m, 0.0);
        e[j] = 1.0;
        system.push_back({e, lo[fiber[j]] + side});
        e[j] = -1.0;
        system.push_back({e, -lo[fiber[j]]});
    }
    for (int i = 0; i < k; ++i)
    {
        std::vector<double> row(m);
        for (int j = 0; j < m; ++j)
            row[j] = N(i, j);
        // lo1 <= z + N u <= lo1 + side
        system.push_back({row, lo[plane[i]] + side - z[i]});
        for (auto& a : row)
            a = -a;
        system.push_back({row, z[i] - lo[plane[i]]});
    }
    return system;
}

bool membership_oracle(Chart const& chart, CubeIndex const& cube, Vec const& z)
{
    return fourier_motzkin_feasible(fiber_system(chart, cube, z),
                                    chart.fiber_dim());
}

bool fiber_search(Chart const& chart, CubeIndex const& cube, Vec const& z,
                  int candidates, std::uint64_t seed)
{
    constexpr double tol = 1e-10;
    auto const system = fiber_system(chart, cube, z);
    int const m = chart.fiber_dim();
    int tried = 0;
    for (auto const& u : basic_solutions(system, m))
    {
        if (tried++ >= candidates)
            return false;
        if (max_violation(system, u) <= tol)
            return true;
    }
    Rng rng(seed);
    Vec const lo = cube.corner();
    double const side = cube.scale();
    std::vector<double> u(m);
    for (; tried < candidates; ++tried)
    {
        for (int j = 0; j < m; ++j)
            u[j] = lo[chart.fiber_axes()[j]] + side * rng.uniform();
        if (max_violation(system, u) <= tol)
            return true;
    }
    return false;
}

}  // namespace mperc
