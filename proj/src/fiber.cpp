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

#include "mperc/fiber.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mperc/hash.hpp"

namespace mperc
{
namespace
{
using Point2 = std::array<double, 2>;

// Keep the part of `poly` with a . u <= b (Sutherland-Hodgman, one edge)
std::vector<Point2> clip(std::vector<Point2> const& poly, double a0, double a1,
                         double b)
{
    std::vector<Point2> out;
    auto const n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        Point2 const& p = poly[i];
        Point2 const& q = poly[(i + 1) % n];
        double const sp = a0 * p[0] + a1 * p[1] - b;
        double const sq = a0 * q[0] + a1 * q[1] - b;
        if (sp <= 0)
            out.push_back(p);
        if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0))
        {
            double const t = sp / (sp - sq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

double area(std::vector<Point2> const& poly)
{
    double a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        auto const& p = poly[i];
        auto const& q = poly[(i + 1) % poly.size()];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return 0.5 * std::abs(a);
}

double interval_volume(Chart const& chart, Vec const& z)
{
    Mat const& N = chart.n();
    double lo = 0;
    double hi = 1;
    for (int i = 0; i < chart.dim(); ++i)
    {
        // 0 <= z_i + N_i u <= 1
        double const a = N(i, 0);
        if (a == 0)
        {
            if (z[i] < 0 || z[i] > 1)
                return 0;
            continue;
        }
        double t0 = -z[i] / a;
        double t1 = (1 - z[i]) / a;
        if (t0 > t1)
            std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
    }
    return std::max(0.0, hi - lo);
}

double polygon_volume(Chart const& chart, Vec const& z)
{
    Mat const& N = chart.n();
    std::vector<Point2> poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < chart.dim() && !poly.empty(); ++i)
    {
        poly = clip(poly, N(i, 0), N(i, 1), 1 - z[i]);
        if (!poly.empty())
            poly = clip(poly, -N(i, 0), -N(i, 1), z[i]);
    }
    return poly.size() < 3 ? 0.0 : area(poly);
}

// Randomly shifted Kronecker lattice with the generalized golden ratio
FiberEstimate qmc_volume(Chart const& chart, Vec const& z, int points)
{
    int const m = chart.fiber_dim();
    int const k = chart.dim();
    Mat const& N = chart.n();
    // phi_m: the positive root of x^{m+1} = x + 1
    double phi = 2.0;
    for (int i = 0; i < 64; ++i)
        phi = std::pow(1.0 + phi, 1.0 / (m + 1));
    std::vector<double> alpha(m);
    for (int j = 0; j < m; ++j)
        alpha[j] = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);

    constexpr int replicates = 16;
    int const per = std::max(1, points / replicates);
    Rng rng(0x5EED5EEDull);
    std::vector<double> means;
    std::vector<double> u(m);
    for (int rep = 0; rep < replicates; ++rep)
    {
        std::vector<double> shift(m);
        for (auto& s : shift)
            s = rng.uniform();
        int hits = 0;
        for (int s = 0; s < per; ++s)
        {
            for (int j = 0; j < m; ++j)
            {
                double v = shift[j] + (s + 1) * alpha[j];
                u[j] = v - std::floor(v);
            }
            bool inside = true;
            for (int i = 0; i < k && inside; ++i)
            {
                double x = z[i];
                for (int j = 0; j < m; ++j)
                    x += N(i, j) * u[j];
                inside = x >= 0 && x <= 1;
            }
            hits += inside;
        }
        means.push_back(static_cast<double>(hits) / per);
    }
    double mean = 0;
    for (double v : means)
        mean += v;
    mean /= replicates;
    double var = 0;
    for (double v : means)
        var += (v - mean) * (v - mean);
    var /= replicates - 1;
    return {mean, std::sqrt(var / replicates), false};
}

}  // namespace

FiberEstimate fiber_volume_estimate(Chart const& chart, Vec const& z,
                                    int qmc_points)
{
    switch (chart.fiber_dim())
    {
        case 1:
            return {interval_volume(chart, z), 0, true};
        case 2:
            return {polygon_volume(chart, z), 0, true};
        default:
            return qmc_volume(chart, z, qmc_points);
    }
}

double fiber_volume(Chart const& chart, Vec const& z)
{
    return fiber_volume_estimate(chart, z).value;
}

}  // namespace mperc
