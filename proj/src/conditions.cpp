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

#include "mperc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mperc/fiber.hpp"

namespace mperc
{
char const* to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::pass:
            return "pass";
        case Verdict::fail:
            return "fail";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "?";
}

//---------------------------------------------------------------------------//
ConditionReport check_FG(Params const& params)
{
    int const d = params.dim();
    int const k = params.proj_dim();
    int const M = params.base();
    FgWitness witness;
    witness.min_sum = std::numeric_limits<double>::infinity();
    bool any_below = false;
    bool any_equal = false;

    auto const digit_sets = static_cast<std::size_t>(ipow(M, k));
    for (auto const& axes : combinations(d, k))
    {
        for (std::size_t assignment = 0; assignment < digit_sets; ++assignment)
        {
            FgConstraint constraint;
            constraint.axes = axes;
            constraint.digits.resize(k);
            auto a = assignment;
            for (int l = k - 1; l >= 0; --l)
            {
                constraint.digits[l] = static_cast<int>(a % M);
                a /= M;
            }
            for (std::size_t c = 0; c < params.num_children(); ++c)
            {
                auto const digits = params.digits_of(c);
                bool match = true;
                for (int l = 0; l < k && match; ++l)
                    match = digits[axes[l]] == constraint.digits[l];
                if (match)
                    constraint.sum += params.prob(c);
            }
            if (constraint.sum < 1 - fg_equality_tol)
                any_below = true;
            else if (constraint.sum <= 1 + fg_equality_tol)
                any_equal = true;
            witness.min_sum = std::min(witness.min_sum, constraint.sum);
            witness.constraints.push_back(std::move(constraint));
        }
    }

    ConditionReport report;
    report.kind = "FG";
    if (any_below)
    {
        report.verdict = Verdict::fail;
        report.note = "some digit-slice sum < 1: coordinate projections have "
                      "empty interior almost surely";
    }
    else if (any_equal)
    {
        report.verdict = Verdict::inconclusive;
        report.note = "some digit-slice sum equals 1; the criterion does not "
                      "cover equality";
    }
    else
    {
        report.verdict = Verdict::pass;
    }
    report.fg = std::move(witness);
    return report;
}

//---------------------------------------------------------------------------//
ConditionReport check_condition_B(Params const& params, Chart const& chart,
                                  Field const& f, ConditionBOptions const& opts)
{
    auto const points = interior_points(chart, opts.h, 0.0);
    std::vector<double> values;
    values.reserve(points.size());
    double max_f = 0;
    for (auto const& z : points)
    {
        values.push_back(f(z));
        max_f = std::max(max_f, values.back());
    }
    double const floor = opts.floor_factor * opts.h * max_f;

    BWitness witness;
    witness.floor = floor;
    witness.eps_hat = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (!(values[i] > floor))
            continue;
        double const ratio = apply_F(params, chart, f, points[i], 1) / values[i];
        ++witness.points;
        if (ratio - 1 < witness.eps_hat)
        {
            witness.eps_hat = ratio - 1;
            witness.argmin = points[i];
        }
    }
    if (witness.points == 0)
        throw std::domain_error("check_condition_B: no interior lattice point "
                                "above the floor; refine h");

    ConditionReport report;
    report.kind = "B";
    report.resolution = opts.h;
    witness.margin = opts.margin_factor * opts.h;
    report.verdict = witness.eps_hat > witness.margin ? Verdict::pass
                                                      : Verdict::fail;
    if (report.verdict == Verdict::fail && std::abs(witness.eps_hat) <= 1e-9)
        report.note = "critical: F f = f up to rounding";
    report.b = std::move(witness);
    return report;
}

ConditionReport check_condition_B(Params const& params, Chart const& chart,
                                  ConditionBOptions const& opts)
{
    return check_condition_B(
        params, chart, [&chart](Vec const& z) { return fiber_volume(chart, z); },
        opts);
}

//---------------------------------------------------------------------------//
namespace
{
struct Gauge
{
    Vec center;
    std::vector<double> support;  // b_j - n_j . c > 0
    Polytope const* delta;

    //! smallest lambda with y in the closed lambda-homothet, padded by tol
    double outer(Vec const& y, double tol) const
    {
        double g = -std::numeric_limits<double>::infinity();
        auto const& faces = delta->faces();
        for (std::size_t j = 0; j < faces.size(); ++j)
            g = std::max(g, (faces[j].normal.dot(y - center) - tol) / support[j]);
        return g;
    }
    //! y strictly inside lambda-homothet with slack > tol iff inner(y) < lambda
    double inner(Vec const& y, double tol) const
    {
        double g = -std::numeric_limits<double>::infinity();
        auto const& faces = delta->faces();
        for (std::size_t j = 0; j < faces.size(); ++j)
            g = std::max(g, (faces[j].normal.dot(y - center) + tol) / support[j]);
        return g;
    }
};
}  // namespace

ConditionReport find_condition_A(Params const& params, Chart const& chart,
                                 ConditionAOptions const& opts)
{
    constexpr double tol = 1e-9;
    auto grid = opts.lambda_grid;
    std::sort(grid.begin(), grid.end());
    for (double lambda : grid)
    {
        if (!(lambda > 0 && lambda < 1))
            throw std::invalid_argument("find_condition_A: lambda grid must lie in (0,1)");
    }

    auto const& delta = chart.delta();
    Gauge gauge{chart.center(), {}, &delta};
    for (auto const& face : delta.faces())
        gauge.support.push_back(face.offset - face.normal.dot(chart.center()));

    // lattice points that can lie inside some I2
    std::vector<Vec> points;
    std::vector<double> point_gauge;
    double const lambda_top = grid.empty() ? 0 : grid.back();
    for (auto& z : interior_points(chart, opts.h, tol))
    {
        double const g = gauge.inner(z, tol);
        if (g < lambda_top)
        {
            points.push_back(std::move(z));
            point_gauge.push_back(g);
        }
    }

    ConditionReport report;
    report.kind = "A";
    report.resolution = opts.h;
    AWitness best;
    best.margin = -std::numeric_limits<double>::infinity();
    bool found = false;

    double const log_budget = std::log2(static_cast<double>(opts.budget));
    for (int r = 1; r <= opts.r_max && !found; ++r)
    {
        if (r * params.dim() * std::log2(params.base()) > log_budget)
        {
            best.budget_exhausted = true;
            break;
        }
        best.r_searched = r;
        // W[p][i]: F^r 1_{lambda_i Delta} at point p
        std::vector<std::vector<double>> weights(points.size(),
                                                 std::vector<double>(grid.size(), 0.0));
        for (std::size_t p = 0; p < points.size(); ++p)
        {
            for_each_covering(
                params, chart, points[p], r,
                [&](Vec const& psi_z, double w) {
                    double const g = gauge.outer(psi_z, tol);
                    for (std::size_t i = 0; i < grid.size(); ++i)
                    {
                        if (g <= grid[i])
                            weights[p][i] += w;
                    }
                },
                opts.budget);
        }
        for (std::size_t i2 = 0; i2 < grid.size(); ++i2)
        {
            for (std::size_t i1 = 0; i1 < i2; ++i1)
            {
                double min_value = std::numeric_limits<double>::infinity();
                std::size_t count = 0;
                for (std::size_t p = 0; p < points.size(); ++p)
                {
                    if (point_gauge[p] < grid[i2])
                    {
                        min_value = std::min(min_value, weights[p][i1]);
                        ++count;
                    }
                }
                if (count == 0)
                    continue;
                double const margin = min_value - 2.0;
                if (margin > opts.margin_tol && margin > best.margin)
                {
                    best.lambda1 = grid[i1];
                    best.lambda2 = grid[i2];
                    best.r = r;
                    best.margin = margin;
                    best.points = count;
                    found = true;
                }
            }
        }
    }

    if (found)
    {
        report.verdict = Verdict::pass;
    }
    else
    {
        report.verdict = Verdict::inconclusive;
        report.note = best.budget_exhausted
                          ? "enumeration budget exhausted before a certificate was found"
                          : "no certificate up to r_max on this lambda grid";
        best.margin = std::numeric_limits<double>::quiet_NaN();
    }
    report.a = std::move(best);
    return report;
}

}  // namespace mperc
