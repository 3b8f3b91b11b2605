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

#include "mperc/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mperc
{
namespace
{
//! Projected vertices of the box corner + [0, side]^d, first d-1 coordinates
void project_box(Vec const& t, double const* corner, double side, int d, double* out)
{
    double const td = t[d - 1];
    for (int v = 0; v < (1 << d); ++v)
    {
        double const xd = corner[d - 1] + ((v >> (d - 1)) & 1) * side;
        double const s = td / (td - xd);
        for (int a = 0; a < d - 1; ++a)
        {
            double const x = corner[a] + ((v >> a) & 1) * side;
            out[v * (d - 1) + a] = t[a] + s * (x - t[a]);
        }
    }
}

double cross(std::array<double, 2> const& o, std::array<double, 2> const& a,
             std::array<double, 2> const& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

//! Monotone-chain hull of 8 planar points straight into half-space form
void planar_hull_shape(double const* pts, ConvexShape& shape)
{
    std::array<std::array<double, 2>, 8> p;
    for (int i = 0; i < 8; ++i)
        p[i] = {pts[2 * i], pts[2 * i + 1]};
    std::sort(p.begin(), p.end());
    std::array<std::array<double, 2>, 16> h;
    int n = 0;
    for (int i = 0; i < 8; ++i)
    {
        while (n >= 2 && cross(h[n - 2], h[n - 1], p[i]) <= 0)
            --n;
        h[n++] = p[i];
    }
    for (int i = 6, lower = n + 1; i >= 0; --i)
    {
        while (n >= lower && cross(h[n - 2], h[n - 1], p[i]) <= 0)
            --n;
        h[n++] = p[i];
    }
    --n;  // last point repeats the first
    shape.dim = 2;
    shape.normals.clear();
    shape.offsets.clear();
    shape.lo[0] = shape.lo[1] = std::numeric_limits<double>::infinity();
    shape.hi[0] = shape.hi[1] = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
    {
        auto const& a = h[i];
        auto const& b = h[(i + 1) % n];
        double nx = b[1] - a[1];
        double ny = a[0] - b[0];
        double const len = std::hypot(nx, ny);
        nx /= len;
        ny /= len;
        shape.normals.push_back(nx);
        shape.normals.push_back(ny);
        shape.offsets.push_back(nx * a[0] + ny * a[1]);
        for (int c = 0; c < 2; ++c)
        {
            shape.lo[c] = std::min(shape.lo[c], a[c]);
            shape.hi[c] = std::max(shape.hi[c], a[c]);
        }
    }
}

CubeIndex root_cube(int d, int base)
{
    return CubeIndex::root(d, base);
}

}  // namespace

//---------------------------------------------------------------------------//
double distance_to_unit_cube(Vec const& t)
{
    double sq = 0;
    for (int a = 0; a < t.size(); ++a)
    {
        double const gap = std::max({0.0, -t[a], t[a] - 1});
        sq += gap * gap;
    }
    return std::sqrt(sq);
}

void check_separation(RadialCenter const& center)
{
    auto const& t = center.t;
    if (t.size() < 2)
        throw std::invalid_argument("radial center: dimension must be >= 2");
    if (!(center.margin >= 0))
        throw std::invalid_argument("radial center: margin must be >= 0");
    if (!(distance_to_unit_cube(t) > center.margin))
        throw std::invalid_argument("radial center: t is within the separation margin "
                                    "of the unit cube");
    double const td = t[t.size() - 1];
    if (!(td > 1 || td < 0))
        throw std::invalid_argument("radial center: t_d must lie outside [0,1] so "
                                    "every line parameter is finite and positive");
}

Polytope radial_shadow(RadialCenter const& center, CubeIndex const& cube)
{
    check_separation(center);
    int const d = cube.dim();
    if (center.t.size() != d)
        throw std::invalid_argument("radial_shadow: dimension mismatch");
    if (d - 1 > 3)
        throw UnsupportedDimension("radial_shadow: d - 1 > 3");
    Vec const corner = cube.corner();
    std::vector<double> flat((1 << d) * (d - 1));
    project_box(center.t, corner.data(), cube.scale(), d, flat.data());
    std::vector<Vec> points;
    for (int v = 0; v < (1 << d); ++v)
        points.push_back(Eigen::Map<Vec const>(flat.data() + v * (d - 1), d - 1));
    return Polytope::hull(d - 1, points);
}

std::pair<double, double> coradial_interval(Vec const& t, int base, int level,
                                            std::span<std::int64_t const> coords)
{
    double const side = std::pow(static_cast<double>(base), -level);
    double lo_sq = 0, hi_sq = 0;
    for (int a = 0; a < t.size(); ++a)
    {
        double const lo = coords[a] * side;
        double const hi = lo + side;
        double const gap = std::max({0.0, lo - t[a], t[a] - hi});
        double const far = std::max(std::abs(t[a] - lo), std::abs(t[a] - hi));
        lo_sq += gap * gap;
        hi_sq += far * far;
    }
    return {std::sqrt(lo_sq), std::sqrt(hi_sq)};
}

std::pair<double, double> coradial_interval(Vec const& t, CubeIndex const& cube)
{
    if (t.size() != cube.dim())
        throw std::invalid_argument("coradial_interval: dimension mismatch");
    return coradial_interval(t, cube.base(), cube.level(), cube.coords());
}

//---------------------------------------------------------------------------//
namespace
{
ShapeOf radial_shape_of(RadialCenter const& center, int base)
{
    return [t = center.t, base](int depth, std::span<std::int64_t const> coords,
                                ConvexShape& shape) {
        int const d = static_cast<int>(t.size());
        double const side = std::pow(static_cast<double>(base), -depth);
        std::array<double, 4> corner{};
        std::array<double, 16 * 3> flat{};
        for (int a = 0; a < d; ++a)
            corner[a] = coords[a] * side;
        project_box(t, corner.data(), side, d, flat.data());
        if (d == 3)
        {
            planar_hull_shape(flat.data(), shape);
            return;
        }
        std::vector<Vec> points;
        for (int v = 0; v < (1 << d); ++v)
            points.push_back(Eigen::Map<Vec const>(flat.data() + v * (d - 1), d - 1));
        shape = ConvexShape::from(Polytope::hull(d - 1, points));
    };
}

ShapeOf coradial_shape_of(Vec const& t, int base)
{
    return [t, base](int depth, std::span<std::int64_t const> coords, ConvexShape& shape) {
        auto const iv = coradial_interval(t, base, depth, coords);
        shape.dim = 1;
        shape.normals = {1.0, -1.0};
        shape.offsets = {iv.second, -iv.first};
        shape.lo[0] = iv.first;
        shape.hi[0] = iv.second;
    };
}

CoverageReport radial_run(Params const& params, RadialCenter const& center, int n,
                          CoverageOptions const& opts,
                          std::function<ShapeStream(ShapeOf)> const& make)
{
    check_separation(center);
    int const d = params.dim();
    if (center.t.size() != d)
        throw std::invalid_argument("radial_experiment: dimension mismatch");
    if (d - 1 > 3)
        throw UnsupportedDimension("radial_experiment: d - 1 > 3");
    int const M = params.base();
    Polytope const domain = radial_shadow(center, root_cube(d, M));
    GridSpec const grid =
        grid_around(domain, domain.centroid_of_vertices(), opts.resolution);
    double const side = std::pow(static_cast<double>(M), -n);
    auto report = coverage_ball(grid, domain,
                                make(radial_shape_of(center, M)),
                                opts, side * domain.diameter());
    report.target = "radial";
    report.source = center.t;
    report.level = n;
    return report;
}

CoverageReport coradial_run(Params const& params, Vec const& t, int n,
                            CoverageOptions const& opts,
                            std::function<ShapeStream(ShapeOf)> const& make)
{
    int const d = params.dim();
    int const M = params.base();
    if (t.size() != d)
        throw std::invalid_argument("coradial_experiment: dimension mismatch");
    auto const root = coradial_interval(t, root_cube(d, M));
    if (!(root.second > root.first))
        throw std::invalid_argument("coradial_experiment: degenerate distance range");
    Vec lo(1), hi(1), anchor(1);
    lo[0] = root.first;
    hi[0] = root.second;
    anchor[0] = 0.5 * (root.first + root.second);
    Polytope const domain = Polytope::box(lo, hi);
    GridSpec const grid = grid_around(domain, anchor, opts.resolution);
    double const feature = std::pow(static_cast<double>(M), -n) * std::sqrt(double(d));
    CoverageOptions exact = opts;
    exact.tol = 1e-12;
    auto report = coverage_ball(grid, domain, make(coradial_shape_of(t, M)),
                                exact, feature);
    report.target = "coradial";
    report.source = t;
    report.level = n;
    return report;
}

}  // namespace

CoverageReport radial_experiment(Params const& params, CubeStream const& cubes,
                                 RadialCenter const& center, int n,
                                 CoverageOptions const& opts)
{
    return radial_run(params, center, n, opts, [&](ShapeOf shape_of) {
        return flat_shapes(cubes, n, std::move(shape_of));
    });
}

CoverageReport radial_experiment(Params const& params, std::uint64_t seed,
                                 RadialCenter const& center, int n,
                                 CoverageOptions const& opts)
{
    return radial_run(params, center, n, opts, [&](ShapeOf shape_of) {
        return hierarchical_shapes(params, seed, n, std::move(shape_of));
    });
}

CoverageReport radial_experiment(Realization const& real, RadialCenter const& center,
                                 int n, CoverageOptions const& opts)
{
    if (n < 0 || n > real.n_max())
        throw std::out_of_range("radial_experiment: level beyond n_max");
    return radial_experiment(real.params(), real.stream(n), center, n, opts);
}

CoverageReport coradial_experiment(Params const& params, CubeStream const& cubes,
                                   Vec const& t, int n, CoverageOptions const& opts)
{
    return coradial_run(params, t, n, opts, [&](ShapeOf shape_of) {
        return flat_shapes(cubes, n, std::move(shape_of));
    });
}

CoverageReport coradial_experiment(Params const& params, std::uint64_t seed,
                                   Vec const& t, int n, CoverageOptions const& opts)
{
    return coradial_run(params, t, n, opts, [&](ShapeOf shape_of) {
        return hierarchical_shapes(params, seed, n, std::move(shape_of));
    });
}

CoverageReport coradial_experiment(Realization const& real, Vec const& t, int n,
                                   CoverageOptions const& opts)
{
    if (n < 0 || n > real.n_max())
        throw std::out_of_range("coradial_experiment: level beyond n_max");
    return coradial_experiment(real.params(), real.stream(n), t, n, opts);
}

}  // namespace mperc
