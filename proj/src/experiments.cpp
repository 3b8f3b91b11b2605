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

#include "mperc/experiments.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mperc/hash.hpp"
#include "mperc/operators.hpp"
#include "mperc/parallel.hpp"
#include "mperc/shadow.hpp"

namespace mperc
{
namespace
{
constexpr double vn_tol = 1e-9;

//! Closed containment of z in scale * Delta + offset, tolerance in z units
struct ShadowTest
{
    int k;
    std::vector<double> normals;
    std::vector<double> offsets;

    explicit ShadowTest(Polytope const& delta) : k(delta.dim())
    {
        for (auto const& face : delta.faces())
        {
            for (int a = 0; a < k; ++a)
                normals.push_back(face.normal[a]);
            offsets.push_back(face.offset);
        }
    }

    bool covers(double scale, double const* shift, double const* z) const
    {
        for (std::size_t j = 0; j < offsets.size(); ++j)
        {
            double dot = 0;
            for (int a = 0; a < k; ++a)
                dot += normals[j * k + a] * (z[a] - shift[a]);
            if (dot - scale * offsets[j] > vn_tol)
                return false;
        }
        return true;
    }
};

bool is_coordinate_frame(Mat const& frame)
{
    for (int c = 0; c < frame.cols(); ++c)
    {
        int nonzero = 0;
        for (int r = 0; r < frame.rows(); ++r)
        {
            if (std::abs(frame(r, c)) > 1e-12)
                ++nonzero;
        }
        if (nonzero != 1)
            return false;
    }
    return true;
}

int survival_depth(Params const& params, std::uint64_t seed, int n_max)
{
    if (survives_to(params, seed, n_max))
        return n_max;
    int n = 0;
    while (n + 1 <= n_max && survives_to(params, seed, n + 1))
        ++n;
    return n;
}

}  // namespace

//---------------------------------------------------------------------------//
std::size_t vn_statistic(Realization const& real, Chart const& chart, Vec const& z,
                         int n, std::optional<double> lambda2)
{
    if (n < 0 || n > real.n_max())
        throw std::out_of_range("vn_statistic: level beyond n_max");
    int const M = real.params().base();
    double const scale = std::pow(static_cast<double>(M), -n);
    std::size_t count = 0;
    if (lambda2)
    {
        Polytope const region = homothetic_region(chart, *lambda2);
        for (std::size_t i = 0; i < real.count(n); ++i)
        {
            Vec const offset = shadow_offset(chart, M, n, real.cube(n, i));
            if (region.min_slack((z - offset) / scale) >= -vn_tol)
                ++count;
        }
        return count;
    }
    ShadowTest const test(chart.delta());
    for (std::size_t i = 0; i < real.count(n); ++i)
    {
        Vec const offset = shadow_offset(chart, M, n, real.cube(n, i));
        if (test.covers(scale, offset.data(), z.data()))
            ++count;
    }
    return count;
}

std::vector<std::size_t> vn_profile(Params const& params, std::uint64_t seed,
                                    Chart const& chart, Vec const& z, int n_max)
{
    int const d = params.dim();
    int const k = chart.dim();
    double const M = params.base();
    ShadowTest const test(chart.delta());
    std::vector<double> scales(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        scales[n] = std::pow(M, -n);
    std::vector<std::size_t> counts(n_max + 1, 0);
    std::vector<double> x(d), shift(k);
    for_each_retained(
        params, seed, n_max, CubeVisitor{},
        [&](int depth, std::span<std::int64_t const> coords) {
            for (int r = 0; r < d; ++r)
                x[r] = static_cast<double>(coords[r]) * scales[depth];
            chart.project(x.data(), shift.data());
            if (!test.covers(scales[depth], shift.data(), z.data()))
                return false;
            ++counts[depth];
            return true;
        });
    return counts;
}

std::vector<std::size_t> full_count_profile(Params const& params, Chart const& chart,
                                            Vec const& z, int n_max)
{
    Params const full = Params::equal(params.dim(), params.base(),
                                      params.proj_dim(), 1.0);
    return vn_profile(full, 0, chart, z, n_max);
}

VnReport growth_test(Params const& params, Chart const& chart, Vec const& z,
                     int n_levels, std::size_t seeds, std::uint64_t master_seed,
                     unsigned threads)
{
    if (n_levels < 0)
        throw std::invalid_argument("growth_test: negative level count");
    VnReport report;
    report.z = z;
    report.master_seed = master_seed;
    if (seeds == 0)
        return report;

    std::vector<std::vector<std::size_t>> profiles(seeds);
    std::vector<int> depth(seeds);
    report.seeds.resize(seeds);
    for (std::size_t i = 0; i < seeds; ++i)
        report.seeds[i] = derive_seed(master_seed, i);
    parallel_for(seeds, threads, [&](std::size_t i) {
        profiles[i] = vn_profile(params, report.seeds[i], chart, z, n_levels);
        depth[i] = survival_depth(params, report.seeds[i], n_levels);
    });

    Field const one = [](Vec const&) { return 1.0; };
    for (int n = 0; n <= n_levels; ++n)
    {
        VnLevel level;
        level.n = n;
        level.reference = std::pow(1.5, n);
        level.min = std::numeric_limits<std::size_t>::max();
        double sum = 0, sum_sq = 0;
        std::size_t grown = 0;
        for (std::size_t i = 0; i < seeds; ++i)
        {
            std::size_t const v = profiles[i][n];
            level.samples.push_back(v);
            sum += v;
            sum_sq += double(v) * v;
            level.min = std::min(level.min, v);
            level.max = std::max(level.max, v);
            if (depth[i] >= n)
            {
                ++level.survivors;
                if (v >= level.reference)
                    ++grown;
            }
        }
        level.mean = sum / seeds;
        double const var =
            seeds > 1 ? std::max(0.0, (sum_sq - sum * level.mean) / (seeds - 1)) : 0.0;
        level.std_error = std::sqrt(var / seeds);
        level.growth_frequency = level.survivors
                                     ? double(grown) / level.survivors
                                     : std::numeric_limits<double>::quiet_NaN();
        try
        {
            level.expected = apply_F(params, chart, one, z, n);
        }
        catch (BudgetExceeded const&)
        {
            level.expected = std::numeric_limits<double>::quiet_NaN();
        }
        report.levels.push_back(std::move(level));
    }
    return report;
}

//---------------------------------------------------------------------------//
ShapeOf orthogonal_shape_of(Chart const& chart, int base, int max_level)
{
    std::vector<ConvexShape> protos;
    std::vector<double> scales;
    for (int n = 0; n <= max_level; ++n)
    {
        scales.push_back(std::pow(static_cast<double>(base), -n));
        protos.push_back(ConvexShape::from(
            chart.delta().affine(scales.back(), Vec::Zero(chart.dim()))));
    }
    return [&chart, protos = std::move(protos), scales = std::move(scales)](
               int depth, std::span<std::int64_t const> coords, ConvexShape& shape) {
        int const d = chart.ambient();
        int const k = chart.dim();
        ConvexShape const& proto = protos[depth];
        // M^d <= 2^24 bounds d by 24
        std::array<double, 24> x;
        double shift[3];
        for (int r = 0; r < d; ++r)
            x[r] = static_cast<double>(coords[r]) * scales[depth];
        chart.project(x.data(), shift);
        shape.dim = k;
        shape.normals = proto.normals;
        shape.offsets.resize(proto.num_faces());
        for (std::size_t j = 0; j < proto.num_faces(); ++j)
        {
            double dot = 0;
            for (int a = 0; a < k; ++a)
                dot += proto.normals[j * k + a] * shift[a];
            shape.offsets[j] = proto.offsets[j] + dot;
        }
        for (int a = 0; a < k; ++a)
        {
            shape.lo[a] = proto.lo[a] + shift[a];
            shape.hi[a] = proto.hi[a] + shift[a];
        }
    };
}

ShapeStream orthogonal_shapes(Chart const& chart, int base, int level,
                              CubeStream cubes)
{
    return flat_shapes(std::move(cubes), level, orthogonal_shape_of(chart, base, level));
}

namespace
{
CoverageReport orthogonal_ball(Chart const& chart, int base, int level,
                               ShapeStream const& shapes, CoverageOptions const& opts)
{
    if (chart.dim() > 3)
        throw UnsupportedDimension("detect_ball: k > 3");
    auto const& delta = chart.delta();
    GridSpec const grid = grid_around(delta, chart.center(), opts.resolution);
    double const feature = std::pow(static_cast<double>(base), -level) * delta.diameter();
    auto report = coverage_ball(grid, delta, shapes, opts, feature);
    report.target = "orthogonal";
    report.level = level;
    return report;
}
}  // namespace

CoverageReport detect_ball(Chart const& chart, int base, int level,
                           CubeStream const& cubes, CoverageOptions const& opts)
{
    return orthogonal_ball(chart, base, level,
                           orthogonal_shapes(chart, base, level, cubes), opts);
}

CoverageReport detect_ball(Realization const& real, Chart const& chart, int n,
                           CoverageOptions const& opts)
{
    if (n < 0 || n > real.n_max())
        throw std::out_of_range("detect_ball: level beyond n_max");
    return detect_ball(chart, real.params().base(), n, real.stream(n), opts);
}

CoverageReport detect_ball(Params const& params, std::uint64_t seed,
                           Chart const& chart, int n, CoverageOptions const& opts)
{
    if (chart.dim() > 3)
        throw UnsupportedDimension("detect_ball: k > 3");
    auto shapes = hierarchical_shapes(params, seed, n,
                                      orthogonal_shape_of(chart, params.base(), n));
    return orthogonal_ball(chart, params.base(), n, shapes, opts);
}

//---------------------------------------------------------------------------//
std::vector<Frame> direction_net(int d, SweepOptions const& opts)
{
    int const k = opts.k;
    int const m = opts.net_size;
    if (k < 1 || k >= d)
        throw std::invalid_argument("direction_net: need 1 <= k < d");
    if (m < 1)
        throw std::invalid_argument("direction_net: net size must be positive");

    auto from_vector = [&](Vec const& u) {
        Mat col = u.normalized();
        return k == 1 ? Frame::from_columns(col) : Frame::complement_of(col);
    };

    std::vector<Frame> net;
    if (d == 2)
    {
        for (int j = 0; j < m; ++j)
        {
            double const theta = std::numbers::pi * j / m;
            Vec u(2);
            u << std::cos(theta), std::sin(theta);
            net.push_back(from_vector(u));
        }
    }
    else if (d == 3 && (k == 1 || k == 2))
    {
        double const golden_angle = std::numbers::pi * (3 - std::sqrt(5.0));
        for (int j = 0; j < m; ++j)
        {
            double const h = (j + 0.5) / m;
            double const rho = std::sqrt(1 - h * h);
            Vec u(3);
            u << rho * std::cos(j * golden_angle), rho * std::sin(j * golden_angle), h;
            net.push_back(from_vector(u));
        }
    }
    else
    {
        for (int j = 0; j < m; ++j)
            net.push_back(Frame::random(d, k, derive_seed(opts.frame_seed, j)));
    }

    if (opts.include_axes)
    {
        for (auto const& axes : combinations(d, k))
        {
            Frame const axis = Frame::coordinate(d, axes);
            bool present = false;
            for (auto const& f : net)
                present = present || frame_distance(f, axis) < 1e-12;
            if (!present)
                net.push_back(axis);
        }
    }
    return net;
}

SweepReport direction_sweep(Params const& params, Realization const& real,
                            SweepOptions const& opts, unsigned threads)
{
    if (opts.k != params.proj_dim())
        throw std::invalid_argument("direction_sweep: k differs from params");
    if (opts.level < 0 || opts.level > real.n_max())
        throw std::out_of_range("direction_sweep: level beyond n_max");
    auto const net = direction_net(params.dim(), opts);

    SweepReport report;
    report.d = params.dim();
    report.k = opts.k;
    report.level = opts.level;
    report.entries.resize(net.size());

    CoverageOptions coverage = opts.coverage;
    coverage.keep_cells = false;
    parallel_for(net.size(), threads, [&](std::size_t i) {
        Chart const chart = select_chart(net[i]);
        SweepEntry& entry = report.entries[i];
        entry.frame = net[i].matrix();
        entry.plane = chart.plane();
        entry.det_c2 = chart.det_c2();
        entry.coordinate = is_coordinate_frame(entry.frame);
        if (opts.run_condition_b)
        {
            try
            {
                entry.condition_b = check_condition_B(params, chart, opts.condition_b);
            }
            catch (std::domain_error const& e)
            {
                ConditionReport degenerate;
                degenerate.kind = "B";
                degenerate.verdict = Verdict::inconclusive;
                degenerate.resolution = opts.condition_b.h;
                degenerate.note = e.what();
                entry.condition_b = degenerate;
            }
        }
        entry.ball = detect_ball(real, chart, opts.level, coverage);
        entry.vn_center = vn_statistic(real, chart, chart.center(), opts.level);
    });

    for (std::size_t i = 0; i < net.size(); ++i)
    {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < net.size(); ++j)
        {
            if (j != i)
                nearest = std::min(nearest, frame_distance(net[i], net[j]));
        }
        if (std::isfinite(nearest))
            report.spacing = std::max(report.spacing, nearest);
        if (report.entries[i].ball.ball)
            ++report.balls_detected;
        if (report.entries[i].ball.radius < report.entries[report.worst].ball.radius)
            report.worst = i;
    }
    return report;
}

}  // namespace mperc
