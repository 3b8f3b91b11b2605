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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "mperc/coverage.hpp"
#include "mperc/experiments.hpp"
#include "mperc/frame.hpp"
#include "mperc/hash.hpp"
#include "mperc/radial.hpp"
#include "mperc/shadow.hpp"

using namespace mperc;

namespace
{
Chart hexagon_chart()
{
    return chart_from_complement(Mat::Constant(3, 1, 1 / std::sqrt(3.0)));
}

Vec vec(std::initializer_list<double> xs)
{
    Vec v(xs.size());
    int i = 0;
    for (double x : xs)
        v[i++] = x;
    return v;
}

//! Count of level-n cubes of `real` whose shadow polytope contains z
std::size_t brute_vn(Realization const& real, Chart const& chart, Vec const& z, int n)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < real.count(n); ++i)
    {
        if (shadow_of_cube(chart, real.cube_index(n, i)).contains(z, 1e-9) !=
            Containment::outside)
            ++count;
    }
    return count;
}

/*!
 * Fraction of uniform points of the reported ball that no level-n shadow
 * contains, tested directly against the shadow polytopes.
 */
double ball_miss_rate(CoverageReport const& report, std::vector<Polytope> const& shadows,
                      std::uint64_t seed, int samples)
{
    if (!report.ball)
        return 0;
    int const k = static_cast<int>(report.ball->center.size());
    Rng rng(seed);
    int misses = 0;
    for (int i = 0; i < samples; ++i)
    {
        Vec x(k);
        do
        {
            for (int a = 0; a < k; ++a)
                x[a] = rng.uniform(-1, 1);
        } while (x.norm() > 1);
        x = report.ball->center + report.ball->radius * x;
        bool covered = false;
        for (auto const& s : shadows)
        {
            if (s.contains(x, 1e-9) != Containment::outside)
            {
                covered = true;
                break;
            }
        }
        misses += !covered;
    }
    return double(misses) / samples;
}

std::vector<Polytope> level_shadows(Realization const& real, Chart const& chart, int n)
{
    std::vector<Polytope> out;
    for (std::size_t i = 0; i < real.count(n); ++i)
        out.push_back(shadow_of_cube(chart, real.cube_index(n, i)));
    return out;
}

}  // namespace

TEST_SUITE("experiments")
{
TEST_CASE("V_n statistic")
{
    auto const hex = hexagon_chart();
    Params const p = Params::equal(3, 2, 2, 0.85);
    Vec const origin = Vec::Zero(2);
    for (std::uint64_t seed = 0; seed < 8; ++seed)
    {
        auto const real = generate(p, seed, 5);
        auto const profile = vn_profile(p, seed, hex, origin, 5);
        REQUIRE(profile.size() == 6);
        CHECK(profile[0] == 1);
        for (int n = 0; n <= 5; ++n)
        {
            CHECK(vn_statistic(real, hex, origin, n) == brute_vn(real, hex, origin, n));
            CHECK(profile[n] == vn_statistic(real, hex, origin, n));
        }
        Vec const z = vec({0.31, -0.17});
        auto const off = vn_profile(p, seed, hex, z, 5);
        for (int n = 0; n <= 5; ++n)
            CHECK(off[n] == brute_vn(real, hex, z, n));
        CHECK(vn_statistic(real, hex, vec({2, 2}), 3) == 0);
    }

    auto const full = full_count_profile(p, hex, origin, 5);
    for (int n = 0; n <= 5; ++n)
        CHECK(full[n] == oracle::diagonal_cubes(2, n));
    std::vector<std::size_t> const frozen = {1, 8, 22, 50, 106, 218};
    CHECK(full == frozen);

    // lambda2 restricts to cubes whose psi lands in the homothet
    auto const real = generate(p, 3, 3);
    CHECK(vn_statistic(real, hex, origin, 3, 1.0) == vn_statistic(real, hex, origin, 3));
    CHECK(vn_statistic(real, hex, origin, 3, 0.5) <= vn_statistic(real, hex, origin, 3));
}

TEST_CASE("growth test")
{
    auto const hex = hexagon_chart();
    Vec const origin = Vec::Zero(2);
    auto const full = growth_test(Params::equal(3, 2, 2, 1.0), hex, origin, 5, 4, 1);
    for (auto const& level : full.levels)
    {
        CHECK(level.growth_frequency == 1.0);
        CHECK(level.mean == double(oracle::diagonal_cubes(2, level.n)));
        CHECK(level.std_error == 0.0);
    }

    auto const sub = growth_test(Params::equal(3, 2, 2, 0.4), hex, origin, 6, 300, 2);
    CHECK(sub.levels[6].mean < sub.levels[2].mean);
    CHECK(sub.levels[6].expected == doctest::Approx(std::pow(0.4, 6) * 442));

    CHECK(growth_test(Params::equal(3, 2, 2, 0.85), hex, origin, 4, 0, 1).levels.empty());

    // identical statistics for any worker count
    Params const p = Params::equal(3, 2, 2, 0.85);
    auto const one = growth_test(p, hex, origin, 5, 64, 9, 1);
    auto const many = growth_test(p, hex, origin, 5, 64, 9, 3);
    CHECK(one.seeds == many.seeds);
    for (std::size_t n = 0; n < one.levels.size(); ++n)
    {
        CHECK(one.levels[n].samples == many.levels[n].samples);
        CHECK(one.levels[n].mean == doctest::Approx(many.levels[n].mean).epsilon(1e-12));
    }
}

TEST_CASE("coverage primitives")
{
    auto const merged = merge_intervals({{0.5, 0.7}, {0, 0.2}, {0.2, 0.3}, {0.65, 0.9}});
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == std::pair{0.0, 0.3});
    CHECK(merged[1] == std::pair{0.5, 0.9});

    std::vector<int> const shape = {9, 7};
    std::vector<bool> feature(63, false);
    feature[10] = feature[50] = feature[62] = true;
    auto const dt = squared_distance_transform(feature, shape);
    for (int i = 0; i < 63; ++i)
    {
        double best = INFINITY;
        for (int j = 0; j < 63; ++j)
        {
            if (!feature[j])
                continue;
            double const dx = i / 7 - j / 7, dy = i % 7 - j % 7;
            best = std::min(best, dx * dx + dy * dy);
        }
        CHECK(dt[i] == best);
    }
    auto const none = squared_distance_transform(std::vector<bool>(8, false), {2, 2, 2});
    CHECK(std::isinf(none[0]));

    auto const hex = hexagon_chart();
    auto const grid = grid_around(hex.delta(), hex.center(), 0.1);
    bool anchored = false;
    for (std::size_t i = 0; i < grid.size(); ++i)
        anchored = anchored || (grid.center(i) - hex.center()).norm() < 1e-12;
    CHECK(anchored);
    CHECK(grid.center(0)[0] < hex.delta().lower()[0]);
}

TEST_CASE("orthogonal ball detection")
{
    auto const hex = hexagon_chart();
    CoverageOptions opts;
    opts.resolution = 1.0 / 64;

    // full coverage: inradius of the hexagon
    Params const full = Params::equal(3, 2, 2, 1.0);
    auto const all = detect_ball(full, 0, hex, 3, opts);
    REQUIRE(all.ball);
    CHECK(std::abs(all.radius - 1 / std::sqrt(2.0)) <= opts.resolution * std::sqrt(2.0));

    auto const empty = detect_ball(generate(Params::equal(3, 2, 2, 0.0), 0, 2), hex, 2, opts);
    CHECK_FALSE(empty.ball);
    CHECK(empty.radius == 0);

    Params const p = Params::equal(3, 2, 2, 0.85);
    for (std::uint64_t seed = 0; seed < 6; ++seed)
    {
        auto const real = generate(p, seed, 4);
        double previous = INFINITY;
        for (int n = 1; n <= 4; ++n)
        {
            auto const flat = detect_ball(real, hex, n, opts);
            auto const lazy = detect_ball(p, seed, hex, n, opts);
            CHECK(flat.radius == lazy.radius);
            CHECK(flat.covered_cells == lazy.covered_cells);
            CHECK(lazy.shapes <= flat.shapes);
            CHECK(flat.radius <= previous);
            previous = flat.radius;
            CHECK(ball_miss_rate(flat, level_shadows(real, hex, n), seed, 1000) == 0.0);
        }
    }

    // corners mode never covers more than center mode
    auto const real = generate(p, 1, 4);
    CoverageOptions corners = opts;
    corners.mode = CoverageMode::corners;
    CHECK(detect_ball(real, hex, 4, corners).covered_cells <=
          detect_ball(real, hex, 4, opts).covered_cells + 0);

    // k = 1 uses the exact interval union
    Mat a(2, 1);
    a << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    auto const diag = select_chart(Frame::from_columns(a));
    auto const line = detect_ball(Params::equal(2, 2, 1, 1.0), 0, diag, 3, opts);
    REQUIRE(line.ball);
    CHECK(line.radius == doctest::Approx(1.0));
    CHECK(line.ball->center[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("negative control shrinks")
{
    auto const coord = select_chart(Frame::coordinate(3, {0, 1}));
    Params const ex2 = Params::ex2(0.4, 0.3);
    CoverageOptions opts;
    opts.resolution = 1.0 / 32;
    opts.mode = CoverageMode::corners;
    int survivors = 0, vanished = 0;
    for (std::uint64_t i = 0; i < 12; ++i)
    {
        auto const seed = derive_seed(5, i);
        if (!survives_to(ex2, seed, 8))
            continue;
        ++survivors;
        double const r4 = detect_ball(ex2, seed, coord, 4, opts).radius;
        double const r8 = detect_ball(ex2, seed, coord, 8, opts).radius;
        CHECK(r8 <= r4);
        vanished += r8 == 0;
    }
    CHECK(vanished >= survivors / 2);
}

TEST_CASE("radial shadows")
{
    RadialCenter const sun{vec({0.5, 0.5, 10})};
    auto const root = CubeIndex::root(3, 2);
    auto const shadow = radial_shadow(sun, root);
    CHECK(shadow.contains(vec({0.5, 0.5})) == Containment::inside);
    double const far = 0.5 * 10.0 / 9.0;
    CHECK(shadow.lower()[0] == doctest::Approx(0.5 - far));
    CHECK(shadow.upper()[1] == doctest::Approx(0.5 + far));

    // vertices are central projections of cube vertices
    Rng rng(1);
    for (int i = 0; i < 50; ++i)
    {
        Vec t(3);
        t << rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(1.5, 4);
        CubeIndex const cube(2, 2, {std::int64_t(i % 4), std::int64_t((i / 4) % 4), 3});
        auto const poly = radial_shadow({t}, cube);
        std::vector<std::array<double, 2>> pts;
        for (auto const& v : oracle::projected_vertices(Mat::Identity(3, 3), cube.corner(),
                                                        cube.scale()))
        {
            Vec const img = oracle::central_projection(t, v);
            pts.push_back({img[0], img[1]});
        }
        auto const hull = oracle::hull2(pts);
        CHECK(poly.vertices().size() == hull.size());
        for (auto const& v : poly.vertices())
            CHECK(std::abs(oracle::polygon_slack(hull, {v[0], v[1]})) < 1e-12);
    }

    // far-away sun approaches the orthogonal shadow along e_d
    auto const distant = radial_shadow({vec({0.5, 0.5, 1e3})}, root);
    auto const square = Polytope::box(vec({0, 0}), vec({1, 1}));
    CHECK(hausdorff_distance(distant, square) <= 1e-3);

    CHECK_THROWS(radial_shadow({vec({0.5, 0.5, 0.5})}, root));
    CHECK_THROWS(radial_shadow({vec({0.5, 0.5, 1.05})}, root));
    CHECK_THROWS(check_separation({vec({3, 0.5, 0.5})}));
    CHECK_NOTHROW(check_separation({vec({0.5, 0.5, -2})}));
}

TEST_CASE("co-radial intervals")
{
    auto const root = CubeIndex::root(3, 2);
    auto const [lo, hi] = coradial_interval(vec({0, 0, 0}), root);
    CHECK(lo == 0);
    CHECK(hi == doctest::Approx(std::sqrt(3.0)));
    auto const side = coradial_interval(vec({2, 0.5, 0.5}), root);
    CHECK(side.first == doctest::Approx(1.0));
    CHECK(side.second == doctest::Approx(std::sqrt(4.5)));

    Rng rng(2);
    for (int i = 0; i < 200; ++i)
    {
        Vec t(3);
        for (int a = 0; a < 3; ++a)
            t[a] = rng.uniform(-2, 3);
        CubeIndex const cube(3, 2, {std::int64_t(i % 9), std::int64_t((i / 9) % 9), 4});
        auto const got = coradial_interval(t, cube);
        auto const ref = oracle::distance_range(t, cube.corner(), cube.scale());
        CHECK(got.first == doctest::Approx(ref.first).epsilon(1e-12));
        CHECK(got.second == doctest::Approx(ref.second).epsilon(1e-12));
        std::vector<int> const col = {1, 2, 0};
        auto const child = coradial_interval(t, cube.child(col));
        CHECK(child.first >= got.first - 1e-12);
        CHECK(child.second <= got.second + 1e-12);
    }
}

TEST_CASE("radial and co-radial experiments")
{
    Vec const t = vec({0.5, 0.5, 10});
    CoverageOptions opts;
    opts.resolution = 1.0 / 64;

    Params const full = Params::equal(3, 2, 2, 1.0);
    auto const all = radial_experiment(full, 0, RadialCenter{t}, 3, opts);
    REQUIRE(all.ball);
    CHECK(std::abs(all.radius - 0.5 * 10.0 / 9.0) <= opts.resolution * std::sqrt(2.0));

    Params const line = Params::equal(3, 2, 1, 1.0);
    auto const dist = coradial_experiment(line, 0, t, 3, opts);
    auto const root = coradial_interval(t, CubeIndex::root(3, 2));
    REQUIRE(dist.ball);
    CHECK(dist.radius == doctest::Approx(0.5 * (root.second - root.first)).epsilon(1e-12));
    CHECK(dist.ball->center[0] == doctest::Approx(0.5 * (root.second + root.first)));

    Params const p = Params::equal(3, 2, 2, 0.85);
    Params const p1 = Params::equal(3, 2, 1, 0.85);
    for (std::uint64_t seed = 0; seed < 4; ++seed)
    {
        auto const real = generate(p, seed, 4);
        auto const flat = radial_experiment(real, RadialCenter{t}, 4, opts);
        auto const lazy = radial_experiment(p, seed, RadialCenter{t}, 4, opts);
        CHECK(flat.radius == lazy.radius);
        CHECK(flat.covered_cells == lazy.covered_cells);
        // audit against the exact radial shadows
        std::vector<Polytope> shadows;
        for (std::size_t i = 0; i < real.count(4); ++i)
            shadows.push_back(radial_shadow(RadialCenter{t}, real.cube_index(4, i)));
        CHECK(ball_miss_rate(flat, shadows, seed, 1000) == 0.0);

        auto const real1 = generate(p1, seed, 4);
        auto const cflat = coradial_experiment(real1, t, 4, opts);
        auto const clazy = coradial_experiment(p1, seed, t, 4, opts);
        CHECK(cflat.radius == clazy.radius);
        if (cflat.ball)
        {
            // both ends of the interval lie in some cube's distance range
            for (double x : {cflat.ball->center[0] - cflat.radius,
                             cflat.ball->center[0] + cflat.radius})
            {
                bool inside = false;
                for (std::size_t i = 0; i < real1.count(4) && !inside; ++i)
                {
                    auto const iv = coradial_interval(t, real1.cube_index(4, i));
                    inside = iv.first - 1e-12 <= x && x <= iv.second + 1e-12;
                }
                CHECK(inside);
            }
        }
    }
    CHECK_THROWS(radial_experiment(p, 0, RadialCenter{vec({0.5, 0.5, 0.5})}, 2, opts));
}

TEST_CASE("direction net")
{
    SweepOptions opts;
    opts.k = 1;
    opts.net_size = 8;
    auto const net2 = direction_net(2, opts);
    CHECK(net2.size() == 8);  // both axes already lie on the angle grid
    opts.net_size = 5;
    CHECK(direction_net(2, opts).size() == 6);
    opts.include_axes = false;
    CHECK(direction_net(2, opts).size() == 5);

    opts.include_axes = true;
    opts.net_size = 20;
    auto const lines = direction_net(3, opts);
    CHECK(lines.size() == 23);
    opts.k = 2;
    auto const planes = direction_net(3, opts);
    CHECK(planes.size() == 23);
    for (auto const& f : planes)
        CHECK(f.dim() == 2);
    opts.k = 2;
    auto const random4 = direction_net(4, opts);
    CHECK(random4.size() == std::size_t(20 + 6));
}

TEST_CASE("direction sweep")
{
    Params const p = Params::equal(2, 2, 1, 0.8);
    SweepOptions opts;
    opts.k = 1;
    opts.net_size = 64;
    opts.level = 7;
    opts.coverage.resolution = 1.0 / 256;
    int survivors = 0, complete = 0;
    for (std::uint64_t i = 0; i < 6; ++i)
    {
        auto const real = generate(p, derive_seed(12, i), 7);
        if (real.extinct_by(7))
            continue;
        ++survivors;
        auto const report = direction_sweep(p, real, opts);
        CHECK(report.entries.size() == 64);
        CHECK(report.spacing == doctest::Approx(std::sin(M_PI / 64)).epsilon(1e-9));
        bool all = true;
        for (auto const& e : report.entries)
        {
            if (!e.coordinate)
                all = all && e.ball.ball.has_value();
            REQUIRE(e.condition_b);
            CHECK(e.condition_b->verdict == Verdict::pass);
        }
        complete += all;
    }
    CHECK(survivors > 0);
    CHECK(complete >= 0.9 * survivors);
}
}
