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

#include "mperc/chart.hpp"
#include "mperc/cube.hpp"
#include "mperc/fiber.hpp"
#include "mperc/frame.hpp"
#include "mperc/hash.hpp"
#include "mperc/params.hpp"
#include "mperc/polytope.hpp"
#include "mperc/shadow.hpp"

using namespace mperc;

namespace
{
Chart hexagon_chart()
{
    Mat c = Mat::Constant(3, 1, 1 / std::sqrt(3.0));
    return chart_from_complement(c);
}

Chart diagonal_chart_2d()
{
    Mat a(2, 1);
    a << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    return select_chart(Frame::from_columns(a));
}

Vec vec(std::initializer_list<double> xs)
{
    Vec v(xs.size());
    int i = 0;
    for (double x : xs)
        v[i++] = x;
    return v;
}

//! Vertices of `poly` match `expected` as sets (tolerance 1e-12)
bool same_vertices(Polytope const& poly, std::vector<Vec> const& expected)
{
    if (poly.vertices().size() != expected.size())
        return false;
    for (auto const& e : expected)
    {
        bool found = false;
        for (auto const& v : poly.vertices())
            found = found || (v - e).norm() < 1e-12;
        if (!found)
            return false;
    }
    return true;
}

CubeIndex random_cube(Rng& rng, int d, int M, int max_level)
{
    int const n = static_cast<int>(rng.next_u64() % (max_level + 1));
    auto const side = ipow(M, n);
    std::vector<std::int64_t> coords(d);
    for (auto& c : coords)
        c = static_cast<std::int64_t>(rng.next_u64() % side);
    return CubeIndex(M, n, coords);
}

}  // namespace

TEST_SUITE("projection-geometry")
{
TEST_CASE("frames and complements")
{
    Mat a(2, 1);
    a << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    Mat const c = complement_basis(Frame::from_columns(a));
    CHECK(std::abs(std::abs(c(0, 0)) - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(c(0, 0) - c(1, 0)) < 1e-12);

    Mat const e3 = complement_basis(Frame::coordinate(3, {0, 1}));
    CHECK(std::abs(std::abs(e3(2, 0)) - 1) < 1e-12);
    CHECK(e3.topRows(2).norm() < 1e-12);

    for (std::uint64_t s = 0; s < 20; ++s)
    {
        auto const f = Frame::random(5, 2, s);
        Mat const C = complement_basis(f);
        CHECK((C.transpose() * C - Mat::Identity(3, 3)).norm() < 1e-10);
        CHECK((f.matrix().transpose() * C).norm() < 1e-10);
        CHECK((f.matrix().transpose() * f.matrix() - Mat::Identity(2, 2)).norm() < 1e-10);
    }
    Mat dependent(3, 2);
    dependent << 1, 2, 1, 2, 0, 0;
    CHECK_THROWS(Frame::orthonormalize(dependent));
    Mat not_unit(2, 1);
    not_unit << 2, 0;
    CHECK_THROWS(Frame::from_columns(not_unit));
}

TEST_CASE("frame distance")
{
    auto const e1 = Frame::coordinate(2, {0});
    auto const e2 = Frame::coordinate(2, {1});
    CHECK(frame_distance(e1, e2) == doctest::Approx(1.0));
    Mat r(2, 1);
    r << std::cos(0.1), std::sin(0.1);
    CHECK(frame_distance(e1, Frame::from_columns(r)) == doctest::Approx(std::sin(0.1)));

    auto const f = Frame::random(4, 2, 3);
    Mat rot(2, 2);
    rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
    auto const g = Frame::from_columns(f.matrix() * rot);
    CHECK(frame_distance(f, g) < 1e-12);
    auto const h = Frame::random(4, 2, 4);
    auto const j = Frame::random(4, 2, 5);
    CHECK(frame_distance(f, h) == doctest::Approx(frame_distance(h, f)));
    CHECK(frame_distance(f, j) <= frame_distance(f, h) + frame_distance(h, j) + 1e-12);
}

TEST_CASE("chart selection")
{
    auto const coord = select_chart(Frame::coordinate(4, {0, 2}));
    CHECK(coord.plane() == std::vector<int>{0, 2});
    CHECK(std::abs(coord.det_c2()) == doctest::Approx(1.0));

    auto const hex = hexagon_chart();
    CHECK(hex.plane() == std::vector<int>{0, 1});
    CHECK(std::abs(hex.det_c2()) == doctest::Approx(1 / std::sqrt(3.0)));

    for (int d = 2; d <= 5; ++d)
    {
        for (int k = 1; k < d && k <= 3; ++k)
        {
            for (std::uint64_t s = 0; s < 10; ++s)
            {
                auto const chart = select_chart(Frame::random(d, k, 100 * d + 10 * k + s));
                CHECK(std::abs(cauchy_binet_sum(chart.complement()) - 1) < 1e-10);
                CHECK(std::abs(oracle::cauchy_binet(chart.complement()) - 1) < 1e-10);
                double const bound = 1 / std::sqrt(double(oracle::subsets(d, k).size()));
                CHECK(std::abs(chart.det_c2()) >= bound - 1e-12);
                // argmax over all coordinate planes
                for (auto const& plane : oracle::subsets(d, k))
                    CHECK(std::abs(c2_block(chart.complement(), plane).determinant()) <=
                          std::abs(chart.det_c2()) + 1e-12);
            }
        }
    }
}

TEST_CASE("projection")
{
    auto const hex = hexagon_chart();
    CHECK(project_point(hex, vec({1, 1, 1})).norm() < 1e-15);
    CHECK(project_point(hex, vec({0, 0, 0})).norm() == 0.0);
    CHECK((project_point(hex, vec({0.3, -0.2, 0})) - vec({0.3, -0.2})).norm() < 1e-15);
    CHECK((hex.n() - vec({1, 1})).norm() < 1e-12);

    for (std::uint64_t s = 0; s < 30; ++s)
    {
        int const d = 3 + int(s % 3);
        int const k = 1 + int(s % (d - 1));
        auto const chart = select_chart(Frame::random(d, k, s));
        Rng rng(s);
        Vec x(d);
        for (int a = 0; a < d; ++a)
            x[a] = rng.uniform(-2, 2);
        Vec const z = project_point(chart, x);
        CHECK((z - oracle::project(chart.complement(), chart.plane(), x)).norm() < 1e-10);
        // the kernel is the fiber direction span
        Vec const back = chart.complement() * Vec::Ones(d - k);
        CHECK(project_point(chart, back).norm() < 1e-10);
    }
}

TEST_CASE("delta regions")
{
    auto const coord = select_chart(Frame::coordinate(3, {0, 1}));
    CHECK(same_vertices(delta_region(coord), {vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})}));

    auto const hex = hexagon_chart();
    CHECK(same_vertices(delta_region(hex), {vec({1, 1}), vec({1, 0}), vec({0, -1}),
                                            vec({-1, -1}), vec({-1, 0}), vec({0, 1})}));
    auto const diag = diagonal_chart_2d();
    CHECK(delta_region(diag).lower()[0] == doctest::Approx(-1));
    CHECK(delta_region(diag).upper()[0] == doctest::Approx(1));

    // Delta is the hull of the projected cube vertices for random charts
    for (std::uint64_t s = 0; s < 10; ++s)
    {
        auto const chart = select_chart(Frame::random(4, 2, s));
        Mat const P = oracle::projection_matrix(chart.complement(), chart.plane());
        Rng rng(s + 50);
        for (int i = 0; i < 200; ++i)
        {
            Vec z(2);
            z << rng.uniform(-3, 3), rng.uniform(-3, 3);
            double const slack = oracle::shadow_slack(P, Vec::Zero(4), 1.0, z);
            if (std::abs(slack) < 1e-9)
                continue;
            CHECK((delta_region(chart).contains(z) != Containment::outside) == (slack > 0));
        }
    }
}

TEST_CASE("containment classes")
{
    auto const hex = hexagon_chart();
    auto const& delta = delta_region(hex);
    CHECK(delta.contains(vec({0, 0})) == Containment::inside);
    CHECK(delta.contains(vec({1, -1})) == Containment::outside);
    CHECK(delta.contains(vec({1, 1})) == Containment::boundary);
    CHECK(delta.contains(vec({0.5, -0.5})) == Containment::boundary);
}

TEST_CASE("cube shadows")
{
    auto const hex = hexagon_chart();
    auto const root = shadow_of_cube(hex, CubeIndex::root(3, 2));
    CHECK(same_vertices(root, delta_region(hex).vertices()));

    CubeIndex const a(2, 1, {1, 0, 0});
    auto const sh = shadow_of_cube(hex, a);
    std::vector<Vec> expected;
    for (auto const& v : delta_region(hex).vertices())
        expected.push_back(0.5 * v + vec({0.5, 0}));
    CHECK(same_vertices(sh, expected));

    // every shadow is the hull of its projected vertices and nests in Delta
    Rng rng(77);
    for (int i = 0; i < 200; ++i)
    {
        auto const chart = select_chart(Frame::random(3, 2, 1000 + i));
        auto const cube = random_cube(rng, 3, 3, 3);
        auto const poly = shadow_of_cube(chart, cube);
        Mat const P = oracle::projection_matrix(chart.complement(), chart.plane());
        for (auto const& v : poly.vertices())
        {
            CHECK(std::abs(oracle::shadow_slack(P, cube.corner(), cube.scale(), v)) < 1e-10);
            CHECK(delta_region(chart).contains(v) != Containment::outside);
        }
    }
}

TEST_CASE("psi")
{
    auto const diag = diagonal_chart_2d();
    auto const a = CubeIndex::from_digits(2, {{1, 1, 0}, {1, 0, 1}});
    CHECK(psi(diag, a, vec({0.2}))[0] == doctest::Approx(0.6));

    Rng rng(5);
    for (int i = 0; i < 100; ++i)
    {
        auto const chart = select_chart(Frame::random(4, 2, 300 + i));
        auto const cube = random_cube(rng, 4, 2, 4);
        CHECK(psi(chart, cube, project_point(chart, cube.corner())).norm() < 1e-12);
        Vec y(4);
        for (int c = 0; c < 4; ++c)
            y[c] = rng.uniform();
        Vec const img = homothety_params(cube).apply(y);
        CHECK((psi(chart, cube, project_point(chart, img)) - project_point(chart, y)).norm() <
              1e-12 * std::pow(2.0, cube.level()) + 1e-12);
    }
}

TEST_CASE("homothetic regions")
{
    auto const hex = hexagon_chart();
    CHECK(hex.center().norm() < 1e-15);
    CHECK(same_vertices(homothetic_region(hex, 1.0), delta_region(hex).vertices()));
    std::vector<Vec> halved;
    for (auto const& v : delta_region(hex).vertices())
        halved.push_back(0.5 * v);
    CHECK(same_vertices(homothetic_region(hex, 0.5), halved));

    auto const chart = select_chart(Frame::random(3, 2, 8));
    auto const inner = homothetic_region(chart, 0.6);
    auto const outer = homothetic_region(chart, 0.8);
    for (auto const& v : inner.vertices())
        CHECK(outer.contains(v) == Containment::inside);
}

TEST_CASE("membership oracles agree")
{
    Rng rng(2026);
    int disagreements = 0, checked = 0;
    for (int i = 0; i < 1500; ++i)
    {
        int const d = 3 + i % 2;
        int const k = 1 + (i / 2) % (d - 1);
        auto const chart = select_chart(Frame::random(d, k, 5000 + i));
        auto const cube = random_cube(rng, d, 2, 4);
        auto const shadow = shadow_of_cube(chart, cube);
        Vec z = shadow.centroid_of_vertices();
        for (int a = 0; a < k; ++a)
            z[a] += rng.uniform(-1, 1) * cube.scale() * 1.2;
        double const slack = shadow.min_slack(z);
        if (std::abs(slack) <= 1e-6)
            continue;
        ++checked;
        bool const by_faces = slack > 0;
        bool const by_fm = membership_oracle(chart, cube, z);
        bool const by_search = fiber_search(chart, cube, z, 1000, i);
        disagreements += (by_faces != by_fm) + (by_faces != by_search);
        if (k <= 2)
        {
            Mat const P = oracle::projection_matrix(chart.complement(), chart.plane());
            double const ref = oracle::shadow_slack(P, cube.corner(), cube.scale(), z);
            disagreements += (ref > 0) != by_faces;
        }
    }
    CHECK(checked > 1000);
    CHECK(disagreements == 0);

    // a projected cube point is always found; points outside Delta never are
    auto const hex = hexagon_chart();
    CubeIndex const cube(2, 2, {1, 2, 3});
    Vec y(3);
    y << 0.3, 0.55, 0.8;
    CHECK(membership_oracle(hex, cube, project_point(hex, homothety_params(cube).apply(y))));
    CHECK_FALSE(membership_oracle(hex, cube, vec({1.5, 0})));
    CHECK_FALSE(membership_oracle(hex, CubeIndex::root(3, 2), vec({1, -1})));
}

TEST_CASE("fiber volume")
{
    auto const diag = diagonal_chart_2d();
    for (double z : {-1.0, -0.6, -0.1, 0.0, 0.35, 0.9, 1.0})
        CHECK(fiber_volume(diag, vec({z})) == doctest::Approx(1 - std::abs(z)).epsilon(1e-12));
    auto const hex = hexagon_chart();
    CHECK(fiber_volume(hex, vec({0, 0})) == doctest::Approx(1.0));
    for (auto const& v : delta_region(hex).vertices())
        CHECK(std::abs(fiber_volume(hex, v)) < 1e-12);
    CHECK(fiber_volume(hex, vec({3, 3})) == 0.0);

    // exact d-k <= 2 volumes against a Monte Carlo oracle over the u box
    for (std::uint64_t s = 0; s < 4; ++s)
    {
        int const d = 3 + int(s % 2);
        int const k = d - 2;
        auto const chart = select_chart(Frame::random(d, k, 900 + s));
        Rng rng(s);
        Vec const z = delta_region(chart).centroid_of_vertices();
        int hits = 0;
        int const samples = 200000;
        for (int i = 0; i < samples; ++i)
        {
            Vec u(d - k);
            for (int a = 0; a < d - k; ++a)
                u[a] = rng.uniform();
            Vec const x1 = z + chart.n() * u;
            hits += (x1.array() >= 0).all() && (x1.array() <= 1).all();
        }
        double const p = double(hits) / samples;
        double const se = std::sqrt(p * (1 - p) / samples);
        CHECK(std::abs(fiber_volume(chart, z) - p) < 5 * se + 1e-12);
    }

    // sampled volumes for d - k = 3 report a standard error
    auto const chart = select_chart(Frame::random(4, 1, 3));
    auto const est = fiber_volume_estimate(chart, chart.center());
    CHECK_FALSE(est.exact);
    CHECK(est.std_error < 0.02);
    CHECK(est.value > 0);
}

TEST_CASE("polytopes")
{
    std::vector<Vec> square = {vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1}),
                               vec({0.5, 0.5}), vec({1, 0.5})};
    auto const p = Polytope::hull(2, square);
    CHECK(p.vertices().size() == 4);
    CHECK(p.measure() == doctest::Approx(1.0));
    CHECK(p.diameter() == doctest::Approx(std::sqrt(2.0)));
    CHECK(p.distance(vec({2, 0.5})) == doctest::Approx(1.0));
    CHECK_THROWS(Polytope::hull(2, {vec({0, 0}), vec({1, 1}), vec({2, 2})}));
    auto const q = p.affine(2, vec({1, 1}));
    CHECK(q.measure() == doctest::Approx(4.0));
    CHECK(hausdorff_distance(p, q) == doctest::Approx(std::sqrt(8.0)));

    std::vector<Vec> cube;
    for (int v = 0; v < 8; ++v)
        cube.push_back(vec({double(v & 1), double((v >> 1) & 1), double((v >> 2) & 1)}));
    cube.push_back(vec({0.5, 0.5, 0.5}));
    auto const c3 = Polytope::hull(3, cube);
    CHECK(c3.vertices().size() == 8);
    CHECK(c3.faces().size() == 6);
    CHECK(c3.contains(vec({0.5, 0.5, 0.5})) == Containment::inside);
    CHECK(c3.contains(vec({1, 0.5, 0.5})) == Containment::boundary);
    CHECK(c3.contains(vec({1.1, 0.5, 0.5})) == Containment::outside);
}
}
