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

#pragma once

// Reference implementations used to check the library. They share no code
// with src/ beyond the plain data types and favour enumeration over speed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle
{
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

//---------------------------------------------------------------------------//
// Hashing

inline std::uint64_t splitmix(std::uint64_t z)
{
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ull;

//! Retention of a node given its path of child table indices from the root
inline bool retained(std::uint64_t seed, std::vector<std::uint64_t> const& path,
                     std::vector<double> const& table)
{
    std::uint64_t key = splitmix(seed + gamma);
    bool keep = true;
    for (auto c : path)
    {
        key = splitmix(key + gamma * (c + 1));
        double const u = std::ldexp(static_cast<double>(key >> 11), -53);
        keep = keep && u < table[c];
    }
    return keep;
}

//! Digits of table index `idx` in base M, most significant first
inline std::vector<int> digits(std::size_t idx, int d, int M)
{
    std::vector<int> out(d);
    for (int a = d - 1; a >= 0; --a)
    {
        out[a] = static_cast<int>(idx % M);
        idx /= M;
    }
    return out;
}

/*!
 * Retained level-n cubes by brute force: every cube of the level is tested
 * through its full ancestor path. Sorted lexicographically.
 */
inline std::vector<std::vector<std::int64_t>> retained_cubes(
    std::uint64_t seed, std::vector<double> const& table, int d, int M, int n)
{
    std::int64_t side = 1;
    for (int i = 0; i < n; ++i)
        side *= M;
    std::int64_t total = 1;
    for (int a = 0; a < d; ++a)
        total *= side;
    std::vector<std::vector<std::int64_t>> out;
    for (std::int64_t flat = 0; flat < total; ++flat)
    {
        std::vector<std::int64_t> coords(d);
        std::int64_t rest = flat;
        for (int a = d - 1; a >= 0; --a)
        {
            coords[a] = rest % side;
            rest /= side;
        }
        std::vector<std::uint64_t> path;
        std::int64_t scale = side / M;
        for (int level = 1; level <= n; ++level, scale = scale / M)
        {
            std::uint64_t c = 0;
            for (int a = 0; a < d; ++a)
                c = c * M + static_cast<std::uint64_t>((coords[a] / std::max<std::int64_t>(scale, 1)) % M);
            path.push_back(c);
        }
        if (retained(seed, path, table))
            out.push_back(coords);
    }
    return out;
}

//---------------------------------------------------------------------------//
// Branching

//! Least fixed point of the offspring generating function by bisection
inline double extinction_probability(std::vector<double> const& table)
{
    auto g = [&](double s) {
        double v = 1;
        for (double p : table)
            v *= 1 - p + p * s;
        return v;
    };
    double mean = 0;
    for (double p : table)
        mean += p;
    if (mean <= 1)
        return 1;
    // g(s) - s is positive at 0 and negative just below 1
    double lo = 0, hi = 1 - 1e-9;
    for (int it = 0; it < 200; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        (g(mid) - mid > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

//---------------------------------------------------------------------------//
// Geometry

//! All k-subsets of {0..n-1}, lexicographic
inline std::vector<std::vector<int>> subsets(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k)
        {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i)
        {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

//! sum over k-sets I of det(C restricted to the rows outside I)^2
inline double cauchy_binet(Mat const& C)
{
    int const d = static_cast<int>(C.rows());
    int const m = static_cast<int>(C.cols());
    double sum = 0;
    for (auto const& rows : subsets(d, m))
    {
        Mat sub(m, m);
        for (int i = 0; i < m; ++i)
            sub.row(i) = C.row(rows[i]);
        double const det = sub.determinant();
        sum += det * det;
    }
    return sum;
}

/*!
 * Projection onto the coordinate plane `plane` along span(C): the unique y
 * supported on `plane` with x - y in span(C). Solved as one square system.
 */
inline Vec project(Mat const& C, std::vector<int> const& plane, Vec const& x)
{
    int const d = static_cast<int>(x.size());
    int const k = static_cast<int>(plane.size());
    Mat A = Mat::Zero(d, d);
    for (int i = 0; i < k; ++i)
        A(plane[i], i) = 1;
    A.rightCols(d - k) = C;
    Vec const sol = A.fullPivLu().solve(x);
    return sol.head(k);
}

//! 2D convex hull (counter-clockwise, collinear points dropped)
inline std::vector<std::array<double, 2>> hull2(std::vector<std::array<double, 2>> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    auto cross = [](auto const& o, auto const& a, auto const& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * pts.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        while (n >= 2 && cross(h[n - 2], h[n - 1], pts[i]) <= 1e-15)
            --n;
        h[n++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = n + 1; i-- > 0;)
    {
        while (n >= lower && cross(h[n - 2], h[n - 1], pts[i]) <= 1e-15)
            --n;
        h[n++] = pts[i];
    }
    h.resize(n - 1);
    return h;
}

//! Signed distance of z inside the polygon (min over edges); >= -tol means inside
inline double polygon_slack(std::vector<std::array<double, 2>> const& poly,
                            std::array<double, 2> const& z)
{
    double slack = INFINITY;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        auto const& a = poly[i];
        auto const& b = poly[(i + 1) % poly.size()];
        double const ex = b[0] - a[0], ey = b[1] - a[1];
        double const len = std::hypot(ex, ey);
        // left of a->b is inside for counter-clockwise order
        slack = std::min(slack, (ex * (z[1] - a[1]) - ey * (z[0] - a[0])) / len);
    }
    return slack;
}

//! Images of the 2^d vertices of corner + [0, side]^d under a k x d map P
inline std::vector<Vec> projected_vertices(Mat const& P, Vec const& corner, double side)
{
    int const d = static_cast<int>(corner.size());
    std::vector<Vec> out;
    for (int v = 0; v < (1 << d); ++v)
    {
        Vec x = corner;
        for (int a = 0; a < d; ++a)
            x[a] += ((v >> a) & 1) * side;
        out.push_back(P * x);
    }
    return out;
}

/*!
 * Slack of z in the hull of the projected cube vertices (k = 1 or 2):
 * positive inside, negative outside, in the units of z.
 */
inline double shadow_slack(Mat const& P, Vec const& corner, double side, Vec const& z)
{
    auto const verts = projected_vertices(P, corner, side);
    if (P.rows() == 1)
    {
        double lo = INFINITY, hi = -INFINITY;
        for (auto const& v : verts)
        {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return std::min(z[0] - lo, hi - z[0]);
    }
    std::vector<std::array<double, 2>> pts;
    for (auto const& v : verts)
        pts.push_back({v[0], v[1]});
    return polygon_slack(hull2(pts), {z[0], z[1]});
}

//! Matrix of the linear projection x -> x1 - N x2 (k x d)
inline Mat projection_matrix(Mat const& C, std::vector<int> const& plane)
{
    int const d = static_cast<int>(C.rows());
    Mat P(plane.size(), d);
    for (int a = 0; a < d; ++a)
    {
        Vec e = Vec::Zero(d);
        e[a] = 1;
        P.col(a) = project(C, plane, e);
    }
    return P;
}

//! Unit-cube corner + [0,side]^d visiting helper over all cubes of a level
inline void for_each_cube(int d, int M, int n,
                          std::function<void(std::vector<std::int64_t> const&)> const& visit)
{
    std::int64_t side = 1;
    for (int i = 0; i < n; ++i)
        side *= M;
    std::vector<std::int64_t> c(d, 0);
    while (true)
    {
        visit(c);
        int a = d - 1;
        while (a >= 0 && ++c[a] == side)
            c[a--] = 0;
        if (a < 0)
            return;
    }
}

/*!
 * Number of level-n cubes of the unit cube (d = 3) that meet the main
 * diagonal, i.e. whose integer coordinates satisfy max - min <= 1. These
 * are the cubes whose hexagonal shadow contains the origin.
 */
inline std::size_t diagonal_cubes(int M, int n)
{
    std::size_t count = 0;
    for_each_cube(3, M, n, [&](std::vector<std::int64_t> const& c) {
        auto const [lo, hi] = std::minmax({c[0], c[1], c[2]});
        if (hi - lo <= 1)
            ++count;
    });
    return count;
}

//! Closed distance interval from t to corner + [0, side]^d by vertex scan
//! (max) and coordinate clamping (min)
inline std::pair<double, double> distance_range(Vec const& t, Vec const& corner, double side)
{
    int const d = static_cast<int>(t.size());
    double hi = 0;
    for (int v = 0; v < (1 << d); ++v)
    {
        double sq = 0;
        for (int a = 0; a < d; ++a)
        {
            double const x = corner[a] + ((v >> a) & 1) * side;
            sq += (x - t[a]) * (x - t[a]);
        }
        hi = std::max(hi, std::sqrt(sq));
    }
    double sq = 0;
    for (int a = 0; a < d; ++a)
    {
        double const x = std::clamp(t[a], corner[a], corner[a] + side);
        sq += (x - t[a]) * (x - t[a]);
    }
    return {std::sqrt(sq), hi};
}

//! Central projection from t onto x_d = 0 (first d-1 coordinates)
inline Vec central_projection(Vec const& t, Vec const& x)
{
    int const d = static_cast<int>(t.size());
    double const s = t[d - 1] / (t[d - 1] - x[d - 1]);
    return (t + s * (x - t)).head(d - 1);
}

//---------------------------------------------------------------------------//
// Condition A on the diagonal chart

/*!
 * Exact F^r 1_{l1 Delta}(z) for d=2, M=2, k=1 on the diagonal chart with
 * equal p: Pi(x) = x0 - x1 and level-r cubes with a0 - a1 = j (there are
 * 2^r - |j| of them) cover z with psi in [-l1, l1] iff |z 2^r - j| <= l1.
 */
inline double diagonal_F_indicator(double p, int r, double l1, double z)
{
    double const L = std::ldexp(1.0, r);
    double count = 0;
    for (int j = -int(L) + 1; j < int(L); ++j)
    {
        if (std::abs(z * L - j) <= l1 + 1e-12)
            count += L - std::abs(j);
    }
    return std::pow(p, r) * count;
}

//! min of diagonal_F_indicator over the open interval (-l2, l2)
inline double diagonal_certificate_margin(double p, int r, double l1, double l2)
{
    double const L = std::ldexp(1.0, r);
    std::vector<double> breaks = {-l2, l2};
    for (int j = -int(L); j <= int(L); ++j)
    {
        for (double b : {(j - l1) / L, (j + l1) / L})
        {
            if (b > -l2 && b < l2)
                breaks.push_back(b);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    double lowest = INFINITY;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double const mid = 0.5 * (breaks[i] + breaks[i + 1]);
        lowest = std::min(lowest, diagonal_F_indicator(p, r, l1, mid));
    }
    return lowest - 2;
}

}  // namespace oracle
