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

#include "mperc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mperc
{
namespace
{
double extent(std::vector<Vec> const& points)
{
    double scale = 0;
    for (auto const& p : points)
        scale = std::max(scale, p.cwiseAbs().maxCoeff());
    return std::max(scale, 1.0);
}

double cross(Vec const& o, Vec const& a, Vec const& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Vec> hull_2d(std::vector<Vec> pts, double eps)
{
    std::sort(pts.begin(), pts.end(), [](Vec const& a, Vec const& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    // Andrew's monotone chain; drops collinear points
    std::vector<Vec> h(2 * pts.size());
    std::size_t n = 0;
    for (auto const& p : pts)
    {
        while (n >= 2 && cross(h[n - 2], h[n - 1], p) <= eps)
            --n;
        h[n++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = n + 1; i-- > 0;)
    {
        while (n >= lower && cross(h[n - 2], h[n - 1], pts[i]) <= eps)
            --n;
        h[n++] = pts[i];
    }
    h.resize(n > 0 ? n - 1 : 0);
    // start from the lowest, then leftmost, vertex
    auto start = std::min_element(h.begin(), h.end(), [](auto& a, auto& b) {
        return a[1] < b[1] || (a[1] == b[1] && a[0] < b[0]);
    });
    std::rotate(h.begin(), start, h.end());
    return h;
}

Vec cross3(Vec const& a, Vec const& b)
{
    Vec c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0];
    return c;
}

}  // namespace

Polytope::Polytope(int dim, std::vector<Vec> vertices, std::vector<Halfspace> faces)
    : dim_(dim), vertices_(std::move(vertices)), faces_(std::move(faces))
{
    lower_ = Vec::Constant(dim_, std::numeric_limits<double>::infinity());
    upper_ = -lower_;
    for (auto const& v : vertices_)
    {
        lower_ = lower_.cwiseMin(v);
        upper_ = upper_.cwiseMax(v);
    }
}

Polytope Polytope::hull(int dim, std::vector<Vec> const& points)
{
    if (dim < 1 || dim > 3)
        throw UnsupportedDimension("Polytope::hull: only 1 <= k <= 3");
    if (points.empty())
        throw std::invalid_argument("Polytope::hull: no points");
    double const scale = extent(points);

    if (dim == 1)
    {
        double lo = points[0][0];
        double hi = lo;
        for (auto const& p : points)
        {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        if (hi - lo <= 1e-14 * scale)
            throw std::invalid_argument("Polytope::hull: degenerate interval");
        std::vector<Vec> verts{Vec::Constant(1, lo), Vec::Constant(1, hi)};
        std::vector<Halfspace> faces{{Vec::Constant(1, -1.0), -lo},
                                     {Vec::Constant(1, 1.0), hi}};
        return Polytope(1, std::move(verts), std::move(faces));
    }

    if (dim == 2)
    {
        auto verts = hull_2d(points, 1e-14 * scale * scale);
        if (verts.size() < 3)
            throw std::invalid_argument("Polytope::hull: degenerate polygon");
        std::vector<Halfspace> faces;
        for (std::size_t i = 0; i < verts.size(); ++i)
        {
            Vec const& a = verts[i];
            Vec const& b = verts[(i + 1) % verts.size()];
            Vec n(2);
            n << b[1] - a[1], a[0] - b[0];
            n /= n.norm();
            faces.push_back({n, n.dot(a)});
        }
        return Polytope(2, std::move(verts), std::move(faces));
    }

    // k = 3: enumerate supporting planes through point triples
    double const tol = 1e-12 * scale;
    std::vector<Vec> pts;
    for (auto const& p : points)
    {
        bool dup = std::any_of(pts.begin(), pts.end(), [&](Vec const& q) {
            return (q - p).cwiseAbs().maxCoeff() <= tol;
        });
        if (!dup)
            pts.push_back(p);
    }
    std::vector<Halfspace> faces;
    auto const n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            for (std::size_t l = j + 1; l < n; ++l)
            {
                Vec normal = cross3(pts[j] - pts[i], pts[l] - pts[i]);
                double const len = normal.norm();
                if (len <= 1e-10 * scale * scale)
                    continue;
                normal /= len;
                double offset = normal.dot(pts[i]);
                bool below = true;
                bool above = true;
                for (auto const& p : pts)
                {
                    double const s = normal.dot(p) - offset;
                    below = below && s <= tol;
                    above = above && s >= -tol;
                }
                if (!below && !above)
                    continue;
                if (!below)
                {
                    normal = -normal;
                    offset = -offset;
                }
                bool dup = std::any_of(faces.begin(), faces.end(), [&](auto& f) {
                    return (f.normal - normal).norm() <= 1e-9
                           && std::abs(f.offset - offset) <= tol;
                });
                if (!dup)
                    faces.push_back({normal, offset});
            }
        }
    }
    if (faces.size() < 4)
        throw std::invalid_argument("Polytope::hull: degenerate polyhedron");
    std::vector<Vec> verts;
    for (auto const& p : pts)
    {
        Mat active(0, 3);
        for (auto const& f : faces)
        {
            if (std::abs(f.normal.dot(p) - f.offset) <= tol)
            {
                active.conservativeResize(active.rows() + 1, 3);
                active.row(active.rows() - 1) = f.normal.transpose();
            }
        }
        if (active.rows() >= 3
            && Eigen::FullPivLU<Mat>(active).rank() == 3)
            verts.push_back(p);
    }
    return Polytope(3, std::move(verts), std::move(faces));
}

Polytope Polytope::box(Vec const& lo, Vec const& hi)
{
    int const k = static_cast<int>(lo.size());
    if (k < 1 || k > 3)
        throw UnsupportedDimension("Polytope::box: only 1 <= k <= 3");
    std::vector<Vec> corners;
    for (int mask = 0; mask < (1 << k); ++mask)
    {
        Vec c(k);
        for (int r = 0; r < k; ++r)
            c[r] = (mask >> r & 1) ? hi[r] : lo[r];
        corners.push_back(c);
    }
    return hull(k, corners);
}

Polytope Polytope::affine(double scale, Vec const& shift) const
{
    if (!(scale > 0))
        throw std::invalid_argument("Polytope::affine: scale must be positive");
    std::vector<Vec> verts;
    verts.reserve(vertices_.size());
    for (auto const& v : vertices_)
        verts.push_back(scale * v + shift);
    std::vector<Halfspace> faces;
    faces.reserve(faces_.size());
    for (auto const& f : faces_)
        faces.push_back({f.normal, scale * f.offset + f.normal.dot(shift)});
    return Polytope(dim_, std::move(verts), std::move(faces));
}

Polytope Polytope::scaled_about(Vec const& center, double lambda) const
{
    return affine(lambda, (1.0 - lambda) * center);
}

double Polytope::min_slack(Vec const& z) const
{
    double slack = std::numeric_limits<double>::infinity();
    for (auto const& f : faces_)
        slack = std::min(slack, f.offset - f.normal.dot(z));
    return slack;
}

Containment Polytope::contains(Vec const& z, double tol) const
{
    double const slack = min_slack(z);
    if (slack > tol)
        return Containment::inside;
    if (slack < -tol)
        return Containment::outside;
    return Containment::boundary;
}

Vec Polytope::centroid_of_vertices() const
{
    Vec c = Vec::Zero(dim_);
    for (auto const& v : vertices_)
        c += v;
    return c / static_cast<double>(vertices_.size());
}

double Polytope::diameter() const
{
    double diam = 0;
    for (auto const& a : vertices_)
        for (auto const& b : vertices_)
            diam = std::max(diam, (a - b).norm());
    return diam;
}

double Polytope::distance(Vec const& z) const
{
    if (dim_ == 1)
        return std::max({lower_[0] - z[0], z[0] - upper_[0], 0.0});
    if (dim_ != 2)
        throw UnsupportedDimension("Polytope::distance: only k <= 2");
    if (min_slack(z) >= 0)
        return 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
    {
        Vec const& a = vertices_[i];
        Vec const& b = vertices_[(i + 1) % vertices_.size()];
        Vec ab = b - a;
        double t = std::clamp((z - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (a + t * ab - z).norm());
    }
    return best;
}

double Polytope::measure() const
{
    if (dim_ == 1)
        return upper_[0] - lower_[0];
    if (dim_ != 2)
        throw UnsupportedDimension("Polytope::measure: only k <= 2");
    double area = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
    {
        Vec const& a = vertices_[i];
        Vec const& b = vertices_[(i + 1) % vertices_.size()];
        area += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * area;
}

double hausdorff_distance(Polytope const& a, Polytope const& b)
{
    // d(., B) is convex, so the sup over A is attained at a vertex of A
    double h = 0;
    for (auto const& v : a.vertices())
        h = std::max(h, b.distance(v));
    for (auto const& v : b.vertices())
        h = std::max(h, a.distance(v));
    return h;
}

}  // namespace mperc
