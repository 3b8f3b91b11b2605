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

#include "mperc/coverage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mperc/hash.hpp"

namespace mperc
{
namespace
{
constexpr double far_away = 1e30;
constexpr std::size_t max_cells = std::size_t{1} << 27;

struct IndexRange
{
    int lo[3];
    int hi[3];
    bool empty;
};

//! Lattice indices i with origin + step*(i + shift) in [lo - tol, hi + tol]
IndexRange lattice_range(ConvexShape const& s, Vec const& origin, double step,
                         double shift, std::vector<int> const& extent, double tol)
{
    IndexRange r{};
    r.empty = false;
    for (int a = 0; a < s.dim; ++a)
    {
        double const lo = (s.lo[a] - tol - origin[a]) / step - shift;
        double const hi = (s.hi[a] + tol - origin[a]) / step - shift;
        r.lo[a] = static_cast<int>(std::max(0.0, std::ceil(lo)));
        r.hi[a] = static_cast<int>(
            std::min(static_cast<double>(extent[a] - 1), std::floor(hi)));
        if (r.lo[a] > r.hi[a])
            r.empty = true;
    }
    return r;
}

std::vector<std::size_t> strides_of(std::vector<int> const& extent)
{
    std::vector<std::size_t> strides(extent.size());
    std::size_t s = 1;
    for (int a = static_cast<int>(extent.size()) - 1; a >= 0; --a)
    {
        strides[a] = s;
        s *= static_cast<std::size_t>(extent[a]);
    }
    return strides;
}

/*!
 * Mark every lattice point of `extent` (offset by `shift` cells) inside s.
 * With query set, mark nothing and report whether some unmarked lattice
 * point lies inside s.
 */
bool rasterize(ConvexShape const& s, Vec const& origin, double step, double shift,
               std::vector<int> const& extent,
               std::vector<std::size_t> const& strides, double tol,
               std::vector<std::uint8_t>& marks, bool query = false)
{
    auto const r = lattice_range(s, origin, step, shift, extent, tol);
    if (r.empty)
        return false;
    int const k = s.dim;
    double x[3];
    int idx[3];
    for (int a = 0; a < k; ++a)
        idx[a] = r.lo[a];
    while (true)
    {
        std::size_t flat = 0;
        for (int a = 0; a < k; ++a)
        {
            flat += strides[a] * idx[a];
            x[a] = origin[a] + step * (idx[a] + shift);
        }
        if (!marks[flat] && s.contains(x, tol))
        {
            if (query)
                return true;
            marks[flat] = 1;
        }
        int a = k - 1;
        while (a >= 0 && ++idx[a] > r.hi[a])
        {
            idx[a] = r.lo[a];
            --a;
        }
        if (a < 0)
            break;
    }
    return false;
}

//! 1-D squared distance transform of f along a strided line
void edt_line(double* f, std::size_t n, std::size_t stride, std::vector<double>& d,
              std::vector<int>& v, std::vector<double>& z, std::vector<double>& g)
{
    for (std::size_t i = 0; i < n; ++i)
        g[i] = f[i * stride];
    int k = 0;
    v[0] = 0;
    z[0] = -far_away;
    z[1] = far_away;
    for (int q = 1; q < static_cast<int>(n); ++q)
    {
        double s;
        while (true)
        {
            int const p = v[k];
            s = ((g[q] + double(q) * q) - (g[p] + double(p) * p)) / (2.0 * (q - p));
            if (s <= z[k] && k > 0)
                --k;
            else
                break;
        }
        if (s <= z[k])
        {
            // k == 0: q dominates the whole line so far
            v[0] = q;
            z[0] = -far_away;
            z[1] = far_away;
            continue;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = far_away;
    }
    k = 0;
    for (int q = 0; q < static_cast<int>(n); ++q)
    {
        while (z[k + 1] < q)
            ++k;
        double const dq = q - v[k];
        d[q] = std::min(far_away, dq * dq + g[v[k]]);
    }
    for (std::size_t i = 0; i < n; ++i)
        f[i * stride] = d[i];
}


//! Closed parameter interval of the line p + s u inside {x : n.x <= b + slack}
bool clip_line(double const* n, double b, double const* p, double const* u, double slack,
               double& s0, double& s1)
{
    double const np = n[0] * p[0] + n[1] * p[1] - b - slack;
    double const nu = n[0] * u[0] + n[1] * u[1];
    if (std::abs(nu) < 1e-15)
        return np <= 0;
    double const t = -np / nu;
    if (nu > 0)
        s1 = std::min(s1, t);
    else
        s0 = std::max(s0, t);
    return s0 <= s1;
}

/*!
 * Exact uncovered points of a 2D shadow union, one grid cell at a time.
 *
 * A cell inside a single shadow is fully covered. Otherwise the nearest
 * uncovered point of the cell lies on a shadow edge, so each edge is pushed
 * outward by `push` and the pieces no shadow covers are kept. Cells are
 * analysed on demand and cached.
 */
class ExactCoverage2d
{
  public:
    ExactCoverage2d(ShapeStream const& shapes, GridSpec const& grid, double feature_size)
        : shapes_(shapes), grid_(grid), slot_(grid.size(), -1), by_cell_(grid.size())
    {
        if (feature_size > grid.h)
            block_ = std::clamp(static_cast<int>(4 * feature_size / grid.h), 1, 8);
        loaded_.assign(static_cast<std::size_t>((grid.shape[0] + block_ - 1) / block_) *
                           ((grid.shape[1] + block_ - 1) / block_),
                       0);
    }

    //! Distance from c to the nearest uncovered point, capped at r0
    double radius(Vec const& c, double r0)
    {
        double const h = grid_.h;
        int lo[2], hi[2];
        for (int a = 0; a < 2; ++a)
        {
            lo[a] = std::max(
                0, static_cast<int>(std::floor((c[a] - r0 - grid_.origin[a]) / h + 0.5)));
            hi[a] = std::min(grid_.shape[a] - 1, static_cast<int>(std::floor(
                                                      (c[a] + r0 - grid_.origin[a]) / h + 0.5)));
        }
        std::vector<std::pair<double, std::size_t>> cells;
        for (int i = lo[0]; i <= hi[0]; ++i)
        {
            for (int j = lo[1]; j <= hi[1]; ++j)
            {
                double box[4];
                cell_box(i, j, box);
                double const dx = std::max({box[0] - c[0], 0.0, c[0] - box[1]});
                double const dy = std::max({box[2] - c[1], 0.0, c[1] - box[3]});
                cells.emplace_back(std::hypot(dx, dy),
                                   static_cast<std::size_t>(i) * grid_.shape[1] + j);
            }
        }
        std::sort(cells.begin(), cells.end());

        double best = r0;
        for (auto const& [dist, flat] : cells)
        {
            if (dist >= best)
                break;
            for (auto const& g : gaps(flat))
            {
                double const ux = g[2] - g[0], uy = g[3] - g[1];
                double const len2 = ux * ux + uy * uy;
                double t = 0;
                if (len2 > 0)
                    t = std::clamp(((c[0] - g[0]) * ux + (c[1] - g[1]) * uy) / len2, 0.0, 1.0);
                best = std::min(best, std::hypot(g[0] + t * ux - c[0], g[1] + t * uy - c[1]));
            }
        }
        return best;
    }

  private:
    static constexpr double push = 1e-10;
    static constexpr double min_gap = 1e-12;

    ShapeStream const& shapes_;
    GridSpec const& grid_;
    std::vector<int> slot_;
    std::vector<std::vector<std::array<double, 4>>> gaps_;
    bool flat_ = false;
    std::vector<ConvexShape> store_;
    std::vector<std::vector<std::uint32_t>> by_cell_;

    //! cells per block side; one stream pass serves a whole block
    int block_ = 1;
    std::vector<std::uint8_t> loaded_;

    void add(ConvexShape const& s, double const* clip)
    {
        double const h = grid_.h;
        auto cell = [&](double x, int a) {
            return std::clamp(static_cast<int>(std::floor((x - grid_.origin[a]) / h + 0.5)), 0,
                              grid_.shape[a] - 1);
        };
        auto const id = static_cast<std::uint32_t>(store_.size());
        store_.push_back(s);
        for (int i = cell(std::max(s.lo[0], clip[0]) - 2 * push, 0);
             i <= cell(std::min(s.hi[0], clip[1]) + 2 * push, 0); ++i)
        {
            for (int j = cell(std::max(s.lo[1], clip[2]) - 2 * push, 1);
                 j <= cell(std::min(s.hi[1], clip[3]) + 2 * push, 1); ++j)
                by_cell_[static_cast<std::size_t>(i) * grid_.shape[1] + j].push_back(id);
        }
    }

    void load_block(int bi, int bj)
    {
        int const nbj = (grid_.shape[1] + block_ - 1) / block_;
        std::size_t const b = static_cast<std::size_t>(bi) * nbj + bj;
        if (loaded_[b])
            return;
        loaded_[b] = 1;
        double lo_box[4], hi_box[4];
        cell_box(bi * block_, bj * block_, lo_box);
        cell_box(std::min(grid_.shape[0] - 1, (bi + 1) * block_ - 1),
                 std::min(grid_.shape[1] - 1, (bj + 1) * block_ - 1), hi_box);
        double const box[4] = {lo_box[0], hi_box[1], lo_box[2], hi_box[3]};
        // cells of the block, inset so shapes of neighbouring blocks
        // are not indexed twice
        double const clip[4] = {box[0] + 2 * push, box[1] - 2 * push, box[2] + 2 * push,
                                box[3] - 2 * push};
        bool filtered = false;
        std::vector<ConvexShape> seen;
        shapes_(
            [&](ConvexShape const& s) {
                if (!filtered)
                    seen.push_back(s);
                else if (meets(s, box, 2 * push))
                    add(s, clip);
            },
            [&](ConvexShape const& s) {
                filtered = true;
                return meets(s, box, 2 * push);
            });
        // a stream that never consults the filter is flat: index it whole
        if (!filtered)
        {
            flat_ = true;
            double const all[4] = {-far_away, far_away, -far_away, far_away};
            for (auto const& s : seen)
                add(s, all);
        }
    }

    void cell_box(int i, int j, double* box) const
    {
        double const h = grid_.h;
        box[0] = grid_.origin[0] + h * (i - 0.5);
        box[1] = box[0] + h;
        box[2] = grid_.origin[1] + h * (j - 0.5);
        box[3] = box[2] + h;
    }

    static bool meets(ConvexShape const& s, double const* box, double pad)
    {
        return s.lo[0] <= box[1] + pad && s.hi[0] >= box[0] - pad &&
               s.lo[1] <= box[3] + pad && s.hi[1] >= box[2] - pad;
    }

    std::vector<std::array<double, 4>> const& gaps(std::size_t flat)
    {
        if (slot_[flat] < 0)
        {
            slot_[flat] = static_cast<int>(gaps_.size());
            gaps_.push_back(analyse(flat));
        }
        return gaps_[slot_[flat]];
    }

    std::vector<std::array<double, 4>> analyse(std::size_t flat)
    {
        int const ci = static_cast<int>(flat / grid_.shape[1]);
        int const cj = static_cast<int>(flat % grid_.shape[1]);
        double box[4];
        cell_box(ci, cj, box);

        std::vector<ConvexShape const*> near;
        bool full = false;
        auto take = [&](ConvexShape const& s) {
            if (full || !meets(s, box, 2 * push))
                return;
            bool inside = true;
            for (int mask = 0; mask < 4 && inside; ++mask)
            {
                double const x[2] = {box[mask & 1], box[2 + (mask >> 1)]};
                inside = s.contains(x, 0.0);
            }
            full = inside;
            near.push_back(&s);
        };
        if (!flat_)
            load_block(ci / block_, cj / block_);
        for (std::uint32_t id : by_cell_[flat])
            take(store_[id]);
        std::vector<std::array<double, 4>> out;
        if (full)
            return out;

        // buckets about one shape wide, so each edge meets few shapes
        double extent = grid_.h;
        if (!near.empty())
        {
            std::vector<double> sizes;
            for (auto const* s : near)
                sizes.push_back(std::max(s->hi[0] - s->lo[0], s->hi[1] - s->lo[1]));
            std::nth_element(sizes.begin(), sizes.begin() + sizes.size() / 2, sizes.end());
            extent = std::max(sizes[sizes.size() / 2], grid_.h / 64);
        }
        int const nb = std::clamp(static_cast<int>(std::ceil(grid_.h / extent)), 1, 64);
        double const bw = grid_.h / nb;
        auto bucket_of = [&](double x, int a) {
            return std::clamp(static_cast<int>(std::floor((x - box[2 * a]) / bw)), 0, nb - 1);
        };
        std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(nb) * nb);
        for (std::size_t id = 0; id < near.size(); ++id)
        {
            auto const& s = *near[id];
            for (int i = bucket_of(s.lo[0] - 2 * push, 0); i <= bucket_of(s.hi[0] + 2 * push, 0); ++i)
                for (int j = bucket_of(s.lo[1] - 2 * push, 1); j <= bucket_of(s.hi[1] + 2 * push, 1); ++j)
                    buckets[i * nb + j].push_back(static_cast<std::uint32_t>(id));
        }
        std::vector<std::uint32_t> stamp(near.size(), 0);
        std::uint32_t round = 0;

        double const box_n[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
        double const box_b[4] = {-box[0], box[1], -box[2], box[3]};
        std::vector<std::pair<double, double>> cover;
        for (auto const* shape : near)
        {
            auto const& s = *shape;
            for (std::size_t f = 0; f < s.num_faces(); ++f)
            {
                double const* n = &s.normals[2 * f];
                double const len = std::hypot(n[0], n[1]);
                double const u[2] = {-n[1] / len, n[0] / len};
                double const shift = s.offsets[f] / (len * len) + push / len;
                double const p[2] = {n[0] * shift, n[1] * shift};
                double s0 = -far_away, s1 = far_away;
                bool alive = true;
                for (std::size_t g = 0; g < s.num_faces() && alive; ++g)
                {
                    if (g != f)
                        alive = clip_line(&s.normals[2 * g], s.offsets[g], p, u,
                                          push * std::hypot(s.normals[2 * g],
                                                            s.normals[2 * g + 1]),
                                          s0, s1);
                }
                for (int e = 0; e < 4 && alive; ++e)
                    alive = clip_line(box_n[e], box_b[e], p, u, push, s0, s1);
                if (!alive)
                    continue;

                double const x0 = p[0] + s0 * u[0], x1 = p[0] + s1 * u[0];
                double const y0 = p[1] + s0 * u[1], y1 = p[1] + s1 * u[1];
                double const seg_box[4] = {std::min(x0, x1), std::max(x0, x1),
                                           std::min(y0, y1), std::max(y0, y1)};
                double const end0[2] = {x0, y0}, end1[2] = {x1, y1};
                ++round;
                cover.clear();
                bool whole = false;
                for (int i = bucket_of(std::min(x0, x1), 0); i <= bucket_of(std::max(x0, x1), 0); ++i)
                {
                    for (int j = bucket_of(std::min(y0, y1), 1); j <= bucket_of(std::max(y0, y1), 1); ++j)
                    {
                        for (std::uint32_t id : buckets[i * nb + j])
                        {
                            if (stamp[id] == round)
                                continue;
                            stamp[id] = round;
                            ConvexShape const& t = *near[id];
                            if (whole || !meets(t, seg_box, 0.0))
                                continue;
                            // a convex shape holding both ends holds the piece
                            if (t.contains(end0, 0.0) && t.contains(end1, 0.0))
                            {
                                whole = true;
                                continue;
                            }
                            double a0 = s0, a1 = s1;
                            bool in = true;
                            for (std::size_t g = 0; g < t.num_faces() && in; ++g)
                                in = clip_line(&t.normals[2 * g], t.offsets[g], p, u, 0.0, a0, a1);
                            if (in)
                                cover.emplace_back(a0, a1);
                        }
                    }
                }
                if (whole)
                    continue;
                std::sort(cover.begin(), cover.end());
                auto gap = [&](double g0, double g1) {
                    out.push_back({p[0] + g0 * u[0], p[1] + g0 * u[1], p[0] + g1 * u[0],
                                   p[1] + g1 * u[1]});
                };
                double reach = s0;
                for (auto const& [a0, a1] : cover)
                {
                    if (a0 > reach + min_gap)
                        gap(reach, a0);
                    reach = std::max(reach, a1);
                }
                if (s1 > reach + min_gap)
                    gap(reach, s1);
            }
        }
        // no shadow meets the cell: its center is uncovered
        if (near.empty())
        {
            double const x = 0.5 * (box[0] + box[1]), y = 0.5 * (box[2] + box[3]);
            out.push_back({x, y, x, y});
        }
        return out;
    }
};
}  // namespace

//---------------------------------------------------------------------------//
bool ConvexShape::contains(double const* x, double tol) const
{
    for (std::size_t j = 0; j < offsets.size(); ++j)
    {
        double dot = 0;
        for (int a = 0; a < dim; ++a)
            dot += normals[j * dim + a] * x[a];
        if (dot - offsets[j] > tol)
            return false;
    }
    return true;
}

ConvexShape ConvexShape::from(Polytope const& poly)
{
    if (poly.dim() > 3)
        throw UnsupportedDimension("ConvexShape: dimension > 3");
    ConvexShape s;
    s.dim = poly.dim();
    for (auto const& face : poly.faces())
    {
        for (int a = 0; a < s.dim; ++a)
            s.normals.push_back(face.normal[a]);
        s.offsets.push_back(face.offset);
    }
    for (int a = 0; a < s.dim; ++a)
    {
        s.lo[a] = poly.lower()[a];
        s.hi[a] = poly.upper()[a];
    }
    return s;
}

std::size_t GridSpec::size() const
{
    std::size_t n = 1;
    for (int e : shape)
        n *= static_cast<std::size_t>(e);
    return n;
}

Vec GridSpec::center(std::size_t flat) const
{
    Vec x(dim());
    for (int a = dim() - 1; a >= 0; --a)
    {
        x[a] = origin[a] + h * static_cast<double>(flat % shape[a]);
        flat /= shape[a];
    }
    return x;
}

GridSpec grid_around(Polytope const& domain, Vec const& anchor, double h)
{
    if (!(h > 0))
        throw std::invalid_argument("grid_around: resolution must be positive");
    GridSpec grid;
    grid.h = h;
    grid.origin = anchor;
    std::size_t total = 1;
    for (int a = 0; a < domain.dim(); ++a)
    {
        double const below = std::ceil((anchor[a] - domain.lower()[a]) / h - 1e-9) + 1;
        double const above = std::ceil((domain.upper()[a] - anchor[a]) / h - 1e-9) + 1;
        if (below + above + 1 > 1e8)
            throw std::invalid_argument("grid_around: resolution too fine");
        grid.origin[a] = anchor[a] - below * h;
        grid.shape.push_back(static_cast<int>(below + above + 1));
        total *= static_cast<std::size_t>(grid.shape.back());
    }
    if (total > max_cells)
        throw std::invalid_argument("grid_around: too many cells");
    return grid;
}

char const* to_string(CoverageMode mode)
{
    return mode == CoverageMode::center ? "center" : "corners";
}

//---------------------------------------------------------------------------//
ShapeStream flat_shapes(CubeStream cubes, int level, ShapeOf shape_of)
{
    return [cubes = std::move(cubes), level, shape_of = std::move(shape_of)](
               ShapeVisitor const& visit, ShapeFilter const&) {
        ConvexShape shape;
        cubes([&](std::span<std::int64_t const> coords) {
            shape_of(level, coords, shape);
            visit(shape);
        });
    };
}

ShapeStream hierarchical_shapes(Params params, std::uint64_t seed, int level,
                                ShapeOf shape_of)
{
    return [params = std::move(params), seed, level, shape_of = std::move(shape_of)](
               ShapeVisitor const& visit, ShapeFilter const& keep) {
        ConvexShape shape;
        CubeFilter filter;
        if (keep)
        {
            filter = [&](int depth, std::span<std::int64_t const> coords) {
                if (depth == level)
                    return true;
                shape_of(depth, coords, shape);
                return keep(shape);
            };
        }
        for_each_retained(
            params, seed, level,
            [&](std::span<std::int64_t const> coords) {
                shape_of(level, coords, shape);
                visit(shape);
            },
            filter);
    };
}

//---------------------------------------------------------------------------//
std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals, double tol)
{
    std::sort(intervals.begin(), intervals.end());
    std::vector<std::pair<double, double>> merged;
    for (auto const& iv : intervals)
    {
        if (!merged.empty() && iv.first <= merged.back().second + tol)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

std::vector<double> squared_distance_transform(std::vector<bool> const& feature,
                                               std::vector<int> const& shape)
{
    std::size_t total = 1;
    std::size_t longest = 1;
    for (int e : shape)
    {
        total *= static_cast<std::size_t>(e);
        longest = std::max(longest, static_cast<std::size_t>(e));
    }
    if (feature.size() != total)
        throw std::invalid_argument("squared_distance_transform: size mismatch");
    std::vector<double> f(total);
    for (std::size_t i = 0; i < total; ++i)
        f[i] = feature[i] ? 0.0 : far_away;

    auto const strides = strides_of(shape);
    std::vector<double> d(longest), z(longest + 1), g(longest);
    std::vector<int> v(longest);
    for (std::size_t a = 0; a < shape.size(); ++a)
    {
        std::size_t const n = shape[a];
        std::size_t const stride = strides[a];
        // every line along axis a starts at an index with digit a equal to 0
        for (std::size_t start = 0; start < total; ++start)
        {
            if ((start / stride) % n != 0)
                continue;
            edt_line(f.data() + start, n, stride, d, v, z, g);
        }
    }
    for (auto& x : f)
    {
        if (x >= far_away)
            x = std::numeric_limits<double>::infinity();
    }
    return f;
}

//---------------------------------------------------------------------------//
CoverageReport coverage_ball(GridSpec const& grid, Polytope const& domain,
                             ShapeStream const& shapes,
                             CoverageOptions const& opts, double feature_size)
{
    int const k = grid.dim();
    if (k < 1 || k > 3 || domain.dim() != k)
        throw UnsupportedDimension("coverage_ball: grid dimension must be 1..3");
    double const h = grid.h;
    double const tol = opts.tol;
    std::size_t const total = grid.size();
    auto const strides = strides_of(grid.shape);

    CoverageReport report;
    report.mode = opts.mode;
    report.resolution = h;
    report.grid_shape = grid.shape;
    report.note = "finite-level proxy: a covered ball at this level does not "
                  "certify the limit set";
    if (h > feature_size)
        report.status = "coarse-resolution";

    std::vector<std::uint8_t> covered(total, 0);
    std::vector<std::pair<double, double>> intervals;

    if (k == 1)
    {
        // exact union: no pruning
        shapes(
            [&](ConvexShape const& s) {
                ++report.shapes;
                intervals.emplace_back(s.lo[0], s.hi[0]);
            },
            ShapeFilter{});
        intervals = merge_intervals(std::move(intervals), tol);
        for (std::size_t i = 0; i < total; ++i)
        {
            double const x = grid.origin[0] + h * i;
            auto it = std::upper_bound(
                intervals.begin(), intervals.end(), x,
                [](double v, auto const& iv) { return v < iv.first; });
            if (it != intervals.begin() && x <= std::prev(it)->second + tol)
                covered[i] = 1;
        }
    }
    else if (opts.mode == CoverageMode::center)
    {
        shapes(
            [&](ConvexShape const& s) {
                ++report.shapes;
                rasterize(s, grid.origin, h, 0.0, grid.shape, strides, tol, covered);
            },
            [&](ConvexShape const& s) {
                return rasterize(s, grid.origin, h, 0.0, grid.shape, strides, tol,
                                 covered, true);
            });
    }
    else
    {
        std::vector<int> corner_shape;
        for (int e : grid.shape)
            corner_shape.push_back(e + 1);
        auto const corner_strides = strides_of(corner_shape);
        std::size_t corner_total = 1;
        for (int e : corner_shape)
            corner_total *= static_cast<std::size_t>(e);
        std::vector<std::uint8_t> corners(corner_total, 0);
        shapes(
            [&](ConvexShape const& s) {
                ++report.shapes;
                rasterize(s, grid.origin, h, -0.5, corner_shape, corner_strides, tol,
                          corners);
            },
            [&](ConvexShape const& s) {
                return rasterize(s, grid.origin, h, -0.5, corner_shape, corner_strides,
                                 tol, corners, true);
            });
        for (std::size_t flat = 0; flat < total; ++flat)
        {
            std::size_t base = 0;
            std::size_t rem = flat;
            for (int a = k - 1; a >= 0; --a)
            {
                base += corner_strides[a] * (rem % grid.shape[a]);
                rem /= grid.shape[a];
            }
            bool all = true;
            for (int mask = 0; mask < (1 << k) && all; ++mask)
            {
                std::size_t c = base;
                for (int a = 0; a < k; ++a)
                {
                    if (mask & (1 << a))
                        c += corner_strides[a];
                }
                all = corners[c] != 0;
            }
            covered[flat] = all ? 1 : 0;
        }
    }

    // domain statistics
    std::vector<std::uint8_t> in_domain(total, 0);
    for (std::size_t i = 0; i < total; ++i)
    {
        in_domain[i] = domain.min_slack(grid.center(i)) >= -tol ? 1 : 0;
        report.domain_cells += in_domain[i];
        if (covered[i] && in_domain[i])
            ++report.covered_cells;
    }
    report.covered_fraction =
        report.domain_cells ? double(report.covered_cells) / report.domain_cells : 0.0;

    if (k == 1)
    {
        double best = 0;
        for (auto const& iv : intervals)
        {
            double const len = iv.second - iv.first;
            if (len > best)
            {
                best = len;
                Vec c(1);
                c[0] = 0.5 * (iv.first + iv.second);
                report.ball = Ball{c, 0.5 * len};
            }
        }
    }
    else
    {
        std::vector<bool> feature(total);
        for (std::size_t i = 0; i < total; ++i)
            feature[i] = !covered[i];
        auto const dist2 = squared_distance_transform(feature, grid.shape);
        auto grid_radius = [&](std::size_t i) {
            return std::isfinite(dist2[i]) ? (std::sqrt(dist2[i]) - 1) * h : 0.0;
        };

        // Test points: samples_per_cell hashed points in every covered cell.
        // They depend only on the grid and the seed, so a coarser level tests
        // a superset of the same points.
        int const m = std::max(0, opts.samples_per_cell);
        std::size_t const none = std::size_t(-1);
        std::vector<std::size_t> first_point(total, none);
        std::vector<double> points;
        for (std::size_t i = 0; i < total && m > 0; ++i)
        {
            if (!covered[i])
                continue;
            first_point[i] = points.size() / k;
            Vec const c = grid.center(i);
            Rng rng(derive_seed(opts.verify_seed, i));
            for (int j = 0; j < m; ++j)
            {
                for (int a = 0; a < k; ++a)
                    points.push_back(c[a] + h * (rng.uniform() - 0.5));
            }
        }
        std::size_t const num_points = points.size() / k;
        std::vector<std::uint8_t> ok(num_points, 0);

        // with query set: is some unconfirmed test point inside s?
        auto scan = [&](ConvexShape const& s, bool query) {
            int lo[3], hi[3];
            for (int a = 0; a < k; ++a)
            {
                lo[a] = std::max(0, static_cast<int>(std::floor(
                                        (s.lo[a] - tol - grid.origin[a]) / h + 0.5)));
                hi[a] = std::min(grid.shape[a] - 1,
                                 static_cast<int>(std::floor(
                                     (s.hi[a] + tol - grid.origin[a]) / h + 0.5)));
                if (lo[a] > hi[a])
                    return false;
            }
            int idx[3];
            for (int a = 0; a < k; ++a)
                idx[a] = lo[a];
            while (true)
            {
                std::size_t flat = 0;
                for (int a = 0; a < k; ++a)
                    flat += strides[a] * idx[a];
                if (first_point[flat] != none)
                {
                    for (std::size_t p = first_point[flat]; p < first_point[flat] + m; ++p)
                    {
                        if (!ok[p] && s.contains(points.data() + p * k, tol))
                        {
                            if (query)
                                return true;
                            ok[p] = 1;
                        }
                    }
                }
                int a = k - 1;
                while (a >= 0 && ++idx[a] > hi[a])
                {
                    idx[a] = lo[a];
                    --a;
                }
                if (a < 0)
                    break;
            }
            return false;
        };
        if (num_points > 0)
        {
            shapes([&](ConvexShape const& s) { scan(s, false); },
                   [&](ConvexShape const& s) { return scan(s, true); });
        }
        std::vector<std::size_t> misses;
        for (std::size_t p = 0; p < num_points; ++p)
        {
            if (!ok[p])
                misses.push_back(p);
        }
        report.test_points = num_points;
        report.uncovered_test_points = misses.size();

        // distance from c to the nearest uncovered test point, capped at cap
        auto nearest_miss = [&](Vec const& c, double cap) {
            double best = cap;
            int const reach = static_cast<int>(std::ceil(cap / h)) + 1;
            std::size_t box = 1;
            for (int a = 0; a < k; ++a)
                box *= static_cast<std::size_t>(2 * reach + 1);
            auto consider = [&](std::size_t p) {
                double sq = 0;
                for (int a = 0; a < k; ++a)
                {
                    double const diff = points[p * k + a] - c[a];
                    sq += diff * diff;
                }
                best = std::min(best, std::sqrt(sq));
            };
            if (misses.size() <= box * m)
            {
                for (std::size_t p : misses)
                    consider(p);
                return best;
            }
            int lo[3], hi[3], idx[3];
            for (int a = 0; a < k; ++a)
            {
                int const center = static_cast<int>(std::lround((c[a] - grid.origin[a]) / h));
                lo[a] = std::max(0, center - reach);
                hi[a] = std::min(grid.shape[a] - 1, center + reach);
                idx[a] = lo[a];
            }
            while (true)
            {
                std::size_t flat = 0;
                for (int a = 0; a < k; ++a)
                    flat += strides[a] * idx[a];
                if (first_point[flat] != none)
                {
                    for (std::size_t p = first_point[flat]; p < first_point[flat] + m; ++p)
                    {
                        if (!ok[p])
                            consider(p);
                    }
                }
                int a = k - 1;
                while (a >= 0 && ++idx[a] > hi[a])
                {
                    idx[a] = lo[a];
                    --a;
                }
                if (a < 0)
                    break;
            }
            return best;
        };

        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < total; ++i)
        {
            if (covered[i] && grid_radius(i) > 0)
                order.push_back(i);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return dist2[x] != dist2[y] ? dist2[x] > dist2[y] : x < y;
        });
        if (!order.empty())
            report.grid_radius = grid_radius(order.front());
        // sampled radius first; for k = 2 the best candidates are then
        // re-measured exactly, in decreasing order of their sampled radius
        std::vector<std::pair<double, std::size_t>> sampled;
        double best = 0;
        std::size_t next = 0;
        for (; next < order.size(); ++next)
        {
            double const cap = grid_radius(order[next]);
            if (cap <= best)
                break;
            double const r =
                num_points > 0 ? nearest_miss(grid.center(order[next]), cap) : cap;
            sampled.emplace_back(r, order[next]);
            best = std::max(best, r);
        }
        std::stable_sort(sampled.begin(), sampled.end(),
                         [](auto const& x, auto const& y) { return x.first > y.first; });
        best = 0;
        ExactCoverage2d exact(shapes, grid, feature_size);
        auto consider = [&](double r, std::size_t i) {
            Vec const c = grid.center(i);
            if (k == 2)
                r = exact.radius(c, r);
            if (r > best)
            {
                best = r;
                report.ball = Ball{c, r};
            }
        };
        for (auto const& [r, i] : sampled)
        {
            if (r <= best)
                break;
            consider(r, i);
        }
        for (; next < order.size(); ++next)
        {
            double const cap = grid_radius(order[next]);
            if (cap <= best)
                break;
            double const r =
                num_points > 0 ? nearest_miss(grid.center(order[next]), cap) : cap;
            if (r > best)
                consider(r, order[next]);
        }
    }

    if (report.ball)
    {
        report.radius = report.ball->radius;
        report.radius_cells = report.radius / h;
    }

    if (opts.keep_cells)
    {
        report.cells.assign(total, 0);
        for (std::size_t i = 0; i < total; ++i)
        {
            std::uint8_t state = covered[i] ? 2 : (in_domain[i] ? 1 : 0);
            if (state == 2 && report.ball &&
                (grid.center(i) - report.ball->center).norm() <= report.ball->radius)
                state = 3;
            report.cells[i] = state;
        }
    }
    return report;
}

}  // namespace mperc
