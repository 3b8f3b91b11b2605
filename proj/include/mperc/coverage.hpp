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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "params.hpp"
#include "polytope.hpp"
#include "realization.hpp"

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * Half-space description of one convex shadow, laid out for rasterization.
 */
struct ConvexShape
{
    int dim = 0;
    std::vector<double> normals;  // faces x dim
    std::vector<double> offsets;  // faces
    double lo[3] = {0, 0, 0};
    double hi[3] = {0, 0, 0};

    std::size_t num_faces() const { return offsets.size(); }
    bool contains(double const* x, double tol) const;

    static ConvexShape from(Polytope const& poly);
};

using ShapeVisitor = std::function<void(ConvexShape const&)>;
//! Called on ancestor shadows; false skips the subtree (may be empty)
using ShapeFilter = std::function<bool(ConvexShape const&)>;
/*!
 * Calls the visitor once per shadow of a fixed level. Hierarchical streams
 * may consult the filter on ancestor shadows and skip subtrees it rejects,
 * which is sound because a cube's shadow contains its descendants'.
 * Flat streams ignore the filter.
 */
using ShapeStream = std::function<void(ShapeVisitor const&, ShapeFilter const&)>;

//! Fills `out` with the shadow of the cube at (depth, coords)
using ShapeOf =
    std::function<void(int depth, std::span<std::int64_t const> coords, ConvexShape& out)>;

//! Flat stream over the level-`level` cubes of `cubes`
ShapeStream flat_shapes(CubeStream cubes, int level, ShapeOf shape_of);
//! Pruned stream over a lazily generated realization
ShapeStream hierarchical_shapes(Params params, std::uint64_t seed, int level,
                                ShapeOf shape_of);

//! Cell centers at origin + h * index, index in [0, shape)
struct GridSpec
{
    Vec origin;
    double h = 0;
    std::vector<int> shape;

    int dim() const { return static_cast<int>(shape.size()); }
    std::size_t size() const;
    Vec center(std::size_t flat) const;
};

/*!
 * Grid with a cell centered on `anchor`, covering the bounding box of
 * `domain` plus one margin cell on each side.
 */
GridSpec grid_around(Polytope const& domain, Vec const& anchor, double h);

enum class CoverageMode
{
    center,   //!< cell covered iff its center lies in some shadow
    corners,  //!< cell covered iff all 2^k corners lie in (possibly different) shadows
};

char const* to_string(CoverageMode mode);

struct CoverageOptions
{
    double resolution = 1.0 / 128;
    CoverageMode mode = CoverageMode::center;
    double tol = 1e-9;
    //! hashed test points per covered cell, re-tested exactly (0 disables)
    int samples_per_cell = 8;
    std::uint64_t verify_seed = 0x0C0FFEEull;
    //! keep the per-cell state array in the report (for PPM export)
    bool keep_cells = true;
};

struct Ball
{
    Vec center;
    double radius = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Largest detected ball inside the union of shadows on an occupancy grid.
 *
 * For k >= 2, D(c) is the exact Euclidean distance from a covered cell
 * center c to the nearest uncovered cell center, and D(c) - h bounds a
 * ball all of whose points lie in covered cells. Each covered cell also
 * carries a fixed set of hashed test points that are re-tested against
 * the shadows; the radius at c is the smaller of D(c) - h and the distance
 * to the nearest failed test point, and the report keeps the best c.
 * Grid and test points do not depend on the level, so on a fixed grid the
 * radius is non-increasing in n. For k = 2 the best candidates are then
 * re-measured exactly against the shadow edges. For k = 1 the union of
 * intervals is computed exactly.
 */
struct CoverageReport
{
    std::string target;
    //! projection center t for radial targets, empty otherwise
    Vec source;
    int level = 0;
    CoverageMode mode = CoverageMode::center;
    double resolution = 0;
    std::vector<int> grid_shape;
    std::optional<Ball> ball;
    double radius = 0;
    double radius_cells = 0;
    std::size_t covered_cells = 0;
    std::size_t domain_cells = 0;
    double covered_fraction = 0;
    //! shadows rasterized (after subtree pruning, if any)
    std::size_t shapes = 0;
    //! radius from the occupancy grid alone, before the test-point check
    double grid_radius = 0;
    std::size_t test_points = 0;
    std::size_t uncovered_test_points = 0;
    //! "ok" or "coarse-resolution"
    std::string status = "ok";
    std::string note;
    //! per cell: 0 outside domain, 1 uncovered, 2 covered, 3 inside the ball
    std::vector<std::uint8_t> cells;
};

CoverageReport coverage_ball(GridSpec const& grid, Polytope const& domain,
                             ShapeStream const& shapes,
                             CoverageOptions const& opts,
                             double feature_size);

//---------------------------------------------------------------------------//
//! Merge closed intervals (touching within tol counts as overlapping)
std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals, double tol = 1e-12);

/*!
 * Squared Euclidean distance transform in cell units: for every cell, the
 * squared distance to the nearest cell with feature[i] true (infinity
 * when there is none). Separable exact algorithm (lower envelope of
 * parabolas along each axis).
 */
std::vector<double> squared_distance_transform(std::vector<bool> const& feature,
                                               std::vector<int> const& shape);

}  // namespace mperc
