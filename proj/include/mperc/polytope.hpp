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

#include <stdexcept>
#include <vector>

#include "linalg.hpp"

namespace mperc
{
enum class Containment
{
    inside,
    boundary,
    outside
};

//! { z : normal . z <= offset } with a unit normal
struct Halfspace
{
    Vec normal;
    double offset;
};

class UnsupportedDimension : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * Full-dimensional convex polytope in R^k, 1 <= k <= 3, kept in both vertex
 * and half-space form.
 *
 * For k = 2 the vertices are in counter-clockwise order starting from the
 * lowest-then-leftmost point and face i joins vertex i to vertex i+1.
 */
class Polytope
{
  public:
    //! Convex hull of a point cloud; throws if the hull is not full-dimensional
    static Polytope hull(int dim, std::vector<Vec> const& points);
    //! Axis-aligned box [lo, hi]
    static Polytope box(Vec const& lo, Vec const& hi);

    int dim() const { return dim_; }
    std::vector<Vec> const& vertices() const { return vertices_; }
    std::vector<Halfspace> const& faces() const { return faces_; }

    //! scale * P + shift (scale > 0); exact on both representations
    Polytope affine(double scale, Vec const& shift) const;
    //! Homothety with ratio lambda about `center`
    Polytope scaled_about(Vec const& center, double lambda) const;

    //! min over faces of offset - normal . z (signed distance for k <= 2 when
    //! positive)
    double min_slack(Vec const& z) const;
    Containment contains(Vec const& z, double tol = 1e-9) const;

    Vec lower() const { return lower_; }
    Vec upper() const { return upper_; }
    Vec centroid_of_vertices() const;
    double diameter() const;

    //! Euclidean distance from z to the polytope (0 inside); k <= 2
    double distance(Vec const& z) const;
    //! Signed area (k = 2) or length (k = 1)
    double measure() const;

  private:
    Polytope(int dim, std::vector<Vec> vertices, std::vector<Halfspace> faces);

    int dim_ = 0;
    std::vector<Vec> vertices_;
    std::vector<Halfspace> faces_;
    Vec lower_;
    Vec upper_;
};

//! Hausdorff distance between two polytopes of dimension <= 2
double hausdorff_distance(Polytope const& a, Polytope const& b);

}  // namespace mperc
