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

#include <functional>
#include <vector>

#include "chart.hpp"

namespace mperc
{
using Field = std::function<double(Vec const&)>;

//---------------------------------------------------------------------------//
/*!
 * Rectangular lattice of spacing h whose points include the chart center
 * and cover the bounding box of Delta.
 */
class Lattice
{
  public:
    Lattice(Chart const& chart, double h);

    int dim() const { return static_cast<int>(shape_.size()); }
    double spacing() const { return h_; }
    std::vector<int> const& shape() const { return shape_; }
    Vec const& origin() const { return origin_; }
    std::size_t size() const { return size_; }

    Vec point(std::size_t flat) const;
    std::vector<int> unflatten(std::size_t flat) const;
    std::size_t flatten(std::vector<int> const& idx) const;

  private:
    double h_;
    Vec origin_;
    std::vector<int> shape_;
    std::size_t size_ = 1;
};

//! Lattice points strictly inside Delta (slack > tol), in flat order
std::vector<Vec> interior_points(Chart const& chart, double h,
                                 double tol = 1e-9);

//! About `target` evenly strided interior points of a lattice fine enough
//! to contain at least that many
std::vector<Vec> interior_sample(Chart const& chart, std::size_t target);

//---------------------------------------------------------------------------//
/*!
 * Nonnegative function on Delta sampled on a Lattice. Evaluation is
 * multilinear interpolation of the lattice values and returns 0 outside
 * Delta; lattice values outside Delta are stored as 0.
 */
class GridFunction
{
  public:
    static GridFunction sample(Chart const& chart, double h, Field const& f);

    double operator()(Vec const& z) const;
    Lattice const& lattice() const { return lattice_; }
    std::vector<double> const& values() const { return values_; }

  private:
    GridFunction(Chart const& chart, Lattice lattice, std::vector<double> values);

    Polytope delta_;
    Lattice lattice_;
    std::vector<double> values_;
};

}  // namespace mperc
