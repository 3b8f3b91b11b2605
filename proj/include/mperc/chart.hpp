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

#include <optional>
#include <vector>

#include "frame.hpp"
#include "linalg.hpp"
#include "polytope.hpp"

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * Linear projection onto a coordinate k-plane along the fiber directions.
 *
 * With C the d x (d-k) complement basis of the frame and I' the chosen
 * coordinate plane, C1 holds the rows of C at I' and C2 the rows at the
 * remaining coordinates. Splitting x into x1 (coordinates in I') and x2
 * (the rest), the projection is
 *
 *   Pi(x) = x1 - N x2,     N = C1 C2^{-1}.
 *
 * N and Pi depend only on span(C), not on the chosen basis. The shadow of
 * the unit cube (Delta) is built once at construction when k <= 3.
 */
class Chart
{
  public:
    Chart(Frame frame, Mat complement, std::vector<int> plane);

    Frame const& frame() const { return frame_; }
    Mat const& complement() const { return c_; }
    //! I': sorted coordinate indices of the target plane (0-based)
    std::vector<int> const& plane() const { return plane_; }
    //! Sorted complement of I'
    std::vector<int> const& fiber_axes() const { return fiber_; }
    Mat const& c1() const { return c1_; }
    Mat const& c2() const { return c2_; }
    //! N = C1 C2^{-1}, k x (d-k)
    Mat const& n() const { return n_; }
    double det_c2() const { return det_c2_; }

    int ambient() const { return static_cast<int>(c_.rows()); }
    int dim() const { return static_cast<int>(plane_.size()); }
    int fiber_dim() const { return static_cast<int>(fiber_.size()); }

    Vec project(Vec const& x) const;
    //! Raw form for inner loops: z[0..k) = Pi(x[0..d))
    void project(double const* x, double* z) const;

    //! Delta = Pi([0,1]^d); throws UnsupportedDimension when k > 3
    Polytope const& delta() const;
    //! Pi of the cube center, the symmetry center of Delta
    Vec const& center() const { return center_; }

  private:
    Frame frame_;
    Mat c_;
    std::vector<int> plane_;
    std::vector<int> fiber_;
    Mat c1_;
    Mat c2_;
    Mat n_;
    double det_c2_ = 0;
    Vec center_;
    std::optional<Polytope> delta_;
};

/*!
 * Chart with I' maximizing |det C2(I)|; ties within 1e-12 go to the
 * lexicographically first I. Cauchy-Binet gives |det C2| >= binom(d,k)^{-1/2}.
 */
Chart select_chart(Frame const& frame);

//! Chart with a prescribed coordinate plane (used to compare nearby frames)
Chart make_chart(Frame const& frame, std::vector<int> plane);

//! Chart whose fiber directions span the columns of C
Chart chart_from_complement(Mat const& C);

//! sum over I of det(C2(I))^2
double cauchy_binet_sum(Mat const& C);

//! Rows of C at the complement of `plane`
Mat c2_block(Mat const& C, std::vector<int> const& plane);

Vec project_point(Chart const& chart, Vec const& x);

}  // namespace mperc
