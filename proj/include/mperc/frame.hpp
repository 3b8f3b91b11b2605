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
#include <vector>

#include "linalg.hpp"

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * Orthonormal k-frame in R^d (columns of a d x k matrix).
 */
class Frame
{
  public:
    //! Columns must be orthonormal within 1e-10
    static Frame from_columns(Mat columns);
    //! Gram-Schmidt; throws if the columns are numerically dependent
    static Frame orthonormalize(Mat columns);
    static Frame coordinate(int d, std::vector<int> const& axes);
    //! Haar-distributed frame (QR of a Gaussian matrix)
    static Frame random(int d, int k, std::uint64_t seed);
    //! The orthogonal complement of span(C)
    static Frame complement_of(Mat const& C);

    int ambient() const { return static_cast<int>(cols_.rows()); }
    int dim() const { return static_cast<int>(cols_.cols()); }
    Mat const& matrix() const { return cols_; }

  private:
    explicit Frame(Mat cols) : cols_(std::move(cols)) {}
    Mat cols_;
};

/*!
 * Orthonormal basis of the orthogonal complement of the frame.
 *
 * Pivoted Gram-Schmidt over the standard basis: at each step the standard
 * vector with the largest residual (ties to the lowest index) is
 * orthogonalized twice and appended. Throws std::invalid_argument if the
 * frame's Gram matrix is singular (smallest eigenvalue < 1e-8).
 */
Mat complement_basis(Frame const& frame);

//! Spectral norm of the difference of the orthogonal projectors
double frame_distance(Frame const& a, Frame const& b);

}  // namespace mperc
