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
#include <span>
#include <vector>

#include "linalg.hpp"

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * Address of a level-n mesh cube.
 *
 * Stored as integer coordinates i in {0..M^n-1}^d; the cube is
 * prod_r [i_r, i_r + 1] M^{-n}. The equivalent d x n digit matrix has the
 * level-j digit in column j-1, with i_r = sum_j digits[r][j-1] M^{n-j}.
 */
class CubeIndex
{
  public:
    CubeIndex(int base, int level, std::vector<std::int64_t> coords);

    static CubeIndex root(int d, int base);

    //! Build from a d x n digit matrix given as d rows of n digits
    static CubeIndex from_digits(int base,
                                 std::vector<std::vector<int>> const& rows);

    int dim() const { return static_cast<int>(coords_.size()); }
    int base() const { return base_; }
    int level() const { return level_; }
    std::span<std::int64_t const> coords() const { return coords_; }

    //! d rows of n digits; column j is the level-(j+1) digit vector
    std::vector<std::vector<int>> digits() const;

    CubeIndex child(std::span<int const> digit_column) const;
    CubeIndex parent() const;

    //! Side length M^{-n}
    double scale() const;
    //! Lower-left corner t_A
    Vec corner() const;

    bool operator==(CubeIndex const&) const = default;

  private:
    int base_;
    int level_;
    std::vector<std::int64_t> coords_;
};

struct Homothety
{
    double scale;
    Vec translation;

    Vec apply(Vec const& x) const { return scale * x + translation; }
};

//! phi_A(x) = M^{-n} x + t_A, mapping the unit cube onto the cube of A
Homothety homothety_params(CubeIndex const& cube);

}  // namespace mperc
