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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * Model parameters of d-dimensional fractal percolation.
 *
 * The retention table has one entry per first-level subcube. A subcube is
 * identified by its digit vector (a_0, ..., a_{d-1}) in {0..M-1}^d and the
 * table index is the base-M number with a_0 as the most significant digit:
 *
 *   index = a_0 M^{d-1} + a_1 M^{d-2} + ... + a_{d-1}
 *
 * so that table order is the lexicographic order of digit vectors.
 */
class Params
{
  public:
    Params(int d, int M, int k, std::vector<double> p);

    //! All subcubes retained with the same probability
    static Params equal(int d, int M, int k, double p);

    //! d=3, M=3, k=2 table with the central subcube at `center` and the
    //! other 26 at `other`
    static Params ex2(double center, double other);

    int dim() const { return d_; }
    int base() const { return m_; }
    int proj_dim() const { return k_; }

    std::size_t num_children() const { return p_.size(); }
    std::span<double const> probabilities() const { return p_; }
    double prob(std::size_t index) const { return p_.at(index); }

    std::vector<int> digits_of(std::size_t index) const;
    std::size_t index_of(std::span<int const> digits) const;

    //! Sum of all retention probabilities (Galton-Watson offspring mean)
    double offspring_mean() const;

    bool operator==(Params const&) const = default;

  private:
    int d_;
    int m_;
    int k_;
    std::vector<double> p_;
};

//! Integer power with overflow check against 2^62
std::int64_t ipow(std::int64_t base, int exp);

}  // namespace mperc
