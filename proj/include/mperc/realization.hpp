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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cube.hpp"
#include "params.hpp"

namespace mperc
{
//! Receives the integer coordinates of one level-n cube
using CubeVisitor = std::function<void(std::span<std::int64_t const>)>;
//! Calls the visitor once per cube of some fixed level
using CubeStream = std::function<void(CubeVisitor const&)>;

//---------------------------------------------------------------------------//
/*!
 * Seeded realization of the retained cubes at levels 0..n_max.
 *
 * Level 0 holds the unit cube. Each level is stored as a flat array of
 * d-tuples of coordinates in lexicographic order. Immutable once built.
 */
class Realization
{
  public:
    Realization(Params params,
                std::uint64_t seed,
                std::vector<std::vector<std::int64_t>> levels);

    Params const& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }
    int n_max() const { return static_cast<int>(levels_.size()) - 1; }
    int dim() const { return params_.dim(); }

    std::size_t count(int n) const;
    std::span<std::int64_t const> cube(int n, std::size_t i) const;
    CubeIndex cube_index(int n, std::size_t i) const;
    //! Flat coordinate array of level n
    std::span<std::int64_t const> level_coords(int n) const;

    //! Binary search for a cube at level n
    bool contains(int n, std::span<std::int64_t const> coords) const;

    //! True if level n is empty (the process died out by level n)
    bool extinct_by(int n) const { return count(n) == 0; }

    CubeStream stream(int n) const;

    bool operator==(Realization const&) const = default;

  private:
    Params params_;
    std::uint64_t seed_;
    std::vector<std::vector<std::int64_t>> levels_;
};

Realization generate(Params const& params, std::uint64_t seed, int n_max);

/*!
 * Visit the retained level-n cubes by depth-first descent without storing
 * the tree. Produces exactly the cube set of generate(params, seed, n)
 * (in a different order).
 */
void for_each_retained(Params const& params,
                       std::uint64_t seed,
                       int level,
                       CubeVisitor const& visit);

/*!
 * Pruned variant: keep(depth, coords) is called for every retained node
 * (root included) before it is expanded; returning false skips the node
 * and its whole subtree.
 */
using CubeFilter = std::function<bool(int depth, std::span<std::int64_t const>)>;
void for_each_retained(Params const& params,
                       std::uint64_t seed,
                       int level,
                       CubeVisitor const& visit,
                       CubeFilter const& keep);

CubeStream lazy_stream(Params const& params, std::uint64_t seed, int level);

//! True iff the realization has a retained cube at `level`; stops at the first
bool survives_to(Params const& params, std::uint64_t seed, int level);

//---------------------------------------------------------------------------//
// Serialization
//---------------------------------------------------------------------------//

//! Versioned JSON document (see README for the schema)
std::string realization_to_json(Realization const& real);
Realization realization_from_json(std::string const& text);

/*!
 * Compact little-endian binary form:
 *
 *   magic   "MPRC"              4 bytes
 *   version u32 (=1)
 *   d, M, k u32 each
 *   n_max   u32
 *   seed    u64
 *   p       f64 * M^d
 *   for each level 0..n_max:
 *     count u64, then count * d coordinates as u64
 */
void write_realization_binary(std::ostream& os, Realization const& real);
Realization read_realization_binary(std::istream& is);

}  // namespace mperc
