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

namespace mperc
{
//---------------------------------------------------------------------------//
/*!
 * SplitMix path hash (SMPH-64).
 *
 * Every retention decision is a pure function of the master seed and the
 * digit path of the node, so realizations can be deepened lazily or
 * generated in any order. With G = 0x9E3779B97F4A7C15 and `mix` the
 * SplitMix64 finalizer:
 *
 *   key(root)        = mix(seed + G)
 *   key(parent | c)  = mix(key(parent) + G * (c + 1))
 *   u(node)          = (key(node) >> 11) * 2^-53        in [0, 1)
 *
 * where c is the table index of the child's digit vector (see Params). A
 * node is retained iff u(node) < p_c.
 */
inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t root_key(std::uint64_t seed)
{
    return mix64(seed + golden_gamma);
}

constexpr std::uint64_t child_key(std::uint64_t parent, std::uint64_t child)
{
    return mix64(parent + golden_gamma * (child + 1));
}

constexpr double to_unit(std::uint64_t key)
{
    return static_cast<double>(key >> 11) * 0x1.0p-53;
}

//! Independent stream seed for task `task` under master seed `master`
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task)
{
    return mix64(mix64(master ^ 0xD1B54A32D192ED03ull) + golden_gamma * (task + 1));
}

//---------------------------------------------------------------------------//
/*!
 * Counter-based generator for frames, sample points and QMC shifts.
 *
 * Draw i is mix64(key + G * (i + 1)); normals use Box-Muller on consecutive
 * draws, so sequences do not depend on the standard library's distribution
 * implementations.
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : key_(root_key(seed)) {}

    std::uint64_t next_u64() { return child_key(key_, counter_++); }
    double uniform() { return to_unit(next_u64()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace mperc
