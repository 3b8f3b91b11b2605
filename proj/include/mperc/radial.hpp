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
#include <utility>

#include "coverage.hpp"
#include "cube.hpp"
#include "params.hpp"
#include "polytope.hpp"
#include "realization.hpp"

namespace mperc
{
/*!
 * Center of a central projection onto the hyperplane x_d = 0.
 *
 * t must keep a Euclidean distance greater than `margin` from the closed
 * unit cube and lie strictly above (t_d > 1) or below (t_d < 0) it, so
 * every cube point maps with a finite positive line parameter.
 */
struct RadialCenter
{
    Vec t;
    double margin = 0.1;
};

//! Throws std::invalid_argument when t violates the separation condition
void check_separation(RadialCenter const& center);

//! Distance from t to the closed unit cube
double distance_to_unit_cube(Vec const& t);

/*!
 * Image of the cube of A under x -> t + s (x - t), s = t_d / (t_d - x_d),
 * in the first d-1 coordinates. Returned as the hull of the 2^d projected
 * vertices (convex since the cube lies on one side of t's parallel plane).
 */
Polytope radial_shadow(RadialCenter const& center, CubeIndex const& cube);

//! Exact (min, max) Euclidean distance from t to the closed cube box
std::pair<double, double> coradial_interval(Vec const& t, CubeIndex const& cube);
std::pair<double, double> coradial_interval(Vec const& t, int base, int level,
                                            std::span<std::int64_t const> coords);

CoverageReport radial_experiment(Params const& params, CubeStream const& cubes,
                                 RadialCenter const& center, int n,
                                 CoverageOptions const& opts = {});
//! Lazily generated realization; subtrees that cannot change the grid are skipped
CoverageReport radial_experiment(Params const& params, std::uint64_t seed,
                                 RadialCenter const& center, int n,
                                 CoverageOptions const& opts = {});
CoverageReport radial_experiment(Realization const& real, RadialCenter const& center,
                                 int n, CoverageOptions const& opts = {});

/*!
 * Union of distance intervals of the retained level-n cubes, computed
 * exactly; the ball is the longest covered interval (center, half-length).
 */
CoverageReport coradial_experiment(Params const& params, CubeStream const& cubes,
                                   Vec const& t, int n, CoverageOptions const& opts = {});
CoverageReport coradial_experiment(Params const& params, std::uint64_t seed,
                                   Vec const& t, int n, CoverageOptions const& opts = {});
CoverageReport coradial_experiment(Realization const& real, Vec const& t, int n,
                                   CoverageOptions const& opts = {});

}  // namespace mperc
