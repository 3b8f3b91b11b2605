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

#include "chart.hpp"
#include "cube.hpp"
#include "feasibility.hpp"
#include "polytope.hpp"

namespace mperc
{
//! Delta = Pi(unit cube); throws UnsupportedDimension for k > 3
Polytope const& delta_region(Chart const& chart);

//! Pi(t_A) for integer cube coordinates at `level`: M^{-n} Pi(coords)
Vec shadow_offset(Chart const& chart, int base, int level,
                  std::span<std::int64_t const> coords);

//! M^{-n} Delta + Pi(t_A); never recomputes a hull
Polytope shadow_of_cube(Chart const& chart, CubeIndex const& cube);

//! psi_A(z) = M^n (z - Pi(t_A)), the inverse of Pi o phi_A
Vec psi(Chart const& chart, CubeIndex const& cube, Vec const& z);

//! Delta scaled by lambda in (0,1] about the chart center
Polytope homothetic_region(Chart const& chart, double lambda);

/*!
 * Inequalities in the fiber coordinates u in R^{d-k} describing
 *   u in box2(A)   and   z + N u in box1(A),
 * i.e. the points of the cube of A that project to z.
 */
std::vector<Inequality> fiber_system(Chart const& chart, CubeIndex const& cube,
                                     Vec const& z);

//! z in Pi(K_A), decided by Fourier-Motzkin on fiber_system
bool membership_oracle(Chart const& chart, CubeIndex const& cube, Vec const& z);

/*!
 * Candidate search for a fiber witness: the basic solutions of
 * fiber_system, then uniform samples of box2(A) until `candidates` points
 * have been tried. True iff some candidate violates no constraint by more
 * than 1e-10.
 */
bool fiber_search(Chart const& chart, CubeIndex const& cube, Vec const& z,
                  int candidates = 1000, std::uint64_t seed = 0);

}  // namespace mperc
