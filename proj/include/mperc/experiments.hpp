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
#include <optional>
#include <string>
#include <vector>

#include "chart.hpp"
#include "conditions.hpp"
#include "coverage.hpp"
#include "params.hpp"
#include "realization.hpp"

namespace mperc
{
//---------------------------------------------------------------------------//
// V_n covering counts
//---------------------------------------------------------------------------//
/*!
 * Number of retained level-n cubes whose closed shadow contains z (tol
 * 1e-9). With lambda2 set, counts cubes with psi_A(z) in the closed
 * homothet lambda2 * Delta instead.
 */
std::size_t vn_statistic(Realization const& real, Chart const& chart, Vec const& z,
                         int n, std::optional<double> lambda2 = {});

/*!
 * V_0..V_{n_max} for one seed by pruned descent: a subtree is skipped as
 * soon as its shadow misses z, since descendants' shadows nest.
 */
std::vector<std::size_t> vn_profile(Params const& params, std::uint64_t seed,
                                    Chart const& chart, Vec const& z, int n_max);

//! N_n(z): level-n cubes of the full grid whose shadow contains z
std::vector<std::size_t> full_count_profile(Params const& params, Chart const& chart,
                                            Vec const& z, int n_max);

struct VnLevel
{
    int n = 0;
    std::vector<std::size_t> samples;  //!< one per seed
    double mean = 0;
    double std_error = 0;
    std::size_t min = 0;
    std::size_t max = 0;
    //! seeds whose realization is nonempty at level n
    std::size_t survivors = 0;
    //! fraction of survivors with V_n >= (3/2)^n
    double growth_frequency = 0;
    double reference = 0;  //!< (3/2)^n
    double expected = 0;   //!< F^n 1(z) = E V_n
};

struct VnReport
{
    Vec z;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<VnLevel> levels;
};

/*!
 * V_n(z) for n = 0..n_levels over `seeds` derived seeds. Seeds are
 * derive_seed(master_seed, i); work is split over `threads` workers.
 * seeds = 0 gives an empty report.
 */
VnReport growth_test(Params const& params, Chart const& chart, Vec const& z,
                     int n_levels, std::size_t seeds, std::uint64_t master_seed,
                     unsigned threads = 1);

//---------------------------------------------------------------------------//
// Covered balls in orthogonal shadows
//---------------------------------------------------------------------------//
//! Shadow of a depth-n cube as a translate of M^-n Delta (depth <= max_level)
ShapeOf orthogonal_shape_of(Chart const& chart, int base, int max_level);

//! Shadows of the level-n cubes of `cubes`
ShapeStream orthogonal_shapes(Chart const& chart, int base, int level,
                              CubeStream cubes);

CoverageReport detect_ball(Chart const& chart, int base, int level,
                           CubeStream const& cubes, CoverageOptions const& opts);
CoverageReport detect_ball(Realization const& real, Chart const& chart, int n,
                           CoverageOptions const& opts = {});
/*!
 * Same as above without materializing the realization; subtrees that
 * cannot change the occupancy grid are skipped.
 */
CoverageReport detect_ball(Params const& params, std::uint64_t seed,
                           Chart const& chart, int n,
                           CoverageOptions const& opts = {});

//---------------------------------------------------------------------------//
// Direction sweeps
//---------------------------------------------------------------------------//
struct SweepOptions
{
    int k = 1;
    //! directions in the net (excluding added coordinate frames)
    int net_size = 16;
    int level = 4;
    bool include_axes = true;
    //! seed for random frames when no deterministic net applies
    std::uint64_t frame_seed = 1;
    CoverageOptions coverage;
    ConditionBOptions condition_b;
    bool run_condition_b = true;
};

/*!
 * Frames of the direction net. For d = 2, angles pi j / m; for d = 3, a
 * Fibonacci net on the upper hemisphere. A net vector is the frame when
 * k = 1 and the fiber direction when k = d - 1. Otherwise frames are
 * random. With include_axes, coordinate frames are appended when absent.
 */
std::vector<Frame> direction_net(int d, SweepOptions const& opts);

struct SweepEntry
{
    Mat frame;
    std::vector<int> plane;
    double det_c2 = 0;
    bool coordinate = false;
    std::optional<ConditionReport> condition_b;
    CoverageReport ball;
    std::size_t vn_center = 0;
};

struct SweepReport
{
    int d = 0;
    int k = 0;
    int level = 0;
    //! largest distance from a net frame to its nearest neighbour
    double spacing = 0;
    std::vector<SweepEntry> entries;
    std::size_t balls_detected = 0;
    //! entry with the smallest detected radius
    std::size_t worst = 0;
};

SweepReport direction_sweep(Params const& params, Realization const& real,
                            SweepOptions const& opts, unsigned threads = 1);

}  // namespace mperc
