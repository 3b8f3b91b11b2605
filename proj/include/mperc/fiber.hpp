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

#include "chart.hpp"

namespace mperc
{
struct FiberEstimate
{
    double value = 0;
    double std_error = 0;
    bool exact = true;
};

/*!
 * Volume of { u in [0,1]^{d-k} : z + N u in [0,1]^k }.
 *
 * This is the fiber Pi^{-1}(z) inside the unit cube measured in the u
 * coordinates; the (d-k)-dimensional Hausdorff measure of the fiber is a
 * constant multiple sqrt(det(I + N^T N)) of it. Exact for d-k <= 2
 * (interval intersection, polygon clipping); randomized quasi-Monte Carlo
 * with a standard error for d-k >= 3.
 */
FiberEstimate fiber_volume_estimate(Chart const& chart, Vec const& z,
                                    int qmc_points = 1 << 14);

double fiber_volume(Chart const& chart, Vec const& z);

}  // namespace mperc
