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

#include <string>
#include <vector>

#include "chart.hpp"
#include "coverage.hpp"
#include "polytope.hpp"

namespace mperc
{
/*!
 * SVG 1.1 drawing of Delta for k = 1 or 2.
 *
 * Delta is drawn with a continuous stroke; the homothets lambda * Delta
 * about the chart center follow in decreasing lambda with dashed, dotted,
 * then dash-dot strokes. Shadows are thin outlines. For k = 1 everything is
 * drawn as intervals on stacked rows. Throws UnsupportedDimension otherwise.
 */
std::string render_delta_svg(Chart const& chart, std::vector<double> const& lambdas,
                             std::vector<Polytope> const& shadows);

/*!
 * Binary PPM (P6) of a coverage grid: white outside the domain, light grey
 * uncovered, dark grey covered, red inside the reported ball. k = 2 maps
 * grid axis 0 to columns and axis 1 to rows (upwards); k = 1 is a strip
 * `strip_height` pixels tall. Throws if the report kept no cells.
 */
std::string coverage_ppm(CoverageReport const& report, int strip_height = 16);

}  // namespace mperc
