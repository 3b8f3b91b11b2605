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
#include <stdexcept>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "coverage.hpp"
#include "frame.hpp"
#include "params.hpp"

namespace mperc
{
//! Schema violation, with the JSON path of the offending field ("$.p[3]")
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string path, std::string const& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path))
    {
    }
    std::string const& path() const { return path_; }

  private:
    std::string path_;
};

inline constexpr int config_version = 1;

std::vector<std::string> const& command_names();

//! How the projection frame is chosen
struct FrameSpec
{
    enum class Kind
    {
        axes,        //!< coordinate axes
        vectors,     //!< explicit columns, orthonormalized
        complement,  //!< explicit fiber directions
        random,      //!< Haar-random frame from a seed
        diagonal,    //!< fiber direction (1,...,1), needs k = d - 1
    };
    Kind kind = Kind::axes;
    std::vector<int> axes;
    std::vector<std::vector<double>> columns;
    std::uint64_t seed = 0;
};

Frame build_frame(FrameSpec const& spec, int d, int k);

struct RunConfig
{
    std::string cmd;
    Params params = Params::equal(2, 2, 1, 1.0);
    std::uint64_t seed = 0;
    int levels = 4;
    //! independent realizations for batch commands (seeds derived from seed)
    int seeds = 1;
    FrameSpec frame;

    // coverage (ball, radial, coradial, sweep)
    CoverageOptions coverage;
    //! levels examined by `ball`; defaults to {levels}
    std::vector<int> ball_levels;

    // conditions
    ConditionBOptions condition_b;
    ConditionAOptions condition_a;

    // vn
    std::optional<std::vector<double>> z;

    // sweep
    int net_size = 16;
    bool include_axes = true;

    // radial / coradial
    std::vector<double> t;
    double margin = 0.1;

    // render
    std::vector<double> lambdas;
    bool shadows = false;

    // generate
    std::string realization_format = "json";

    //! artifact path prefix; files are <out>.json, <out>.csv, ...
    std::string out;
};

/*!
 * Parse and validate a JSON configuration. Unknown fields are rejected.
 * Throws ConfigError naming the offending field.
 */
RunConfig parse_config(std::string const& text);

}  // namespace mperc
