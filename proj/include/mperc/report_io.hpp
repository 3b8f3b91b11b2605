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

#include "json.hpp"

#include "branching.hpp"
#include "chart.hpp"
#include "conditions.hpp"
#include "coverage.hpp"
#include "experiments.hpp"
#include "params.hpp"

namespace mperc
{
//! Reports keep fields in insertion order; NaN and infinities become null
using Json = nlohmann::ordered_json;

inline constexpr int report_version = 1;

Json to_json(Params const& params);
Json to_json(Frame const& frame);
//! Matrices are row-major arrays of rows
Json to_json(Mat const& m);
Json to_json(Vec const& v);
Json to_json(Chart const& chart);
Json to_json(ConditionReport const& report);
Json to_json(BranchingStats const& stats);
Json to_json(VnReport const& report);
//! The per-cell array is not serialized (see coverage_ppm)
Json to_json(CoverageReport const& report);
Json to_json(SweepReport const& report);

//! Two-space indented document with a trailing newline
std::string dump_report(Json const& doc);

//! One row of the long-format series files
struct CsvRow
{
    int level = 0;
    std::optional<std::uint64_t> seed;  //!< empty for aggregates
    std::string statistic;
    double value = 0;
};

//! Header "level,seed,statistic,value"; doubles in shortest round-trip form
std::string csv_document(std::vector<CsvRow> const& rows);

//! Shortest decimal that reads back to the same double; "nan"/"inf" otherwise
std::string format_double(double x);

//! Write a whole file, creating parent directories; throws on I/O failure
void write_file(std::string const& path, std::string const& contents);

}  // namespace mperc
