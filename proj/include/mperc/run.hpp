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

#include "config.hpp"
#include "report_io.hpp"

namespace mperc
{
//! Process exit codes
enum ExitCode : int
{
    exit_ok = 0,
    exit_error = 1,
    exit_fail = 2,
    exit_inconclusive = 3,
};

struct RunResult
{
    int exit_code = exit_ok;
    Json report;
    //! paths written, report first
    std::vector<std::string> artifacts;
};

/*!
 * Execute one configured command and write its artifacts:
 * <out>.json always, plus <out>.csv (series), <out>.svg (render) and
 * <out>.ppm (coverage grids) where the command produces them.
 *
 * Batch commands (vn, ball, radial, coradial with `seeds` > 0) use the
 * realization seeds derive_seed(seed, i), i = 0..seeds-1; generate, sweep
 * and render use `seed` itself. Reports contain no timing or thread data,
 * so a fixed config produces identical files.
 */
RunResult run(RunConfig const& cfg, unsigned threads = 1);

//! Build the report document without writing anything
RunResult execute(RunConfig const& cfg, unsigned threads = 1);

}  // namespace mperc
