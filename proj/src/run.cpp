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

#include "mperc/run.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mperc/branching.hpp"
#include "mperc/hash.hpp"
#include "mperc/parallel.hpp"
#include "mperc/radial.hpp"
#include "mperc/render.hpp"
#include "mperc/shadow.hpp"

namespace mperc
{
namespace
{
int exit_for(Verdict v)
{
    switch (v)
    {
        case Verdict::pass:
            return exit_ok;
        case Verdict::fail:
            return exit_fail;
        case Verdict::inconclusive:
            return exit_inconclusive;
    }
    return exit_error;
}

Json base_report(RunConfig const& cfg)
{
    Json out;
    out["version"] = report_version;
    out["cmd"] = cfg.cmd;
    out["params"] = to_json(cfg.params);
    out["seed"] = cfg.seed;
    out["levels"] = cfg.levels;
    return out;
}

Chart chart_of(RunConfig const& cfg)
{
    auto const& p = cfg.params;
    return select_chart(build_frame(cfg.frame, p.dim(), p.proj_dim()));
}

struct Outputs
{
    RunResult result;
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    std::optional<std::string> ppm;
    std::optional<std::string> realization;
    std::string realization_ext;
};

//---------------------------------------------------------------------------//
void run_generate(RunConfig const& cfg, Outputs& out)
{
    Realization const real = generate(cfg.params, cfg.seed, cfg.levels);
    auto& report = out.result.report;
    report["branching"] = to_json(branching_stats(real));
    report["extinct_by"] = nullptr;
    for (int n = 0; n <= real.n_max(); ++n)
    {
        if (real.extinct_by(n))
        {
            report["extinct_by"] = n;
            break;
        }
    }
    std::vector<CsvRow> rows;
    for (int n = 0; n <= real.n_max(); ++n)
        rows.push_back({n, cfg.seed, "count", static_cast<double>(real.count(n))});
    out.csv = csv_document(rows);
    if (cfg.realization_format == "binary")
    {
        std::ostringstream os;
        write_realization_binary(os, real);
        out.realization = os.str();
        out.realization_ext = ".mprc";
    }
    else
    {
        out.realization = realization_to_json(real);
        out.realization_ext = ".realization.json";
    }
    report["realization_format"] = cfg.realization_format;
}

void run_check_fg(RunConfig const& cfg, Outputs& out)
{
    auto const report = check_FG(cfg.params);
    out.result.report["result"] = to_json(report);
    out.result.exit_code = exit_for(report.verdict);
}

void run_check_b(RunConfig const& cfg, Outputs& out)
{
    Chart const chart = chart_of(cfg);
    out.result.report["chart"] = to_json(chart);
    ConditionReport report;
    try
    {
        report = check_condition_B(cfg.params, chart, cfg.condition_b);
    }
    catch (std::domain_error const& e)
    {
        report.kind = "B";
        report.verdict = Verdict::inconclusive;
        report.resolution = cfg.condition_b.h;
        report.note = e.what();
    }
    out.result.report["result"] = to_json(report);
    out.result.exit_code = exit_for(report.verdict);
}

void run_find_a(RunConfig const& cfg, Outputs& out)
{
    Chart const chart = chart_of(cfg);
    out.result.report["chart"] = to_json(chart);
    auto const report = find_condition_A(cfg.params, chart, cfg.condition_a);
    out.result.report["result"] = to_json(report);
    out.result.exit_code = exit_for(report.verdict);
}

void run_vn(RunConfig const& cfg, unsigned threads, Outputs& out)
{
    Chart const chart = chart_of(cfg);
    Vec const z = cfg.z ? Vec(Eigen::Map<Vec const>(cfg.z->data(), chart.dim()))
                        : chart.center();
    auto const report = growth_test(cfg.params, chart, z, cfg.levels,
                                    static_cast<std::size_t>(cfg.seeds), cfg.seed, threads);
    out.result.report["chart"] = to_json(chart);
    out.result.report["result"] = to_json(report);
    std::vector<CsvRow> rows;
    for (auto const& level : report.levels)
    {
        for (std::size_t i = 0; i < level.samples.size(); ++i)
            rows.push_back({level.n, report.seeds[i], "V", double(level.samples[i])});
    }
    for (auto const& level : report.levels)
    {
        rows.push_back({level.n, {}, "mean", level.mean});
        rows.push_back({level.n, {}, "std_error", level.std_error});
        rows.push_back({level.n, {}, "expected", level.expected});
        rows.push_back({level.n, {}, "reference", level.reference});
        rows.push_back({level.n, {}, "survivors", double(level.survivors)});
        rows.push_back({level.n, {}, "growth_frequency", level.growth_frequency});
    }
    out.csv = csv_document(rows);
}

void run_sweep(RunConfig const& cfg, unsigned threads, Outputs& out)
{
    Realization const real = generate(cfg.params, cfg.seed, cfg.levels);
    SweepOptions opts;
    opts.k = cfg.params.proj_dim();
    opts.net_size = cfg.net_size;
    opts.level = cfg.levels;
    opts.include_axes = cfg.include_axes;
    opts.frame_seed = cfg.seed;
    opts.coverage = cfg.coverage;
    opts.condition_b = cfg.condition_b;
    auto const report = direction_sweep(cfg.params, real, opts, threads);
    out.result.report["result"] = to_json(report);
    std::vector<CsvRow> rows;
    for (std::size_t j = 0; j < report.entries.size(); ++j)
    {
        auto const& e = report.entries[j];
        std::string const tag = "[" + std::to_string(j) + "]";
        rows.push_back({cfg.levels, cfg.seed, "radius" + tag, e.ball.radius});
        rows.push_back({cfg.levels, cfg.seed, "radius_cells" + tag, e.ball.radius_cells});
        rows.push_back({cfg.levels, cfg.seed, "covered_fraction" + tag,
                        e.ball.covered_fraction});
        rows.push_back({cfg.levels, cfg.seed, "vn_center" + tag, double(e.vn_center)});
        if (e.condition_b && e.condition_b->b)
            rows.push_back({cfg.levels, cfg.seed, "eps_hat" + tag, e.condition_b->b->eps_hat});
    }
    out.csv = csv_document(rows);
}

//---------------------------------------------------------------------------//
using CoverageRun = std::function<CoverageReport(std::uint64_t seed, int n,
                                                 CoverageOptions const& opts)>;

/*!
 * Shared driver for ball / radial / coradial: one report per (seed, level)
 * for seeds surviving to the deepest requested level.
 */
void run_coverage_batch(RunConfig const& cfg, unsigned threads, CoverageRun const& experiment,
                        Outputs& out)
{
    auto const& levels = cfg.ball_levels;
    int const deepest = *std::max_element(levels.begin(), levels.end());
    auto const count = static_cast<std::size_t>(cfg.seeds);
    std::vector<std::uint64_t> seeds(count);
    std::vector<char> alive(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        seeds[i] = derive_seed(cfg.seed, i);
        alive[i] = survives_to(cfg.params, seeds[i], deepest);
    }
    auto const first_alive =
        std::find(alive.begin(), alive.end(), char(1)) - alive.begin();

    std::vector<std::vector<std::optional<CoverageReport>>> results(
        count, std::vector<std::optional<CoverageReport>>(levels.size()));
    parallel_for(count, threads, [&](std::size_t i) {
        if (!alive[i])
            return;
        for (std::size_t l = 0; l < levels.size(); ++l)
        {
            CoverageOptions opts = cfg.coverage;
            opts.keep_cells = static_cast<std::ptrdiff_t>(i) == first_alive &&
                              l + 1 == levels.size();
            results[i][l] = experiment(seeds[i], levels[l], opts);
        }
    });

    Json per_seed = Json::array();
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < count; ++i)
    {
        Json item;
        item["seed"] = seeds[i];
        item["survives"] = bool(alive[i]);
        Json reports = Json::array();
        for (std::size_t l = 0; l < levels.size(); ++l)
        {
            auto const& r = results[i][l];
            reports.push_back(r ? to_json(*r) : Json(nullptr));
            if (!r)
                continue;
            rows.push_back({levels[l], seeds[i], "radius", r->radius});
            rows.push_back({levels[l], seeds[i], "radius_cells", r->radius_cells});
            rows.push_back({levels[l], seeds[i], "covered_fraction", r->covered_fraction});
        }
        item["reports"] = std::move(reports);
        per_seed.push_back(std::move(item));
    }

    Json summary = Json::array();
    for (std::size_t l = 0; l < levels.size(); ++l)
    {
        std::size_t survivors = 0, detected = 0;
        double radius_sum = 0;
        for (std::size_t i = 0; i < count; ++i)
        {
            if (!results[i][l])
                continue;
            ++survivors;
            radius_sum += results[i][l]->radius;
            if (results[i][l]->ball)
                ++detected;
        }
        Json item;
        item["level"] = levels[l];
        item["survivors"] = survivors;
        item["detected"] = detected;
        double const nan = std::nan("");
        double const freq = survivors ? double(detected) / double(survivors) : nan;
        double const mean = survivors ? radius_sum / double(survivors) : nan;
        item["detected_fraction"] = std::isfinite(freq) ? Json(freq) : Json(nullptr);
        item["mean_radius"] = std::isfinite(mean) ? Json(mean) : Json(nullptr);
        summary.push_back(std::move(item));
        rows.push_back({levels[l], {}, "survivors", double(survivors)});
        rows.push_back({levels[l], {}, "detected_fraction", freq});
        rows.push_back({levels[l], {}, "mean_radius", mean});
    }
    out.result.report["ball_levels"] = levels;
    out.result.report["seeds"] = seeds;
    out.result.report["summary"] = std::move(summary);
    out.result.report["results"] = std::move(per_seed);
    out.csv = csv_document(rows);

    if (first_alive < static_cast<std::ptrdiff_t>(count))
    {
        auto const& r = results[first_alive].back();
        int const k = static_cast<int>(r->grid_shape.size());
        if (k <= 2 && !r->cells.empty())
            out.ppm = coverage_ppm(*r);
    }
}

void run_render(RunConfig const& cfg, Outputs& out)
{
    Chart const chart = chart_of(cfg);
    std::vector<Polytope> shadows;
    if (cfg.shadows)
    {
        Realization const real = generate(cfg.params, cfg.seed, cfg.levels);
        for (std::size_t i = 0; i < real.count(cfg.levels); ++i)
            shadows.push_back(shadow_of_cube(chart, real.cube_index(cfg.levels, i)));
    }
    out.svg = render_delta_svg(chart, cfg.lambdas, shadows);
    auto& report = out.result.report;
    report["chart"] = to_json(chart);
    report["lambdas"] = cfg.lambdas;
    report["shadows"] = shadows.size();
}

}  // namespace

//---------------------------------------------------------------------------//
namespace
{
Outputs execute_all(RunConfig const& cfg, unsigned threads)
{
    Outputs out;
    out.result.report = base_report(cfg);
    std::string const& cmd = cfg.cmd;
    if (cmd == "generate")
        run_generate(cfg, out);
    else if (cmd == "check-fg")
        run_check_fg(cfg, out);
    else if (cmd == "check-b")
        run_check_b(cfg, out);
    else if (cmd == "find-a")
        run_find_a(cfg, out);
    else if (cmd == "vn")
        run_vn(cfg, threads, out);
    else if (cmd == "sweep")
        run_sweep(cfg, threads, out);
    else if (cmd == "ball")
    {
        Chart const chart = chart_of(cfg);
        out.result.report["chart"] = to_json(chart);
        run_coverage_batch(cfg, threads,
                           [&](std::uint64_t seed, int n, CoverageOptions const& opts) {
                               return detect_ball(cfg.params, seed, chart, n, opts);
                           },
                           out);
    }
    else if (cmd == "radial")
    {
        RadialCenter const center{Eigen::Map<Vec const>(cfg.t.data(), cfg.params.dim()),
                                  cfg.margin};
        run_coverage_batch(cfg, threads,
                           [&](std::uint64_t seed, int n, CoverageOptions const& opts) {
                               return radial_experiment(cfg.params, seed, center, n, opts);
                           },
                           out);
    }
    else if (cmd == "coradial")
    {
        Vec const t = Eigen::Map<Vec const>(cfg.t.data(), cfg.params.dim());
        run_coverage_batch(cfg, threads,
                           [&](std::uint64_t seed, int n, CoverageOptions const& opts) {
                               return coradial_experiment(cfg.params, seed, t, n, opts);
                           },
                           out);
    }
    else if (cmd == "render")
        run_render(cfg, out);
    else
        throw std::invalid_argument("unknown command: " + cmd);
    out.result.report["exit_code"] = out.result.exit_code;
    return out;
}

}  // namespace

RunResult execute(RunConfig const& cfg, unsigned threads)
{
    return execute_all(cfg, threads).result;
}

RunResult run(RunConfig const& cfg, unsigned threads)
{
    Outputs out = execute_all(cfg, threads);
    auto& artifacts = out.result.artifacts;
    auto emit = [&](std::string const& path, std::string const& contents) {
        write_file(path, contents);
        artifacts.push_back(path);
    };
    emit(cfg.out + ".json", dump_report(out.result.report));
    if (out.csv)
        emit(cfg.out + ".csv", *out.csv);
    if (out.svg)
        emit(cfg.out + ".svg", *out.svg);
    if (out.ppm)
        emit(cfg.out + ".ppm", *out.ppm);
    if (out.realization)
        emit(cfg.out + out.realization_ext, *out.realization);
    return std::move(out.result);
}

}  // namespace mperc
