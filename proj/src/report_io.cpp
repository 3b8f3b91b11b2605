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

#include "mperc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mperc
{
namespace
{
Json number_or_null(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

}  // namespace

Json to_json(Vec const& v)
{
    Json out = Json::array();
    for (int i = 0; i < v.size(); ++i)
        out.push_back(number_or_null(v[i]));
    return out;
}

Json to_json(Mat const& m)
{
    Json out = Json::array();
    for (int r = 0; r < m.rows(); ++r)
    {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(number_or_null(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(Params const& params)
{
    Json out;
    out["d"] = params.dim();
    out["M"] = params.base();
    out["k"] = params.proj_dim();
    Json p = Json::array();
    for (double x : params.probabilities())
        p.push_back(x);
    out["p"] = std::move(p);
    out["offspring_mean"] = params.offspring_mean();
    return out;
}

Json to_json(Frame const& frame)
{
    Json out;
    out["d"] = frame.ambient();
    out["k"] = frame.dim();
    out["columns"] = to_json(Mat(frame.matrix().transpose()));
    return out;
}

Json to_json(Chart const& chart)
{
    Json out;
    out["frame"] = to_json(chart.frame());
    out["complement"] = to_json(chart.complement());
    out["plane"] = chart.plane();
    out["fiber_axes"] = chart.fiber_axes();
    out["det_c2"] = chart.det_c2();
    out["N"] = to_json(chart.n());
    out["center"] = to_json(chart.center());
    if (chart.dim() <= 3)
    {
        Json verts = Json::array();
        for (auto const& v : chart.delta().vertices())
            verts.push_back(to_json(v));
        out["delta_vertices"] = std::move(verts);
    }
    return out;
}

Json to_json(ConditionReport const& report)
{
    Json out;
    out["kind"] = report.kind;
    out["verdict"] = to_string(report.verdict);
    out["resolution"] = number_or_null(report.resolution);
    out["note"] = report.note;
    if (report.fg)
    {
        Json w;
        w["min_sum"] = report.fg->min_sum;
        Json cons = Json::array();
        for (auto const& c : report.fg->constraints)
        {
            Json item;
            item["axes"] = c.axes;
            item["digits"] = c.digits;
            item["sum"] = c.sum;
            cons.push_back(std::move(item));
        }
        w["constraints"] = std::move(cons);
        out["fg"] = std::move(w);
    }
    if (report.b)
    {
        Json w;
        w["eps_hat"] = number_or_null(report.b->eps_hat);
        w["argmin"] = to_json(report.b->argmin);
        w["floor"] = report.b->floor;
        w["margin"] = report.b->margin;
        w["points"] = report.b->points;
        out["b"] = std::move(w);
    }
    if (report.a)
    {
        Json w;
        w["lambda1"] = report.a->lambda1;
        w["lambda2"] = report.a->lambda2;
        w["r"] = report.a->r;
        w["margin"] = number_or_null(report.a->margin);
        w["points"] = report.a->points;
        w["r_searched"] = report.a->r_searched;
        w["budget_exhausted"] = report.a->budget_exhausted;
        out["a"] = std::move(w);
    }
    return out;
}

Json to_json(BranchingStats const& stats)
{
    Json out;
    out["offspring_mean"] = stats.offspring_mean;
    out["survival"] = stats.survival;
    out["expected_dimension"] = number_or_null(stats.expected_dimension);
    out["level_counts"] = stats.level_counts;
    return out;
}

Json to_json(VnReport const& report)
{
    Json out;
    out["z"] = to_json(report.z);
    out["master_seed"] = report.master_seed;
    out["seeds"] = report.seeds;
    Json levels = Json::array();
    for (auto const& l : report.levels)
    {
        Json item;
        item["n"] = l.n;
        item["mean"] = number_or_null(l.mean);
        item["std_error"] = number_or_null(l.std_error);
        item["min"] = l.min;
        item["max"] = l.max;
        item["survivors"] = l.survivors;
        item["growth_frequency"] = number_or_null(l.growth_frequency);
        item["reference"] = l.reference;
        item["expected"] = l.expected;
        item["samples"] = l.samples;
        levels.push_back(std::move(item));
    }
    out["levels"] = std::move(levels);
    return out;
}

Json to_json(CoverageReport const& report)
{
    Json out;
    out["target"] = report.target;
    if (report.source.size() > 0)
        out["source"] = to_json(report.source);
    out["level"] = report.level;
    out["mode"] = to_string(report.mode);
    out["resolution"] = report.resolution;
    out["grid_shape"] = report.grid_shape;
    if (report.ball)
    {
        Json ball;
        ball["center"] = to_json(report.ball->center);
        ball["radius"] = report.ball->radius;
        out["ball"] = std::move(ball);
    }
    else
    {
        out["ball"] = nullptr;
    }
    out["radius"] = report.radius;
    out["radius_cells"] = report.radius_cells;
    out["grid_radius"] = report.grid_radius;
    out["covered_cells"] = report.covered_cells;
    out["domain_cells"] = report.domain_cells;
    out["covered_fraction"] = number_or_null(report.covered_fraction);
    out["shapes"] = report.shapes;
    out["test_points"] = report.test_points;
    out["uncovered_test_points"] = report.uncovered_test_points;
    out["status"] = report.status;
    out["note"] = report.note;
    return out;
}

Json to_json(SweepReport const& report)
{
    Json out;
    out["d"] = report.d;
    out["k"] = report.k;
    out["level"] = report.level;
    out["spacing"] = report.spacing;
    out["balls_detected"] = report.balls_detected;
    out["worst"] = report.worst;
    Json entries = Json::array();
    for (auto const& e : report.entries)
    {
        Json item;
        item["frame"] = to_json(Mat(e.frame.transpose()));
        item["plane"] = e.plane;
        item["det_c2"] = e.det_c2;
        item["coordinate"] = e.coordinate;
        item["condition_b"] = e.condition_b ? to_json(*e.condition_b) : Json(nullptr);
        item["ball"] = to_json(e.ball);
        item["vn_center"] = e.vn_center;
        entries.push_back(std::move(item));
    }
    out["entries"] = std::move(entries);
    return out;
}

std::string dump_report(Json const& doc)
{
    return doc.dump(2) + "\n";
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_document(std::vector<CsvRow> const& rows)
{
    std::string out = "level,seed,statistic,value\n";
    for (auto const& row : rows)
    {
        out += std::to_string(row.level);
        out += ',';
        if (row.seed)
            out += std::to_string(*row.seed);
        out += ',';
        out += row.statistic;
        out += ',';
        out += format_double(row.value);
        out += '\n';
    }
    return out;
}

void write_file(std::string const& path, std::string const& contents)
{
    std::filesystem::path const p(path);
    if (p.has_parent_path())
    {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec)
            throw std::runtime_error("cannot create directory " +
                                     p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace mperc
