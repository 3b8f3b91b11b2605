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

#include "mperc/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "mperc/radial.hpp"

namespace mperc
{
using nlohmann::json;

namespace
{
std::string const& expect_string(json const& v, std::string const& path)
{
    if (!v.is_string())
        throw ConfigError(path, "expected a string");
    return v.get_ref<std::string const&>();
}

double expect_number(json const& v, std::string const& path)
{
    if (!v.is_number())
        throw ConfigError(path, "expected a number");
    double const x = v.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(path, "expected a finite number");
    return x;
}

std::int64_t expect_int(json const& v, std::string const& path, std::int64_t lo,
                        std::int64_t hi)
{
    if (!v.is_number_integer())
        throw ConfigError(path, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > std::uint64_t(hi))
        throw ConfigError(path, "out of range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    auto const x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        throw ConfigError(path, "out of range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return x;
}

std::uint64_t expect_u64(json const& v, std::string const& path)
{
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(path, "expected a non-negative integer");
}

bool expect_bool(json const& v, std::string const& path)
{
    if (!v.is_boolean())
        throw ConfigError(path, "expected true or false");
    return v.get<bool>();
}

std::vector<double> expect_numbers(json const& v, std::string const& path)
{
    if (!v.is_array())
        throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(expect_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void check_keys(json const& obj, std::string const& path,
                std::set<std::string> const& allowed)
{
    if (!obj.is_object())
        throw ConfigError(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        if (!allowed.count(it.key()))
            throw ConfigError(path + "." + it.key(), "unknown field");
    }
}

json const& require(json const& obj, std::string const& key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(path + "." + key, "missing required field");
    return *it;
}

void check_probability(double p, std::string const& path)
{
    if (!(p >= 0 && p <= 1))
        throw ConfigError(path, "probability must lie in [0,1]");
}

Params parse_params(json const& root, int d, int M, int k)
{
    json const& p = require(root, "p", "$");
    auto const table_size = ipow(M, d);
    if (p.is_number())
    {
        double const x = expect_number(p, "$.p");
        check_probability(x, "$.p");
        return Params::equal(d, M, k, x);
    }
    if (p.is_array())
    {
        if (static_cast<std::int64_t>(p.size()) != table_size)
            throw ConfigError("$.p", "table must have M^d = " + std::to_string(table_size) +
                                         " entries, got " + std::to_string(p.size()));
        auto const table = expect_numbers(p, "$.p");
        for (std::size_t i = 0; i < table.size(); ++i)
            check_probability(table[i], "$.p[" + std::to_string(i) + "]");
        return Params(d, M, k, table);
    }
    if (p.is_object())
    {
        if (p.size() != 1)
            throw ConfigError("$.p", "expected exactly one of \"equal\" or \"ex2\"");
        if (p.contains("equal"))
        {
            double const x = expect_number(p["equal"], "$.p.equal");
            check_probability(x, "$.p.equal");
            return Params::equal(d, M, k, x);
        }
        if (p.contains("ex2"))
        {
            json const& ex = p["ex2"];
            check_keys(ex, "$.p.ex2", {"p", "q"});
            double const center = expect_number(require(ex, "p", "$.p.ex2"), "$.p.ex2.p");
            double const other = expect_number(require(ex, "q", "$.p.ex2"), "$.p.ex2.q");
            check_probability(center, "$.p.ex2.p");
            check_probability(other, "$.p.ex2.q");
            if (d != 3 || M != 3)
                throw ConfigError("$.p.ex2", "the ex2 table needs d = 3 and M = 3");
            Params const ex2 = Params::ex2(center, other);
            auto const table = ex2.probabilities();
            return Params(3, 3, k, {table.begin(), table.end()});
        }
        throw ConfigError("$.p." + p.begin().key(), "unknown field");
    }
    throw ConfigError("$.p", "expected a number, a table, {\"equal\": p} or "
                             "{\"ex2\": {\"p\": .., \"q\": ..}}");
}

std::vector<std::vector<double>> parse_columns(json const& v, std::string const& path,
                                               int d, int count)
{
    if (!v.is_array() || static_cast<int>(v.size()) != count)
        throw ConfigError(path, "expected " + std::to_string(count) + " vectors");
    std::vector<std::vector<double>> cols;
    for (int i = 0; i < count; ++i)
    {
        std::string const item = path + "[" + std::to_string(i) + "]";
        auto col = expect_numbers(v[i], item);
        if (static_cast<int>(col.size()) != d)
            throw ConfigError(item, "expected a vector of length d = " + std::to_string(d));
        cols.push_back(std::move(col));
    }
    return cols;
}

FrameSpec parse_frame(json const& v, int d, int k)
{
    FrameSpec spec;
    if (v.is_string())
    {
        if (v.get<std::string>() != "diagonal")
            throw ConfigError("$.frame", "unknown frame \"" + v.get<std::string>() + "\"");
        if (k != d - 1)
            throw ConfigError("$.frame", "the diagonal frame needs k = d - 1");
        spec.kind = FrameSpec::Kind::diagonal;
        return spec;
    }
    check_keys(v, "$.frame", {"axes", "vectors", "complement", "random"});
    if (v.size() != 1)
        throw ConfigError("$.frame", "expected exactly one of axes, vectors, "
                                     "complement, random");
    if (v.contains("axes"))
    {
        json const& axes = v["axes"];
        if (!axes.is_array() || static_cast<int>(axes.size()) != k)
            throw ConfigError("$.frame.axes", "expected k = " + std::to_string(k) + " axes");
        std::set<int> seen;
        for (std::size_t i = 0; i < axes.size(); ++i)
        {
            int const a = static_cast<int>(
                expect_int(axes[i], "$.frame.axes[" + std::to_string(i) + "]", 0, d - 1));
            if (!seen.insert(a).second)
                throw ConfigError("$.frame.axes[" + std::to_string(i) + "]", "repeated axis");
            spec.axes.push_back(a);
        }
        spec.kind = FrameSpec::Kind::axes;
    }
    else if (v.contains("vectors"))
    {
        spec.kind = FrameSpec::Kind::vectors;
        spec.columns = parse_columns(v["vectors"], "$.frame.vectors", d, k);
    }
    else if (v.contains("complement"))
    {
        spec.kind = FrameSpec::Kind::complement;
        spec.columns = parse_columns(v["complement"], "$.frame.complement", d, d - k);
    }
    else
    {
        spec.kind = FrameSpec::Kind::random;
        spec.seed = expect_u64(v["random"], "$.frame.random");
    }
    try
    {
        build_frame(spec, d, k);
    }
    catch (std::invalid_argument const& e)
    {
        throw ConfigError("$.frame", e.what());
    }
    return spec;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& command_names()
{
    static std::vector<std::string> const names = {
        "generate", "check-fg", "check-b", "find-a", "vn",
        "sweep",    "ball",     "radial",  "coradial", "render"};
    return names;
}

Frame build_frame(FrameSpec const& spec, int d, int k)
{
    auto to_matrix = [d](std::vector<std::vector<double>> const& cols) {
        Mat m(d, static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
        {
            for (int r = 0; r < d; ++r)
                m(r, c) = cols[c][r];
        }
        return m;
    };
    switch (spec.kind)
    {
        case FrameSpec::Kind::axes:
        {
            std::vector<int> axes = spec.axes;
            if (axes.empty())
            {
                for (int a = 0; a < k; ++a)
                    axes.push_back(a);
            }
            return Frame::coordinate(d, axes);
        }
        case FrameSpec::Kind::vectors:
            return Frame::orthonormalize(to_matrix(spec.columns));
        case FrameSpec::Kind::complement:
        {
            Mat const c = Frame::orthonormalize(to_matrix(spec.columns)).matrix();
            return Frame::complement_of(c);
        }
        case FrameSpec::Kind::random:
            return Frame::random(d, k, spec.seed);
        case FrameSpec::Kind::diagonal:
        {
            if (k != d - 1)
                throw std::invalid_argument("diagonal frame needs k = d - 1");
            Mat c = Mat::Constant(d, 1, 1.0 / std::sqrt(double(d)));
            return Frame::complement_of(c);
        }
    }
    throw std::invalid_argument("unknown frame kind");
}

RunConfig parse_config(std::string const& text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    check_keys(root, "$",
               {"version", "cmd", "d", "M", "k", "p", "seed", "levels", "seeds",
                "frame", "resolution", "mode", "samples_per_cell", "ball_levels", "h",
                "margin_factor", "floor_factor", "lambda_grid", "r_max", "budget", "z",
                "net_size", "include_axes", "t", "margin", "lambdas", "shadows",
                "realization_format", "out"});

    RunConfig cfg;
    if (root.contains("version") &&
        expect_int(root["version"], "$.version", 0, 1 << 30) != config_version)
        throw ConfigError("$.version", "unsupported version (expected " +
                                           std::to_string(config_version) + ")");

    cfg.cmd = expect_string(require(root, "cmd", "$"), "$.cmd");
    auto const& names = command_names();
    if (std::find(names.begin(), names.end(), cfg.cmd) == names.end())
        throw ConfigError("$.cmd", "unknown command \"" + cfg.cmd + "\"");

    int const d = static_cast<int>(expect_int(require(root, "d", "$"), "$.d", 2, 24));
    int const M = static_cast<int>(expect_int(require(root, "M", "$"), "$.M", 2, 1 << 12));
    if (ipow(M, d) > (std::int64_t{1} << 24))
        throw ConfigError("$.M", "M^d exceeds 2^24 first-level cells");
    int const k = static_cast<int>(expect_int(require(root, "k", "$"), "$.k", 1, 1 << 12));
    if (k >= d)
        throw ConfigError("$.k", "need 1 <= k <= d - 1");
    cfg.params = parse_params(root, d, M, k);

    if (root.contains("seed"))
        cfg.seed = expect_u64(root["seed"], "$.seed");
    if (root.contains("levels"))
        cfg.levels = static_cast<int>(expect_int(root["levels"], "$.levels", 0, 40));
    if (root.contains("seeds"))
        cfg.seeds = static_cast<int>(expect_int(root["seeds"], "$.seeds", 0, 1 << 24));
    if (root.contains("frame"))
        cfg.frame = parse_frame(root["frame"], d, k);

    if (root.contains("resolution"))
    {
        cfg.coverage.resolution = expect_number(root["resolution"], "$.resolution");
        if (!(cfg.coverage.resolution > 0 && cfg.coverage.resolution <= 1))
            throw ConfigError("$.resolution", "must lie in (0,1]");
    }
    if (root.contains("mode"))
    {
        auto const& mode = expect_string(root["mode"], "$.mode");
        if (mode == "center")
            cfg.coverage.mode = CoverageMode::center;
        else if (mode == "corners")
            cfg.coverage.mode = CoverageMode::corners;
        else
            throw ConfigError("$.mode", "expected \"center\" or \"corners\"");
    }
    if (root.contains("samples_per_cell"))
        cfg.coverage.samples_per_cell = static_cast<int>(
            expect_int(root["samples_per_cell"], "$.samples_per_cell", 0, 1024));
    if (root.contains("ball_levels"))
    {
        json const& levels = root["ball_levels"];
        if (!levels.is_array() || levels.empty())
            throw ConfigError("$.ball_levels", "expected a non-empty array of levels");
        for (std::size_t i = 0; i < levels.size(); ++i)
            cfg.ball_levels.push_back(static_cast<int>(expect_int(
                levels[i], "$.ball_levels[" + std::to_string(i) + "]", 0, 40)));
    }

    if (root.contains("h"))
    {
        double const h = expect_number(root["h"], "$.h");
        if (!(h > 0 && h < 1))
            throw ConfigError("$.h", "must lie in (0,1)");
        cfg.condition_b.h = h;
        cfg.condition_a.h = h;
    }
    if (root.contains("margin_factor"))
    {
        cfg.condition_b.margin_factor = expect_number(root["margin_factor"], "$.margin_factor");
        if (!(cfg.condition_b.margin_factor >= 0))
            throw ConfigError("$.margin_factor", "must be >= 0");
    }
    if (root.contains("floor_factor"))
    {
        cfg.condition_b.floor_factor = expect_number(root["floor_factor"], "$.floor_factor");
        if (!(cfg.condition_b.floor_factor >= 0))
            throw ConfigError("$.floor_factor", "must be >= 0");
    }
    if (root.contains("lambda_grid"))
    {
        cfg.condition_a.lambda_grid = expect_numbers(root["lambda_grid"], "$.lambda_grid");
        for (std::size_t i = 0; i < cfg.condition_a.lambda_grid.size(); ++i)
        {
            double const l = cfg.condition_a.lambda_grid[i];
            if (!(l > 0 && l < 1))
                throw ConfigError("$.lambda_grid[" + std::to_string(i) + "]",
                                  "must lie in (0,1)");
        }
    }
    if (root.contains("r_max"))
        cfg.condition_a.r_max = static_cast<int>(expect_int(root["r_max"], "$.r_max", 1, 64));
    if (root.contains("budget"))
    {
        cfg.condition_a.budget = expect_u64(root["budget"], "$.budget");
        if (cfg.condition_a.budget == 0)
            throw ConfigError("$.budget", "must be positive");
    }

    if (root.contains("z"))
    {
        auto z = expect_numbers(root["z"], "$.z");
        if (static_cast<int>(z.size()) != k)
            throw ConfigError("$.z", "expected a point with k = " + std::to_string(k) +
                                         " coordinates");
        cfg.z = std::move(z);
    }
    if (root.contains("net_size"))
        cfg.net_size = static_cast<int>(expect_int(root["net_size"], "$.net_size", 1, 1 << 16));
    if (root.contains("include_axes"))
        cfg.include_axes = expect_bool(root["include_axes"], "$.include_axes");

    if (root.contains("t"))
    {
        cfg.t = expect_numbers(root["t"], "$.t");
        if (static_cast<int>(cfg.t.size()) != d)
            throw ConfigError("$.t", "expected a point with d = " + std::to_string(d) +
                                         " coordinates");
    }
    if (root.contains("margin"))
    {
        cfg.margin = expect_number(root["margin"], "$.margin");
        if (!(cfg.margin >= 0))
            throw ConfigError("$.margin", "must be >= 0");
    }
    if (root.contains("lambdas"))
    {
        cfg.lambdas = expect_numbers(root["lambdas"], "$.lambdas");
        for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
        {
            if (!(cfg.lambdas[i] > 0 && cfg.lambdas[i] <= 1))
                throw ConfigError("$.lambdas[" + std::to_string(i) + "]", "must lie in (0,1]");
        }
    }
    if (root.contains("shadows"))
        cfg.shadows = expect_bool(root["shadows"], "$.shadows");
    if (root.contains("realization_format"))
    {
        cfg.realization_format =
            expect_string(root["realization_format"], "$.realization_format");
        if (cfg.realization_format != "json" && cfg.realization_format != "binary")
            throw ConfigError("$.realization_format", "expected \"json\" or \"binary\"");
    }
    cfg.out = root.contains("out") ? expect_string(root["out"], "$.out")
                                   : "mperc-" + cfg.cmd;
    if (cfg.out.empty())
        throw ConfigError("$.out", "must not be empty");

    // command preconditions
    std::string const& cmd = cfg.cmd;
    bool const geometric = cmd == "check-b" || cmd == "find-a" || cmd == "vn" ||
                           cmd == "ball" || cmd == "sweep" || cmd == "render";
    if (geometric && k > 3)
        throw ConfigError("$.k", "command \"" + cmd + "\" needs k <= 3");
    if (cmd == "render" && k > 2)
        throw ConfigError("$.k", "render supports k = 1 or 2");
    if (cmd == "radial" || cmd == "coradial")
    {
        if (!root.contains("t"))
            throw ConfigError("$.t", "missing required field");
        if (cmd == "radial" && k != d - 1)
            throw ConfigError("$.k", "radial projections use k = d - 1");
        if (cmd == "radial" && d - 1 > 3)
            throw ConfigError("$.d", "radial projections need d <= 4");
        if (cmd == "coradial" && k != 1)
            throw ConfigError("$.k", "co-radial projections use k = 1");
        if (cmd == "radial")
        {
            RadialCenter center{Eigen::Map<Vec const>(cfg.t.data(), d), cfg.margin};
            try
            {
                check_separation(center);
            }
            catch (std::invalid_argument const& e)
            {
                throw ConfigError("$.t", e.what());
            }
        }
    }
    for (std::size_t i = 0; i < cfg.ball_levels.size(); ++i)
    {
        if (cfg.ball_levels[i] > cfg.levels)
            throw ConfigError("$.ball_levels[" + std::to_string(i) + "]",
                              "exceeds levels");
    }
    if (cfg.ball_levels.empty())
        cfg.ball_levels.push_back(cfg.levels);
    return cfg;
}

}  // namespace mperc
