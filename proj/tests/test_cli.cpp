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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "mperc/config.hpp"
#include "mperc/render.hpp"
#include "mperc/report_io.hpp"
#include "mperc/run.hpp"

using namespace mperc;
namespace fs = std::filesystem;

namespace
{
fs::path scratch_dir()
{
    auto const dir = fs::temp_directory_path() / "mperc-cli-tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(fs::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config_error_path(std::string const& text)
{
    try
    {
        parse_config(text);
    }
    catch (ConfigError const& e)
    {
        return e.path();
    }
    return "";
}

/*!
 * Minimal XML well-formedness check: balanced and properly nested
 * elements, quoted attributes, one root.
 */
bool well_formed_xml(std::string const& doc)
{
    std::vector<std::string> stack;
    int roots = 0;
    std::size_t i = 0;
    while ((i = doc.find('<', i)) != std::string::npos)
    {
        std::size_t const end = doc.find('>', i);
        if (end == std::string::npos)
            return false;
        std::string const tag = doc.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty())
            return false;
        if (tag[0] == '?' || tag[0] == '!')
            continue;
        if (tag[0] == '/')
        {
            if (stack.empty() || stack.back() != tag.substr(1))
                return false;
            stack.pop_back();
            continue;
        }
        std::size_t quotes = 0;
        for (char c : tag)
            quotes += c == '"';
        if (quotes % 2)
            return false;
        std::string const name = tag.substr(0, tag.find_first_of(" \n/"));
        if (stack.empty())
            ++roots;
        if (tag.back() != '/')
            stack.push_back(name);
    }
    return stack.empty() && roots == 1;
}

RunConfig config_in(std::string const& text, std::string const& name)
{
    auto cfg = parse_config(text);
    cfg.out = (scratch_dir() / name).string();
    return cfg;
}

}  // namespace

TEST_SUITE("cli-io")
{
TEST_CASE("config parsing")
{
    auto const cfg = parse_config(
        R"({"d":3,"M":3,"k":2,"p":{"ex2":{"p":0.2,"q":0.5}},"seed":7,"levels":5,"cmd":"check-fg"})");
    CHECK(cfg.cmd == "check-fg");
    CHECK(cfg.seed == 7);
    CHECK(cfg.levels == 5);
    CHECK(cfg.params.dim() == 3);
    CHECK(cfg.params.prob(13) == 0.2);
    CHECK(cfg.params.prob(0) == 0.5);
    CHECK(cfg.out == "mperc-check-fg");

    auto const eq = parse_config(R"({"cmd":"vn","d":3,"M":2,"k":2,"p":{"equal":0.85},"z":[0,0]})");
    CHECK(eq.params.prob(5) == 0.85);
    REQUIRE(eq.z);
    CHECK(eq.z->size() == 2);

    CHECK(config_error_path(R"({"cmd":"generate","d":2,"M":2,"k":1,"p":[0.5,0.5,0.5]})") == "$.p");
    CHECK(config_error_path(R"({"cmd":"generate","d":2,"M":2,"k":2,"p":0.5})") == "$.k");
    CHECK(config_error_path(R"({"cmd":"generate","d":2,"M":2,"k":1,"p":[0.5,0.5,1.5,0.5]})") ==
          "$.p[2]");
    CHECK(config_error_path(R"({"cmd":"generate","d":2,"M":2,"k":1,"p":0.5,"colour":1})") ==
          "$.colour");
    CHECK(config_error_path(R"({"cmd":"fly","d":2,"M":2,"k":1,"p":0.5})") == "$.cmd");
    CHECK(config_error_path(R"({"cmd":"generate","d":2,"M":2,"k":1,"p":0.5,"version":9})") ==
          "$.version");
    CHECK(config_error_path(
              R"({"cmd":"vn","d":2,"M":2,"k":1,"p":0.5,"frame":{"axes":[0,0]}})")
              .rfind("$.frame", 0) == 0);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK(command_names().size() == 10);
}

TEST_CASE("command exit codes")
{
    auto const pass = run(config_in(
        R"({"cmd":"check-fg","d":3,"M":3,"k":2,"p":{"ex2":{"p":0.2,"q":0.5}}})", "fg"));
    CHECK(pass.exit_code == exit_ok);
    CHECK(pass.report["result"]["verdict"] == "pass");
    REQUIRE_FALSE(pass.artifacts.empty());
    CHECK(fs::exists(pass.artifacts.front()));

    auto const mixed = run(config_in(
        R"({"cmd":"check-fg","d":3,"M":3,"k":2,"p":{"ex2":{"p":0.5,"q":0.33}}})", "fg-fail"));
    CHECK(mixed.exit_code == exit_fail);

    auto const critical =
        run(config_in(R"({"cmd":"check-b","d":2,"M":2,"k":1,"p":0.5})", "critical"));
    CHECK(critical.exit_code == exit_fail);

    auto const short_a = run(config_in(
        R"({"cmd":"find-a","d":2,"M":2,"k":1,"p":0.9,"frame":"diagonal","r_max":1})", "a-short"));
    CHECK(short_a.exit_code == exit_inconclusive);
    CHECK(short_a.report["result"]["verdict"] == "inconclusive");

    auto const long_a = run(config_in(
        R"({"cmd":"find-a","d":2,"M":2,"k":1,"p":0.9,"frame":"diagonal","r_max":6})", "a-long"));
    CHECK(long_a.exit_code == exit_ok);
}

TEST_CASE("artifacts")
{
    auto const gen = run(config_in(
        R"({"cmd":"generate","d":2,"M":2,"k":1,"p":0.7,"seed":2024,"levels":6})", "gen"));
    CHECK(gen.exit_code == exit_ok);
    auto const csv = slurp(scratch_dir() / "gen.csv");
    CHECK(csv.rfind("level,seed,statistic,value\n", 0) == 0);
    CHECK(csv.find("\n6,2024,count,870\n") != std::string::npos);
    CHECK(gen.report["branching"]["level_counts"][6] == 870);

    auto const ball = run(config_in(
        R"({"cmd":"ball","d":3,"M":2,"k":2,"p":0.85,"frame":{"complement":[[1,1,1]]},
            "levels":3,"seeds":2,"resolution":0.03125})",
        "ball"));
    CHECK(ball.exit_code == exit_ok);
    auto const ppm = slurp(scratch_dir() / "ball.ppm");
    std::istringstream head(ppm);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    head >> magic >> w >> h >> maxval;
    head.get();
    CHECK(magic == "P6");
    CHECK(maxval == 255);
    CHECK(ppm.size() - static_cast<std::size_t>(head.tellg()) == std::size_t(3) * w * h);

    auto const render = run(config_in(
        R"({"cmd":"render","d":3,"M":2,"k":2,"p":0.8,"frame":{"complement":[[1,1,1]]},
            "levels":1,"lambdas":[0.8,0.6],"shadows":true})",
        "render"));
    auto const svg = slurp(scratch_dir() / "render.svg");
    CHECK(well_formed_xml(svg));
    CHECK(svg.find("stroke-dasharray") != std::string::npos);

    auto const hex = chart_from_complement(Mat::Constant(3, 1, 1 / std::sqrt(3.0)));
    CHECK(well_formed_xml(render_delta_svg(hex, {}, {})));
    Mat line(2, 1);
    line << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    auto const segment = render_delta_svg(select_chart(Frame::from_columns(line)), {0.5}, {});
    CHECK(well_formed_xml(segment));
    CHECK_THROWS(render_delta_svg(select_chart(Frame::coordinate(4, {0, 1, 2})), {}, {}));
    CHECK_THROWS(render_delta_svg(hex, {1.5}, {}));

    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3) == "0.3333333333333333");
    CHECK(csv_document({{2, std::nullopt, "mean", 1.5}}) == "level,seed,statistic,value\n2,,mean,1.5\n");
}

TEST_CASE("reports are reproducible")
{
    char const* text =
        R"({"cmd":"vn","d":3,"M":2,"k":2,"p":0.85,"frame":{"complement":[[1,1,1]]},
            "levels":4,"seeds":40,"seed":3})";
    auto const a = execute(parse_config(text), 1);
    auto const b = execute(parse_config(text), 1);
    CHECK(dump_report(a.report) == dump_report(b.report));

    // parallel aggregates agree; integer statistics are identical
    auto const c = execute(parse_config(text), 3);
    auto const& la = a.report["result"]["levels"];
    auto const& lc = c.report["result"]["levels"];
    REQUIRE(la.size() == lc.size());
    for (std::size_t n = 0; n < la.size(); ++n)
    {
        CHECK(la[n]["samples"] == lc[n]["samples"]);
        CHECK(la[n]["mean"].get<double>() ==
              doctest::Approx(lc[n]["mean"].get<double>()).epsilon(1e-12));
    }
}

TEST_CASE("command-line tool")
{
    std::string const tool = MPERC_TOOL;
    auto const dir = scratch_dir();
    auto status = [&](std::string const& args) {
        std::string const cmd = "\"" + tool + "\" " + args + " > \"" +
                                (dir / "tool.log").string() + "\" 2>&1";
        int const raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    auto const out = (dir / "tool").string();
    CHECK(status("check-fg --d 3 --M 3 --k 2 --p '{\"ex2\":{\"p\":0.2,\"q\":0.5}}' --out " + out) == 0);
    CHECK(fs::exists(out + ".json"));
    CHECK(status("check-b --d 2 --M 2 --k 1 --p 0.5 --out " + out) == 2);
    CHECK(status("find-a --d 2 --M 2 --k 1 --p 0.9 --frame diagonal --r-max 1 --out " + out) == 3);
    CHECK(status("generate --d 2 --M 2 --k 2 --p 0.5 --out " + out) == 1);
    CHECK(slurp(dir / "tool.log").find("$.k") != std::string::npos);
    CHECK(status("generate --bogus 1") == 1);
    CHECK(status("--help") == 0);

    std::ofstream(dir / "cfg.json") << R"({"cmd":"check-b","d":2,"M":2,"k":1,"p":0.5})";
    CHECK(status("--config \"" + (dir / "cfg.json").string() + "\" --out " + out) == 2);
    CHECK(status("check-fg --config \"" + (dir / "cfg.json").string() + "\"") == 1);
    CHECK(status("--d 2") == 1);
}
}
