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

// Command-line front end: mperc [command] [--config file.json] [--field value ...]
//
// Flags mirror the configuration fields (underscores become hyphens) and
// override values from the config file. Values are read as JSON when they
// parse ("0.85", "[0.5,0.5,10]", "{\"equal\":0.8}"), as comma-separated
// number lists otherwise ("0.5,0.5,10"), and as plain strings as a last
// resort. MPERC_THREADS sets the worker count.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mperc/config.hpp"
#include "mperc/parallel.hpp"
#include "mperc/run.hpp"

namespace
{
using nlohmann::ordered_json;

ordered_json flag_value(std::string const& text)
{
    auto parsed = ordered_json::parse(text, nullptr, false);
    if (!parsed.is_discarded())
        return parsed;
    if (text.find(',') != std::string::npos)
    {
        ordered_json list = ordered_json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            auto v = ordered_json::parse(item, nullptr, false);
            if (v.is_discarded())
                return text;
            list.push_back(std::move(v));
        }
        return list;
    }
    return text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fractal percolation projections: simulation and condition checks"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", "mperc 1.0.0");

    std::string cmd;
    std::string config_path;
    std::string commands;
    for (auto const& name : mperc::command_names())
        commands += (commands.empty() ? "" : " | ") + name;
    app.add_option("command", cmd, commands + " (may come from the config file)");
    app.add_option("--config", config_path, "JSON configuration file");

    std::vector<std::string> const fields = {
        "d", "M", "k", "p", "seed", "levels", "seeds", "frame", "resolution", "mode",
        "samples_per_cell", "ball_levels", "h", "margin_factor", "floor_factor",
        "lambda_grid", "r_max", "budget", "z", "net_size", "include_axes", "t",
        "margin", "lambdas", "shadows", "realization_format", "out"};
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (auto const& f : fields)
    {
        std::string flag = f;
        std::replace(flag.begin(), flag.end(), '_', '-');
        options[f] = app.add_option("--" + flag, values[f], "config field \"" + f + "\"");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : mperc::exit_error;
    }

    try
    {
        ordered_json doc = ordered_json::object();
        if (!config_path.empty())
        {
            std::ifstream is(config_path);
            if (!is)
                throw std::runtime_error("cannot read " + config_path);
            std::stringstream ss;
            ss << is.rdbuf();
            doc = ordered_json::parse(ss.str(), nullptr, false);
            if (doc.is_discarded() || !doc.is_object())
                throw mperc::ConfigError("$", "config file is not a JSON object");
        }
        if (cmd.empty())
        {
            if (!doc.contains("cmd") || !doc["cmd"].is_string())
                throw mperc::ConfigError("$.cmd", "no command given");
            cmd = doc["cmd"].get<std::string>();
        }
        if (doc.contains("cmd") && doc["cmd"] != cmd)
            throw mperc::ConfigError("$.cmd", "config names command \"" +
                                                  doc["cmd"].dump() + "\" but \"" + cmd +
                                                  "\" was requested");
        doc["cmd"] = cmd;
        for (auto const& f : fields)
        {
            if (options[f]->count() > 0)
                doc[f] = flag_value(values[f]);
        }
        if (!doc.contains("version"))
            doc["version"] = mperc::config_version;

        auto const cfg = mperc::parse_config(doc.dump());
        auto const result = mperc::run(cfg, mperc::thread_count());
        for (auto const& path : result.artifacts)
            std::cout << "wrote " << path << '\n';
        return result.exit_code;
    }
    catch (mperc::ConfigError const& e)
    {
        std::cerr << "config error at " << e.what() << '\n';
        return mperc::exit_error;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return mperc::exit_error;
    }
}
