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

#include "mperc/realization.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mperc/hash.hpp"

namespace mperc
{
namespace
{
bool lex_less(std::int64_t const* a, std::int64_t const* b, int d)
{
    for (int r = 0; r < d; ++r)
    {
        if (a[r] != b[r])
            return a[r] < b[r];
    }
    return false;
}

// Digit vectors of all first-level children, flattened (M^d x d)
std::vector<int> child_digit_table(Params const& params)
{
    std::vector<int> table;
    table.reserve(params.num_children() * params.dim());
    for (std::size_t c = 0; c < params.num_children(); ++c)
    {
        auto digits = params.digits_of(c);
        table.insert(table.end(), digits.begin(), digits.end());
    }
    return table;
}

bool retained(double p, std::uint64_t key)
{
    return to_unit(key) < p;
}

}  // namespace

//---------------------------------------------------------------------------//
Realization::Realization(Params params,
                         std::uint64_t seed,
                         std::vector<std::vector<std::int64_t>> levels)
    : params_(std::move(params)), seed_(seed), levels_(std::move(levels))
{
    if (levels_.empty())
        throw std::invalid_argument("Realization: needs at least level 0");
    for (auto const& level : levels_)
    {
        if (level.size() % params_.dim() != 0)
            throw std::invalid_argument("Realization: ragged level array");
    }
}

std::size_t Realization::count(int n) const
{
    return levels_.at(n).size() / params_.dim();
}

std::span<std::int64_t const> Realization::cube(int n, std::size_t i) const
{
    auto const d = static_cast<std::size_t>(params_.dim());
    return std::span<std::int64_t const>(levels_.at(n)).subspan(i * d, d);
}

CubeIndex Realization::cube_index(int n, std::size_t i) const
{
    auto c = cube(n, i);
    return CubeIndex(params_.base(), n, {c.begin(), c.end()});
}

std::span<std::int64_t const> Realization::level_coords(int n) const
{
    return levels_.at(n);
}

bool Realization::contains(int n, std::span<std::int64_t const> coords) const
{
    int const d = params_.dim();
    auto const& level = levels_.at(n);
    std::size_t lo = 0;
    std::size_t hi = level.size() / d;
    while (lo < hi)
    {
        std::size_t mid = (lo + hi) / 2;
        if (lex_less(level.data() + mid * d, coords.data(), d))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < level.size() / d
           && std::equal(coords.begin(), coords.end(), level.data() + lo * d);
}

CubeStream Realization::stream(int n) const
{
    if (n < 0 || n > n_max())
        throw std::out_of_range("Realization::stream: level out of range");
    return [this, n](CubeVisitor const& visit) {
        for (std::size_t i = 0; i < count(n); ++i)
            visit(cube(n, i));
    };
}

//---------------------------------------------------------------------------//
Realization generate(Params const& params, std::uint64_t seed, int n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("generate: n_max must be >= 0");
    int const d = params.dim();
    std::int64_t const M = params.base();
    ipow(M, n_max);  // coordinate range check
    auto const digits = child_digit_table(params);
    auto const probs = params.probabilities();

    std::vector<std::vector<std::int64_t>> levels;
    levels.emplace_back(d, 0);
    std::vector<std::uint64_t> keys{root_key(seed)};

    for (int n = 0; n < n_max; ++n)
    {
        auto const& parents = levels.back();
        std::vector<std::int64_t> coords;
        std::vector<std::uint64_t> next_keys;
        for (std::size_t i = 0; i < keys.size(); ++i)
        {
            std::int64_t const* pc = parents.data() + i * d;
            for (std::size_t c = 0; c < probs.size(); ++c)
            {
                auto const key = child_key(keys[i], c);
                if (!retained(probs[c], key))
                    continue;
                for (int r = 0; r < d; ++r)
                    coords.push_back(pc[r] * M + digits[c * d + r]);
                next_keys.push_back(key);
            }
        }
        // Sort children lexicographically, carrying their keys along
        std::vector<std::size_t> order(next_keys.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return lex_less(coords.data() + a * d, coords.data() + b * d, d);
        });
        std::vector<std::int64_t> sorted(coords.size());
        std::vector<std::uint64_t> sorted_keys(next_keys.size());
        for (std::size_t j = 0; j < order.size(); ++j)
        {
            std::copy_n(coords.data() + order[j] * d, d, sorted.data() + j * d);
            sorted_keys[j] = next_keys[order[j]];
        }
        levels.push_back(std::move(sorted));
        keys = std::move(sorted_keys);
    }
    return Realization(params, seed, std::move(levels));
}

void for_each_retained(Params const& params,
                       std::uint64_t seed,
                       int level,
                       CubeVisitor const& visit)
{
    for_each_retained(params, seed, level, visit, CubeFilter{});
}

void for_each_retained(Params const& params,
                       std::uint64_t seed,
                       int level,
                       CubeVisitor const& visit,
                       CubeFilter const& keep)
{
    if (level < 0)
        throw std::invalid_argument("for_each_retained: negative level");
    int const d = params.dim();
    std::int64_t const M = params.base();
    ipow(M, level);
    auto const digits = child_digit_table(params);
    auto const probs = params.probabilities();

    // coords of the node at each depth, flattened
    std::vector<std::int64_t> path((level + 1) * d, 0);
    auto descend = [&](auto&& self, int depth, std::uint64_t key) -> void {
        std::int64_t const* here = path.data() + depth * d;
        if (keep && !keep(depth, std::span<std::int64_t const>(here, d)))
            return;
        if (depth == level)
        {
            if (visit)
                visit(std::span<std::int64_t const>(here, d));
            return;
        }
        std::int64_t* next = path.data() + (depth + 1) * d;
        for (std::size_t c = 0; c < probs.size(); ++c)
        {
            auto const child = child_key(key, c);
            if (!retained(probs[c], child))
                continue;
            for (int r = 0; r < d; ++r)
                next[r] = here[r] * M + digits[c * d + r];
            self(self, depth + 1, child);
        }
    };
    descend(descend, 0, root_key(seed));
}

bool survives_to(Params const& params, std::uint64_t seed, int level)
{
    if (level < 0)
        throw std::invalid_argument("survives_to: negative level");
    auto const probs = params.probabilities();
    auto descend = [&](auto&& self, int depth, std::uint64_t key) -> bool {
        if (depth == level)
            return true;
        for (std::size_t c = 0; c < probs.size(); ++c)
        {
            auto const child = child_key(key, c);
            if (retained(probs[c], child) && self(self, depth + 1, child))
                return true;
        }
        return false;
    };
    return descend(descend, 0, root_key(seed));
}

CubeStream lazy_stream(Params const& params, std::uint64_t seed, int level)
{
    return [params, seed, level](CubeVisitor const& visit) {
        for_each_retained(params, seed, level, visit);
    };
}

//---------------------------------------------------------------------------//
std::string realization_to_json(Realization const& real)
{
    auto const& params = real.params();
    nlohmann::json doc;
    doc["format"] = "mperc-realization";
    doc["version"] = 1;
    doc["d"] = params.dim();
    doc["M"] = params.base();
    doc["k"] = params.proj_dim();
    doc["p"] = std::vector<double>(params.probabilities().begin(),
                                   params.probabilities().end());
    doc["seed"] = real.seed();
    doc["n_max"] = real.n_max();
    auto levels = nlohmann::json::array();
    for (int n = 0; n <= real.n_max(); ++n)
    {
        auto cubes = nlohmann::json::array();
        for (std::size_t i = 0; i < real.count(n); ++i)
        {
            auto c = real.cube(n, i);
            cubes.push_back(std::vector<std::int64_t>(c.begin(), c.end()));
        }
        levels.push_back(std::move(cubes));
    }
    doc["levels"] = std::move(levels);
    return doc.dump();
}

Realization realization_from_json(std::string const& text)
{
    auto doc = nlohmann::json::parse(text);
    if (doc.at("format") != "mperc-realization" || doc.at("version") != 1)
        throw std::invalid_argument("realization_from_json: unknown format");
    Params params(doc.at("d").get<int>(),
                  doc.at("M").get<int>(),
                  doc.at("k").get<int>(),
                  doc.at("p").get<std::vector<double>>());
    int const d = params.dim();
    std::vector<std::vector<std::int64_t>> levels;
    for (auto const& level : doc.at("levels"))
    {
        std::vector<std::int64_t> flat;
        for (auto const& cube : level)
        {
            auto c = cube.get<std::vector<std::int64_t>>();
            if (static_cast<int>(c.size()) != d)
                throw std::invalid_argument(
                    "realization_from_json: wrong tuple size");
            flat.insert(flat.end(), c.begin(), c.end());
        }
        levels.push_back(std::move(flat));
    }
    if (static_cast<int>(levels.size()) != doc.at("n_max").get<int>() + 1)
        throw std::invalid_argument("realization_from_json: n_max mismatch");
    return Realization(std::move(params),
                       doc.at("seed").get<std::uint64_t>(),
                       std::move(levels));
}

namespace
{
template<class T>
void put(std::ostream& os, T value)
{
    static_assert(std::endian::native == std::endian::little,
                  "binary realization format assumes a little-endian host");
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    os.write(bytes, sizeof(T));
}

template<class T>
T get(std::istream& is)
{
    char bytes[sizeof(T)];
    if (!is.read(bytes, sizeof(T)))
        throw std::runtime_error("read_realization_binary: truncated input");
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}
}  // namespace

void write_realization_binary(std::ostream& os, Realization const& real)
{
    auto const& params = real.params();
    os.write("MPRC", 4);
    put<std::uint32_t>(os, 1);
    put<std::uint32_t>(os, params.dim());
    put<std::uint32_t>(os, params.base());
    put<std::uint32_t>(os, params.proj_dim());
    put<std::uint32_t>(os, real.n_max());
    put<std::uint64_t>(os, real.seed());
    for (double p : params.probabilities())
        put<double>(os, p);
    for (int n = 0; n <= real.n_max(); ++n)
    {
        put<std::uint64_t>(os, real.count(n));
        for (auto c : real.level_coords(n))
            put<std::uint64_t>(os, static_cast<std::uint64_t>(c));
    }
}

Realization read_realization_binary(std::istream& is)
{
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "MPRC", 4) != 0)
        throw std::runtime_error("read_realization_binary: bad magic");
    if (get<std::uint32_t>(is) != 1)
        throw std::runtime_error("read_realization_binary: unknown version");
    int const d = static_cast<int>(get<std::uint32_t>(is));
    int const M = static_cast<int>(get<std::uint32_t>(is));
    int const k = static_cast<int>(get<std::uint32_t>(is));
    int const n_max = static_cast<int>(get<std::uint32_t>(is));
    auto const seed = get<std::uint64_t>(is);
    if (d < 2 || M < 2 || ipow(M, d) > (1 << 24))
        throw std::runtime_error("read_realization_binary: bad header");
    std::vector<double> p(ipow(M, d));
    for (auto& x : p)
        x = get<double>(is);
    Params params(d, M, k, std::move(p));
    std::vector<std::vector<std::int64_t>> levels(n_max + 1);
    for (auto& level : levels)
    {
        auto const count = get<std::uint64_t>(is);
        level.resize(count * d);
        for (auto& c : level)
            c = static_cast<std::int64_t>(get<std::uint64_t>(is));
    }
    return Realization(std::move(params), seed, std::move(levels));
}

}  // namespace mperc
