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

#include "mperc/cube.hpp"

#include <cmath>
#include <stdexcept>

#include "mperc/params.hpp"

namespace mperc
{
std::vector<std::vector<int>> combinations(int n, int k)
{
    std::vector<std::vector<int>> result;
    if (k < 0 || k > n)
        return result;
    std::vector<int> current(k);
    for (int i = 0; i < k; ++i)
        current[i] = i;
    while (true)
    {
        result.push_back(current);
        int i = k - 1;
        while (i >= 0 && current[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++current[i];
        for (int j = i + 1; j < k; ++j)
            current[j] = current[j - 1] + 1;
    }
    return result;
}

std::vector<int> complement_indices(int n, std::vector<int> const& subset)
{
    std::vector<int> rest;
    std::size_t s = 0;
    for (int i = 0; i < n; ++i)
    {
        if (s < subset.size() && subset[s] == i)
            ++s;
        else
            rest.push_back(i);
    }
    return rest;
}

CubeIndex::CubeIndex(int base, int level, std::vector<std::int64_t> coords)
    : base_(base), level_(level), coords_(std::move(coords))
{
    if (base < 2)
        throw std::invalid_argument("CubeIndex: base must be >= 2");
    if (level < 0)
        throw std::invalid_argument("CubeIndex: negative level");
    auto const side = ipow(base, level);
    for (auto c : coords_)
    {
        if (c < 0 || c >= side)
            throw std::invalid_argument("CubeIndex: coordinate out of range");
    }
}

CubeIndex CubeIndex::root(int d, int base)
{
    return CubeIndex(base, 0, std::vector<std::int64_t>(d, 0));
}

CubeIndex CubeIndex::from_digits(int base,
                                 std::vector<std::vector<int>> const& rows)
{
    if (rows.empty())
        throw std::invalid_argument("CubeIndex::from_digits: no rows");
    auto const n = rows.front().size();
    std::vector<std::int64_t> coords;
    coords.reserve(rows.size());
    for (auto const& row : rows)
    {
        if (row.size() != n)
            throw std::invalid_argument("CubeIndex::from_digits: ragged rows");
        std::int64_t c = 0;
        for (int digit : row)
        {
            if (digit < 0 || digit >= base)
                throw std::invalid_argument(
                    "CubeIndex::from_digits: digit out of range");
            c = c * base + digit;
        }
        coords.push_back(c);
    }
    return CubeIndex(base, static_cast<int>(n), std::move(coords));
}

std::vector<std::vector<int>> CubeIndex::digits() const
{
    std::vector<std::vector<int>> rows(coords_.size(),
                                       std::vector<int>(level_));
    for (std::size_t r = 0; r < coords_.size(); ++r)
    {
        auto c = coords_[r];
        for (int j = level_ - 1; j >= 0; --j)
        {
            rows[r][j] = static_cast<int>(c % base_);
            c /= base_;
        }
    }
    return rows;
}

CubeIndex CubeIndex::child(std::span<int const> digit_column) const
{
    if (digit_column.size() != coords_.size())
        throw std::invalid_argument("CubeIndex::child: wrong column size");
    std::vector<std::int64_t> next(coords_.size());
    for (std::size_t r = 0; r < coords_.size(); ++r)
    {
        if (digit_column[r] < 0 || digit_column[r] >= base_)
            throw std::invalid_argument("CubeIndex::child: digit out of range");
        next[r] = coords_[r] * base_ + digit_column[r];
    }
    return CubeIndex(base_, level_ + 1, std::move(next));
}

CubeIndex CubeIndex::parent() const
{
    if (level_ == 0)
        throw std::logic_error("CubeIndex::parent: root has no parent");
    std::vector<std::int64_t> up(coords_.size());
    for (std::size_t r = 0; r < coords_.size(); ++r)
        up[r] = coords_[r] / base_;
    return CubeIndex(base_, level_ - 1, std::move(up));
}

double CubeIndex::scale() const
{
    return std::pow(static_cast<double>(base_), -level_);
}

Vec CubeIndex::corner() const
{
    Vec t(coords_.size());
    double const s = scale();
    for (std::size_t r = 0; r < coords_.size(); ++r)
        t[r] = static_cast<double>(coords_[r]) * s;
    return t;
}

Homothety homothety_params(CubeIndex const& cube)
{
    return {cube.scale(), cube.corner()};
}

}  // namespace mperc
