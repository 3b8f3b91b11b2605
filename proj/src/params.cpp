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

#include "mperc/params.hpp"

#include <numeric>
#include <string>

namespace mperc
{
std::int64_t ipow(std::int64_t base, int exp)
{
    if (exp < 0)
        throw std::invalid_argument("ipow: negative exponent");
    std::int64_t result = 1;
    for (int i = 0; i < exp; ++i)
    {
        if (result > (std::int64_t{1} << 62) / base)
            throw std::overflow_error("ipow: result exceeds 2^62");
        result *= base;
    }
    return result;
}

Params::Params(int d, int M, int k, std::vector<double> p)
    : d_(d), m_(M), k_(k), p_(std::move(p))
{
    if (d < 2)
        throw std::invalid_argument("Params: d must be >= 2");
    if (M < 2)
        throw std::invalid_argument("Params: M must be >= 2");
    if (k < 1 || k > d - 1)
        throw std::invalid_argument("Params: k must satisfy 1 <= k <= d-1");
    if (ipow(M, d) > (std::int64_t{1} << 24))
        throw std::invalid_argument("Params: M^d too large");
    auto expected = static_cast<std::size_t>(ipow(M, d));
    if (p_.size() != expected)
    {
        throw std::invalid_argument("Params: table length "
                                    + std::to_string(p_.size())
                                    + " != M^d = "
                                    + std::to_string(expected));
    }
    for (std::size_t i = 0; i < p_.size(); ++i)
    {
        if (!(p_[i] >= 0.0 && p_[i] <= 1.0))
        {
            throw std::invalid_argument("Params: p[" + std::to_string(i)
                                        + "] outside [0,1]");
        }
    }
}

Params Params::equal(int d, int M, int k, double p)
{
    if (d < 2 || M < 2)
        throw std::invalid_argument("Params: d and M must be >= 2");
    return Params(d, M, k, std::vector<double>(ipow(M, d), p));
}

Params Params::ex2(double center, double other)
{
    std::vector<double> table(27, other);
    // digit vector (1,1,1)
    table[9 + 3 + 1] = center;
    return Params(3, 3, 2, std::move(table));
}

std::vector<int> Params::digits_of(std::size_t index) const
{
    if (index >= p_.size())
        throw std::out_of_range("Params::digits_of: index out of range");
    std::vector<int> digits(d_);
    for (int r = d_ - 1; r >= 0; --r)
    {
        digits[r] = static_cast<int>(index % m_);
        index /= m_;
    }
    return digits;
}

std::size_t Params::index_of(std::span<int const> digits) const
{
    if (static_cast<int>(digits.size()) != d_)
        throw std::invalid_argument("Params::index_of: wrong digit count");
    std::size_t index = 0;
    for (int a : digits)
    {
        if (a < 0 || a >= m_)
            throw std::invalid_argument("Params::index_of: digit out of range");
        index = index * m_ + a;
    }
    return index;
}

double Params::offspring_mean() const
{
    return std::accumulate(p_.begin(), p_.end(), 0.0);
}

}  // namespace mperc
