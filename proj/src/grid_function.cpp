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

#include "mperc/grid_function.hpp"

#include <cmath>

namespace mperc
{
Lattice::Lattice(Chart const& chart, double h) : h_(h)
{
    if (!(h > 0))
        throw std::invalid_argument("Lattice: spacing must be positive");
    auto const& delta = chart.delta();
    Vec const& c = chart.center();
    int const k = chart.dim();
    origin_.resize(k);
    for (int r = 0; r < k; ++r)
    {
        // steps from the center to each side of the bounding box
        int const below = static_cast<int>(std::ceil((c[r] - delta.lower()[r]) / h - 1e-9));
        int const above = static_cast<int>(std::ceil((delta.upper()[r] - c[r]) / h - 1e-9));
        origin_[r] = c[r] - below * h;
        shape_.push_back(below + above + 1);
        size_ *= shape_.back();
    }
}

std::vector<int> Lattice::unflatten(std::size_t flat) const
{
    std::vector<int> idx(shape_.size());
    for (int r = dim() - 1; r >= 0; --r)
    {
        idx[r] = static_cast<int>(flat % shape_[r]);
        flat /= shape_[r];
    }
    return idx;
}

std::size_t Lattice::flatten(std::vector<int> const& idx) const
{
    std::size_t flat = 0;
    for (int r = 0; r < dim(); ++r)
        flat = flat * shape_[r] + idx[r];
    return flat;
}

Vec Lattice::point(std::size_t flat) const
{
    auto const idx = unflatten(flat);
    Vec z(dim());
    for (int r = 0; r < dim(); ++r)
        z[r] = origin_[r] + h_ * idx[r];
    return z;
}

std::vector<Vec> interior_points(Chart const& chart, double h, double tol)
{
    Lattice lattice(chart, h);
    std::vector<Vec> points;
    for (std::size_t i = 0; i < lattice.size(); ++i)
    {
        Vec z = lattice.point(i);
        if (chart.delta().min_slack(z) > tol)
            points.push_back(std::move(z));
    }
    return points;
}

std::vector<Vec> interior_sample(Chart const& chart, std::size_t target)
{
    auto const& delta = chart.delta();
    double box = 1;
    for (int r = 0; r < chart.dim(); ++r)
        box *= delta.upper()[r] - delta.lower()[r];
    double h = std::pow(box / (2.0 * target), 1.0 / chart.dim());
    std::vector<Vec> points;
    while ((points = interior_points(chart, h)).size() < target)
        h *= 0.8;
    std::vector<Vec> sample;
    double const stride = static_cast<double>(points.size()) / target;
    for (std::size_t i = 0; i < target; ++i)
        sample.push_back(points[static_cast<std::size_t>(i * stride)]);
    return sample;
}

GridFunction::GridFunction(Chart const& chart, Lattice lattice,
                           std::vector<double> values)
    : delta_(chart.delta()), lattice_(std::move(lattice)), values_(std::move(values))
{
}

GridFunction GridFunction::sample(Chart const& chart, double h, Field const& f)
{
    Lattice lattice(chart, h);
    std::vector<double> values(lattice.size(), 0.0);
    for (std::size_t i = 0; i < lattice.size(); ++i)
    {
        Vec z = lattice.point(i);
        if (chart.delta().min_slack(z) >= 0)
            values[i] = f(z);
    }
    return GridFunction(chart, std::move(lattice), std::move(values));
}

double GridFunction::operator()(Vec const& z) const
{
    if (delta_.min_slack(z) < 0)
        return 0;
    int const k = lattice_.dim();
    std::vector<int> base(k);
    std::vector<double> frac(k);
    for (int r = 0; r < k; ++r)
    {
        double const t = (z[r] - lattice_.origin()[r]) / lattice_.spacing();
        int i = static_cast<int>(std::floor(t));
        i = std::clamp(i, 0, lattice_.shape()[r] - 2);
        base[r] = i;
        frac[r] = std::clamp(t - i, 0.0, 1.0);
    }
    double value = 0;
    std::vector<int> idx(k);
    for (int mask = 0; mask < (1 << k); ++mask)
    {
        double w = 1;
        for (int r = 0; r < k; ++r)
        {
            bool const up = (mask >> r) & 1;
            idx[r] = base[r] + up;
            w *= up ? frac[r] : 1 - frac[r];
        }
        if (w != 0)
            value += w * values_[lattice_.flatten(idx)];
    }
    return value;
}

}  // namespace mperc
