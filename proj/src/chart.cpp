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

#include "mperc/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace mperc
{
Mat c2_block(Mat const& C, std::vector<int> const& plane)
{
    auto const rest = complement_indices(static_cast<int>(C.rows()), plane);
    Mat block(rest.size(), C.cols());
    for (std::size_t i = 0; i < rest.size(); ++i)
        block.row(i) = C.row(rest[i]);
    return block;
}

Chart::Chart(Frame frame, Mat complement, std::vector<int> plane)
    : frame_(std::move(frame)), c_(std::move(complement)), plane_(std::move(plane))
{
    int const d = frame_.ambient();
    int const k = frame_.dim();
    if (c_.rows() != d || c_.cols() != d - k
        || static_cast<int>(plane_.size()) != k)
        throw std::invalid_argument("Chart: inconsistent dimensions");
    fiber_ = complement_indices(d, plane_);
    if (static_cast<int>(fiber_.size()) != d - k)
        throw std::invalid_argument("Chart: plane indices must be sorted and distinct");

    c1_.resize(k, d - k);
    for (int i = 0; i < k; ++i)
        c1_.row(i) = c_.row(plane_[i]);
    c2_ = c2_block(c_, plane_);
    det_c2_ = c2_.determinant();
    if (std::abs(det_c2_) < 1e-12)
        throw std::invalid_argument("Chart: C2 is singular for this plane");
    n_ = c2_.transpose().partialPivLu().solve(c1_.transpose()).transpose();

    center_ = project(Vec::Constant(d, 0.5));
    if (k <= 3)
    {
        std::vector<Vec> corners;
        for (int mask = 0; mask < (1 << d); ++mask)
        {
            Vec x(d);
            for (int r = 0; r < d; ++r)
                x[r] = (mask >> r) & 1;
            corners.push_back(project(x));
        }
        delta_ = Polytope::hull(k, corners);
    }
}

Vec Chart::project(Vec const& x) const
{
    Vec z(dim());
    project(x.data(), z.data());
    return z;
}

void Chart::project(double const* x, double* z) const
{
    int const k = dim();
    int const m = fiber_dim();
    for (int i = 0; i < k; ++i)
    {
        double acc = x[plane_[i]];
        for (int j = 0; j < m; ++j)
            acc -= n_(i, j) * x[fiber_[j]];
        z[i] = acc;
    }
}

Polytope const& Chart::delta() const
{
    if (!delta_)
        throw UnsupportedDimension("Chart::delta: exact shadows need k <= 3");
    return *delta_;
}

Chart make_chart(Frame const& frame, std::vector<int> plane)
{
    return Chart(frame, complement_basis(frame), std::move(plane));
}

namespace
{
std::vector<int> best_plane(Mat const& C)
{
    int const d = static_cast<int>(C.rows());
    int const k = d - static_cast<int>(C.cols());
    auto const subsets = combinations(d, k);
    std::vector<double> dets;
    double best = 0;
    for (auto const& I : subsets)
    {
        dets.push_back(std::abs(c2_block(C, I).determinant()));
        best = std::max(best, dets.back());
    }
    for (std::size_t i = 0; i < subsets.size(); ++i)
    {
        if (dets[i] >= best - 1e-12)
            return subsets[i];
    }
    throw std::logic_error("select_chart: no plane selected");
}
}  // namespace

Chart select_chart(Frame const& frame)
{
    Mat C = complement_basis(frame);
    auto plane = best_plane(C);
    return Chart(frame, std::move(C), std::move(plane));
}

Chart chart_from_complement(Mat const& C)
{
    auto fiber = Frame::orthonormalize(C);
    auto frame = Frame::complement_of(fiber.matrix());
    auto plane = best_plane(fiber.matrix());
    return Chart(std::move(frame), fiber.matrix(), std::move(plane));
}

double cauchy_binet_sum(Mat const& C)
{
    int const d = static_cast<int>(C.rows());
    int const k = d - static_cast<int>(C.cols());
    double sum = 0;
    for (auto const& I : combinations(d, k))
    {
        double const det = c2_block(C, I).determinant();
        sum += det * det;
    }
    return sum;
}

Vec project_point(Chart const& chart, Vec const& x)
{
    return chart.project(x);
}

}  // namespace mperc
