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

#include "mperc/frame.hpp"

#include <cmath>
#include <stdexcept>

#include "mperc/hash.hpp"

namespace mperc
{
namespace
{
constexpr double orthonormal_tol = 1e-10;

void require_orthonormal(Mat const& cols)
{
    Mat gram = cols.transpose() * cols;
    Mat diff = gram - Mat::Identity(cols.cols(), cols.cols());
    if (diff.cwiseAbs().maxCoeff() > orthonormal_tol)
        throw std::invalid_argument("Frame: columns are not orthonormal");
}

// Orthonormalize `v` against the columns of `basis` (two passes)
Vec orthogonalize(Vec v, Mat const& basis, Eigen::Index used)
{
    for (int pass = 0; pass < 2; ++pass)
    {
        for (Eigen::Index j = 0; j < used; ++j)
            v -= basis.col(j).dot(v) * basis.col(j);
    }
    return v;
}
}  // namespace

Frame Frame::from_columns(Mat columns)
{
    if (columns.cols() < 1 || columns.cols() >= columns.rows())
        throw std::invalid_argument("Frame: need 1 <= k < d");
    require_orthonormal(columns);
    return Frame(std::move(columns));
}

Frame Frame::orthonormalize(Mat columns)
{
    if (columns.cols() < 1 || columns.cols() >= columns.rows())
        throw std::invalid_argument("Frame: need 1 <= k < d");
    Mat gram = columns.transpose() * columns;
    Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
    double const scale = std::max(1.0, eig.eigenvalues().maxCoeff());
    if (eig.eigenvalues().minCoeff() < 1e-8 * scale)
        throw std::invalid_argument("Frame: columns are numerically dependent");
    Mat q(columns.rows(), columns.cols());
    for (Eigen::Index j = 0; j < columns.cols(); ++j)
    {
        Vec v = orthogonalize(columns.col(j), q, j);
        q.col(j) = v / v.norm();
    }
    return Frame(std::move(q));
}

Frame Frame::coordinate(int d, std::vector<int> const& axes)
{
    Mat cols = Mat::Zero(d, static_cast<Eigen::Index>(axes.size()));
    for (std::size_t j = 0; j < axes.size(); ++j)
    {
        if (axes[j] < 0 || axes[j] >= d)
            throw std::invalid_argument("Frame::coordinate: axis out of range");
        cols(axes[j], static_cast<Eigen::Index>(j)) = 1.0;
    }
    return from_columns(std::move(cols));
}

Frame Frame::random(int d, int k, std::uint64_t seed)
{
    Rng rng(seed);
    while (true)
    {
        Mat g(d, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d; ++i)
                g(i, j) = rng.normal();
        try
        {
            return orthonormalize(std::move(g));
        }
        catch (std::invalid_argument const&)
        {
            // probability zero; draw again
        }
    }
}

Frame Frame::complement_of(Mat const& C)
{
    auto cf = orthonormalize(C);
    return Frame(complement_basis(cf));
}

Mat complement_basis(Frame const& frame)
{
    Mat const& a = frame.matrix();
    Eigen::SelfAdjointEigenSolver<Mat> eig(a.transpose() * a);
    if (eig.eigenvalues().minCoeff() < 1e-8)
        throw std::invalid_argument(
            "complement_basis: frame columns are numerically dependent");

    auto const d = a.rows();
    auto const k = a.cols();
    Mat basis(d, d);
    basis.leftCols(k) = a;
    Eigen::Index used = k;
    std::vector<bool> taken(d, false);
    while (used < d)
    {
        Eigen::Index best = -1;
        double best_norm = -1;
        Vec best_vec;
        for (Eigen::Index i = 0; i < d; ++i)
        {
            if (taken[i])
                continue;
            Vec v = orthogonalize(Vec::Unit(d, i), basis, used);
            double const norm = v.norm();
            if (norm > best_norm + 1e-12)
            {
                best = i;
                best_norm = norm;
                best_vec = std::move(v);
            }
        }
        taken[best] = true;
        basis.col(used++) = best_vec / best_norm;
    }
    return basis.rightCols(d - k);
}

double frame_distance(Frame const& a, Frame const& b)
{
    if (a.ambient() != b.ambient() || a.dim() != b.dim())
        throw std::invalid_argument("frame_distance: dimension mismatch");
    Mat diff = a.matrix() * a.matrix().transpose()
               - b.matrix() * b.matrix().transpose();
    Eigen::SelfAdjointEigenSolver<Mat> eig(diff, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace mperc
