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

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mperc
{
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

//! All k-element subsets of {0..n-1} in lexicographic order
std::vector<std::vector<int>> combinations(int n, int k);

//! Sorted complement of a sorted subset of {0..n-1}
std::vector<int> complement_indices(int n, std::vector<int> const& subset);

}  // namespace mperc
