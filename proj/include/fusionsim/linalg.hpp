// Copyright 2026 The fusionsim Authors
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

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fusionsim {

/// 1/2 ||rho - sigma||_1 for Hermitian operators of equal dimension.
/// Throws DimensionMismatch otherwise.
double trace_distance(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma);

/// rho / tr(rho); throws InvalidParameter for a vanishing trace.
Eigen::MatrixXcd normalized(const Eigen::MatrixXcd &rho);

/// Weighted ensemble sum_k w_k |v_k><v_k| kept in factored form.
using Mixture = std::vector<std::pair<double, Eigen::VectorXcd>>;

/// Trace distance between two ensembles without forming full density
/// matrices: both are projected onto an orthonormal basis of the span of
/// their vectors.
double trace_distance(const Mixture &rho, const Mixture &sigma);

} // namespace fusionsim
