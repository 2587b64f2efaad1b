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

#include "fusionsim/linalg.hpp"

#include <cmath>

#include "fusionsim/error.hpp"

namespace fusionsim {

double trace_distance(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma) {
    if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() || rho.rows() != sigma.rows()) {
        throw DimensionMismatch("trace distance needs square operators of equal dimension");
    }
    const Eigen::MatrixXcd diff = rho - sigma;
    const Eigen::MatrixXcd hermitian = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd normalized(const Eigen::MatrixXcd &rho) {
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) {
        throw InvalidParameter("cannot normalize an operator with non-positive trace");
    }
    return rho / tr;
}

double trace_distance(const Mixture &rho, const Mixture &sigma) {
    if (rho.empty() && sigma.empty()) {
        return 0.0;
    }
    const Eigen::Index dim = rho.empty() ? sigma.front().second.size() : rho.front().second.size();
    const auto columns = static_cast<Eigen::Index>(rho.size() + sigma.size());
    Eigen::MatrixXcd span(dim, columns);
    Eigen::Index col = 0;
    for (const auto *mix : {&rho, &sigma}) {
        for (const auto &[w, v] : *mix) {
            if (v.size() != dim) {
                throw DimensionMismatch("mixture vectors have different dimensions");
            }
            span.col(col++) = v;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(span);
    qr.setThreshold(1e-12);
    const Eigen::Index rank = qr.rank();
    if (rank == 0) {
        return 0.0;
    }
    const Eigen::MatrixXcd basis = Eigen::MatrixXcd(qr.householderQ()).leftCols(rank);

    auto project = [&](const Mixture &mix) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rank, rank);
        for (const auto &[w, v] : mix) {
            const Eigen::VectorXcd c = basis.adjoint() * v;
            out += w * c * c.adjoint();
        }
        return out;
    };
    return trace_distance(project(rho), project(sigma));
}

} // namespace fusionsim
