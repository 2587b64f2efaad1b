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

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "fusionsim/fusion.hpp"
#include "fusionsim/random.hpp"

namespace fusionsim::testing {

/// Composite Simpson rule; deliberately unrelated to the library's quadrature.
inline double simpson(const std::function<double(double)> &f, double lo, double hi, int panels = 200000) {
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int k = 1; k < panels; ++k) {
        sum += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

inline double uniform(Rng &rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline Eigen::VectorXcd random_unit(Rng &rng, Eigen::Index dim) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v[k] = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    return v / v.norm();
}

/// Random amplitudes over random, generally non-orthogonal environment states.
inline ParityInput random_input(Rng &rng, Eigen::Index dim = 4) {
    const Eigen::VectorXcd alpha = random_unit(rng, 4);
    std::array<Eigen::VectorXcd, 4> env;
    for (auto &phi : env) {
        phi = random_unit(rng, dim);
    }
    return ParityInput({alpha[0], alpha[1], alpha[2], alpha[3]}, env);
}

inline Eigen::MatrixXcd projector(const Eigen::VectorXcd &v) { return v * v.adjoint(); }

/// |<u|v>| for normalized copies; 1 means equal up to a global phase.
inline double fidelity(const Eigen::VectorXcd &u, const Eigen::VectorXcd &v) {
    return std::abs(u.normalized().dot(v.normalized()));
}

} // namespace fusionsim::testing
