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

#include "fusionsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fusionsim/error.hpp"

namespace fusionsim {

WavePacket::WavePacket(double center, double variance, double temporal_offset)
    : center_(center), variance_(variance), temporal_offset_(temporal_offset) {
    if (!std::isfinite(center) || !std::isfinite(temporal_offset)) {
        throw InvalidParameter("wave packet center and offset must be finite");
    }
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw InvalidParameter("wave packet variance must be positive");
    }
    sigma_ = std::sqrt(variance);
    norm_ = std::pow(2.0 * std::numbers::pi * variance, -0.25);
}

Complex WavePacket::amplitude(double omega) const {
    const double x = omega - center_;
    const double envelope = norm_ * std::exp(-x * x / (4.0 * variance_));
    return std::polar(envelope, omega * temporal_offset_);
}

double WavePacket::density(double omega) const {
    const double x = omega - center_;
    return norm_ * norm_ * std::exp(-x * x / (2.0 * variance_));
}

WavePacket gaussian_packet(double center, double variance, double temporal_offset) {
    return WavePacket(center, variance, temporal_offset);
}

Complex inner_product(const WavePacket &a, const WavePacket &b) {
    // integral of exp(-A w^2 + B w + C) = sqrt(pi / A) exp(B^2 / 4A + C)
    const double va = a.variance();
    const double vb = b.variance();
    const double A = 0.25 / va + 0.25 / vb;
    const Complex B(0.5 * a.center() / va + 0.5 * b.center() / vb,
                    a.temporal_offset() - b.temporal_offset());
    const double C = -0.25 * a.center() * a.center() / va - 0.25 * b.center() * b.center() / vb;
    const double prefactor = std::pow(4.0 * std::numbers::pi * std::numbers::pi * va * vb, -0.25) *
                             std::sqrt(std::numbers::pi / A);
    return prefactor * std::exp(B * B / (4.0 * A) + C);
}

FrequencyGrid::FrequencyGrid(double min, double max, int bins) : min_(min), max_(max), bins_(bins) {
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
        throw InvalidParameter("frequency grid needs finite min < max");
    }
    if (bins < 2) {
        throw InvalidParameter("frequency grid needs at least 2 bins");
    }
}

FrequencyGrid default_grid(const WavePacket &a, const WavePacket &b, int bins) {
    const double lo = std::min(a.center() - 8.0 * a.sigma(), b.center() - 8.0 * b.sigma());
    const double hi = std::max(a.center() + 8.0 * a.sigma(), b.center() + 8.0 * b.sigma());
    return FrequencyGrid(lo, hi, bins);
}

Complex grid_overlap(const WavePacket &a, const WavePacket &b, const FrequencyGrid &grid) {
    Complex sum = 0.0;
    for (int i = 0; i < grid.bins(); ++i) {
        const double w = grid.center(i);
        sum += a.amplitude(w) * std::conj(b.amplitude(w));
    }
    return sum * grid.width();
}

double acceptance_weight(double omega, double delta, double bandwidth) {
    if (!(delta > 0.0)) {
        throw InvalidParameter("acceptance window needs a positive resolution");
    }
    if (!(bandwidth >= 0.0)) {
        throw InvalidParameter("acceptance band needs a non-negative bandwidth");
    }
    const double inside = std::min(bandwidth, omega + delta) - std::max(-bandwidth, omega - delta);
    return std::clamp(inside, 0.0, 2.0 * delta) / (2.0 * delta);
}

} // namespace fusionsim
