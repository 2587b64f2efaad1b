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

#include "fusionsim/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fusionsim/error.hpp"

namespace fusionsim {

std::string_view to_string(DetectorLimit limit) {
    switch (limit) {
    case DetectorLimit::Finite:
        return "finite";
    case DetectorLimit::IdealLimit:
        return "ideal";
    case DetectorLimit::FrequencyIntegrated:
        return "freq-integrated";
    case DetectorLimit::TimeIntegrated:
        return "time-integrated";
    }
    return "unknown";
}

DetectorLimit parse_detector_limit(std::string_view name) {
    for (auto limit : {DetectorLimit::Finite, DetectorLimit::IdealLimit, DetectorLimit::FrequencyIntegrated,
                       DetectorLimit::TimeIntegrated}) {
        if (name == to_string(limit)) {
            return limit;
        }
    }
    throw InvalidParameter("unknown detector limit '" + std::string(name) + "'");
}

DetectorModel DetectorModel::finite(double resolution, double bandwidth) {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
        throw InvalidParameter("detector resolution must be positive and finite");
    }
    if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth)) {
        throw InvalidParameter("detector bandwidth must be non-negative and finite");
    }
    return DetectorModel(DetectorLimit::Finite, resolution, bandwidth);
}

DetectorModel DetectorModel::ideal() {
    return DetectorModel(DetectorLimit::IdealLimit, 0.0, INFINITY);
}

DetectorModel DetectorModel::frequency_integrated() {
    return DetectorModel(DetectorLimit::FrequencyIntegrated, INFINITY, INFINITY);
}

DetectorModel DetectorModel::time_integrated() {
    return DetectorModel(DetectorLimit::TimeIntegrated, 0.0, INFINITY);
}

DetectorModel DetectorModel::make(DetectorLimit limit, double resolution, double bandwidth) {
    switch (limit) {
    case DetectorLimit::Finite:
        return finite(resolution, bandwidth);
    case DetectorLimit::IdealLimit:
        return ideal();
    case DetectorLimit::FrequencyIntegrated:
        return frequency_integrated();
    case DetectorLimit::TimeIntegrated:
        return time_integrated();
    }
    throw InvalidParameter("unknown detector limit");
}

double DetectorModel::weight(double omega) const {
    if (is_limit()) {
        return 1.0;
    }
    return acceptance_weight(omega, resolution_, bandwidth_);
}

namespace {

// Integrates psi_a conj(psi_b) w over the support of w. The window is
// piecewise linear with kinks at +/-|Delta - delta| and +/-(Delta + delta);
// pieces are further cut to at most one packet width so Gauss-Kronrod sees a
// smooth, well-resolved integrand on each.
Complex windowed_overlap(const WavePacket &a, const WavePacket &b, const DetectorModel &det) {
    const double delta = det.resolution();
    const double band = det.bandwidth();
    const double outer = band + delta;
    const double inner = std::abs(band - delta);

    const double lo = std::max({-outer, a.center() - 40.0 * a.sigma(), b.center() - 40.0 * b.sigma()});
    const double hi = std::min({outer, a.center() + 40.0 * a.sigma(), b.center() + 40.0 * b.sigma()});
    if (!(lo < hi)) {
        return 0.0;
    }

    std::vector<double> cuts{lo, hi};
    for (double k : {-inner, inner}) {
        if (k > lo && k < hi) {
            cuts.push_back(k);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    const double step = std::min(a.sigma(), b.sigma());
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    Complex total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double left = cuts[k];
        const double right = cuts[k + 1];
        const int pieces = std::max(1, static_cast<int>(std::ceil((right - left) / step)));
        const double h = (right - left) / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double x0 = left + p * h;
            const double x1 = (p + 1 == pieces) ? right : x0 + h;
            auto integrand = [&](double w) { return a.amplitude(w) * std::conj(b.amplitude(w)) * det.weight(w); };
            const double re = Quadrature::integrate([&](double w) { return integrand(w).real(); }, x0, x1, 10, 1e-13);
            const double im = Quadrature::integrate([&](double w) { return integrand(w).imag(); }, x0, x1, 10, 1e-13);
            total += Complex(re, im);
        }
    }
    return total;
}

} // namespace

double click_probability(const WavePacket &psi, const DetectorModel &det) {
    if (det.is_limit()) {
        return 1.0;
    }
    return std::clamp(windowed_overlap(psi, psi, det).real(), 0.0, 1.0);
}

Complex click_coherence(const WavePacket &a, const WavePacket &b, const DetectorModel &det) {
    if (det.is_limit()) {
        return inner_product(a, b);
    }
    return windowed_overlap(a, b, det);
}

} // namespace fusionsim
