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

#include <string_view>

#include "fusionsim/wavepacket.hpp"

namespace fusionsim {

enum class DetectorLimit { Finite, IdealLimit, FrequencyIntegrated, TimeIntegrated };

std::string_view to_string(DetectorLimit limit);
/// Accepts finite, ideal, freq-integrated, time-integrated.
DetectorLimit parse_detector_limit(std::string_view name);

/// Photo-detector with spectral resolution delta and bandwidth Delta. A click
/// at window center w0 in [-Delta, Delta] projects onto [w0 - delta, w0 + delta];
/// each window operator carries a 1/sqrt(2 delta) factor so the click POVM
/// integrates to acceptance_weight(w) <= 1 and the remainder is photon loss.
class DetectorModel {
  public:
    /// Throws InvalidParameter unless resolution > 0 and bandwidth >= 0.
    static DetectorModel finite(double resolution, double bandwidth);
    static DetectorModel ideal();
    static DetectorModel frequency_integrated();
    static DetectorModel time_integrated();
    /// Dispatch on `limit`; resolution and bandwidth are only read for Finite.
    static DetectorModel make(DetectorLimit limit, double resolution, double bandwidth);

    double resolution() const { return resolution_; }
    double bandwidth() const { return bandwidth_; }
    DetectorLimit limit() const { return limit_; }
    bool is_limit() const { return limit_ != DetectorLimit::Finite; }

    /// Click-POVM density at frequency omega; 1 in every limit.
    double weight(double omega) const;

  private:
    DetectorModel(DetectorLimit limit, double resolution, double bandwidth)
        : limit_(limit), resolution_(resolution), bandwidth_(bandwidth) {}

    DetectorLimit limit_;
    double resolution_;
    double bandwidth_;
};

/// D = integral |psi|^2 w dw: probability that the photon produces a click.
double click_probability(const WavePacket &psi, const DetectorModel &det);

/// C = integral psi_a conj(psi_b) w dw: what survives of |a><b| after the
/// photon is detected and traced out.
Complex click_coherence(const WavePacket &a, const WavePacket &b, const DetectorModel &det);

} // namespace fusionsim
