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

#include <complex>

namespace fusionsim {

using Complex = std::complex<double>;

/// Transform-limited Gaussian photon in the frequency domain,
///
///   psi(w) = (2 pi s^2)^(-1/4) exp(-(w - mu)^2 / (4 s^2)) exp(i w tau),
///
/// so |psi|^2 is a normal density of variance s^2 and a temporal
/// displacement tau shows up only as a linear spectral phase. Frequencies are
/// in units of the photon bandwidth, tau in its inverse.
class WavePacket {
  public:
    /// Throws InvalidParameter unless variance > 0 and all inputs are finite.
    WavePacket(double center, double variance, double temporal_offset);

    double center() const { return center_; }
    double variance() const { return variance_; }
    double sigma() const { return sigma_; }
    double temporal_offset() const { return temporal_offset_; }

    Complex amplitude(double omega) const;
    double density(double omega) const;

  private:
    double center_;
    double variance_;
    double sigma_;
    double temporal_offset_;
    double norm_;
};

WavePacket gaussian_packet(double center, double variance, double temporal_offset);

/// Mode overlap <b|a> = integral of psi_a(w) conj(psi_b(w)) dw, in closed form.
Complex inner_product(const WavePacket &a, const WavePacket &b);

/// Uniform partition of [min, max] into `bins` cells; samples sit at cell centers.
class FrequencyGrid {
  public:
    FrequencyGrid(double min, double max, int bins);

    double min() const { return min_; }
    double max() const { return max_; }
    int bins() const { return bins_; }
    double width() const { return (max_ - min_) / bins_; }
    double center(int i) const { return min_ + (i + 0.5) * width(); }

    friend bool operator==(const FrequencyGrid &, const FrequencyGrid &) = default;

  private:
    double min_;
    double max_;
    int bins_;
};

/// Grid spanning +/-8 sigma around both packets.
FrequencyGrid default_grid(const WavePacket &a, const WavePacket &b, int bins = 4096);

/// Midpoint-rule overlap on a grid. Used as an independent check of inner_product.
Complex grid_overlap(const WavePacket &a, const WavePacket &b, const FrequencyGrid &grid);

/// Fraction of the click window [w - delta, w + delta] that falls inside the
/// acceptance band [-bandwidth, bandwidth]. Requires delta > 0, bandwidth >= 0.
double acceptance_weight(double omega, double delta, double bandwidth);

} // namespace fusionsim
