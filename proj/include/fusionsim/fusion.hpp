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

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "fusionsim/detector.hpp"
#include "fusionsim/random.hpp"
#include "fusionsim/wavepacket.hpp"

namespace fusionsim {

enum class Variant { Plain, Rotated45 };

/// Two-qubit polarization configurations, in the order HH, HV, VH, VV.
enum class Config : int { HH = 0, HV = 1, VH = 2, VV = 3 };

/// Per-detector click factors: the off-diagonal transfer C(a, b) and the
/// acceptance of each photon's envelope.
struct ClickFactors {
    Complex coherence;
    double accept_a = 1.0;
    double accept_b = 1.0;

    /// Geometric-mean acceptance sqrt(D_a D_b).
    double probability() const;
};

/// Noise summary of one parity gate: photon a enters port a, photon b port b,
/// and the PBS sends HH to (c: a, d: b) and VV to (c: b, d: a).
struct GammaResult {
    double gamma = 1.0;
    double p_error = 0.0;
    /// arg of C_c conj(C_d); removed by the feed-forward correction.
    double phase = 0.0;
    ClickFactors click_c;
    ClickFactors click_d;
    double detection_efficiency = 1.0;

    /// Probability that both photons click, per polarization configuration.
    double detect_both(Config config) const;
    /// Probability that neither photon clicks, per configuration.
    double detect_none(Config config) const;

    /// Noise with a prescribed coherence and symmetric, envelope-independent
    /// acceptance `efficiency` per photon pair.
    static GammaResult from_gamma(double gamma, double efficiency = 1.0);
};

/// Throws DegenerateDetector if no success event can be detected.
GammaResult gamma(const WavePacket &a, const WavePacket &b, const DetectorModel &det_c,
                  const DetectorModel &det_d);

double error_probability(double gamma);
double gamma_from_visibility(double visibility);
double visibility_from_gamma(double gamma);

/// The two gate qubits factored out of a larger state:
///   sum_xy alpha_xy |xy> |phi_xy>.
class ParityInput {
  public:
    /// Throws InvalidParameter if the amplitudes or environment vectors are not
    /// normalized, DimensionMismatch if environment dimensions differ.
    ParityInput(const std::array<Complex, 4> &amplitudes, const std::array<Eigen::VectorXcd, 4> &environment);

    /// Equal amplitudes 1/2 with orthonormal environment states e_0..e_3.
    static ParityInput plus_plus();

    Complex amplitude(Config c) const { return amplitudes_[static_cast<int>(c)]; }
    const Eigen::VectorXcd &environment(Config c) const { return environment_[static_cast<int>(c)]; }
    Eigen::Index dimension() const { return environment_[0].size(); }

    /// alpha_xy |phi_xy>.
    Eigen::VectorXcd branch(Config c) const { return amplitude(c) * environment(c); }

    /// Unnormalized environment vectors after a polarization unitary `u` on both photons.
    std::array<Eigen::VectorXcd, 4> rotated(const Eigen::Matrix2cd &u) const;

  private:
    std::array<Complex, 4> amplitudes_;
    std::array<Eigen::VectorXcd, 4> environment_;
};

/// Polarization rotation applied to both photons by the given variant.
Eigen::Matrix2cd variant_rotation(Variant variant);

struct ParityGateResult {
    /// Unnormalized environment operators after each heralded event. The
    /// success trace equals p_success only when the rotated HH and VV branches
    /// are orthogonal; otherwise the feed-forward sign is not a unitary on the
    /// environment and only the normalized operator is meaningful.
    Eigen::MatrixXcd success;
    Eigen::MatrixXcd failure_c;
    Eigen::MatrixXcd failure_d;
    double p_success = 0.0;
    double p_failure_c = 0.0;
    double p_failure_d = 0.0;
    double p_loss = 0.0;

    double p_failure() const { return p_failure_c + p_failure_d; }
};

/// Analytic gate model. On success the environment is left in
/// (1 - p) |psi_id><psi_id| + p |psi_err><psi_err|; for the rotated variant the
/// error is a projection onto the wrong parity subspace. Failure is a Z (plain)
/// or X (rotated) measurement of both photons.
ParityGateResult apply_parity_gate(const ParityInput &input, const GammaResult &noise, Variant variant);

enum class Branch { Success, Failure, Loss };
enum class Port { C, D };
enum class Basis { Z, X };

struct SuccessDetail {
    bool error_fired = false;
};
struct FailureDetail {
    Port port = Port::C;
    Basis basis = Basis::Z;
};
struct LossDetail {
    int photons_detected = 0;
};

struct FusionOutcome {
    std::variant<SuccessDetail, FailureDetail, LossDetail> detail;

    Branch branch() const { return static_cast<Branch>(detail.index()); }
};

/// Draws one gate outcome from the analytic branch probabilities. Exactly two
/// uniforms are consumed per call.
FusionOutcome sample_outcome(const ParityInput &input, const GammaResult &noise, Variant variant, Rng &rng);
FusionOutcome sample_outcome(const ParityInput &input, const GammaResult &noise, Variant variant,
                             std::uint64_t seed);

} // namespace fusionsim
