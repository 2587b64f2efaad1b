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

#include <vector>

#include <Eigen/Dense>

#include "fusionsim/detector.hpp"
#include "fusionsim/execution.hpp"
#include "fusionsim/fusion.hpp"
#include "fusionsim/linalg.hpp"
#include "fusionsim/wavepacket.hpp"

/// Brute-force two-photon simulation of the parity gate. Photons are carried
/// as labeled particles on a discretized frequency axis; bosonic statistics
/// enter at detection through symmetrized record amplitudes.
namespace fusionsim::oracle {

using fusionsim::trace_distance;

enum class Stage { Input, Output };

/// Single-qubit polarization unitaries applied to each photon before the PBS.
struct Prerotation {
    Eigen::Matrix2cd photon_a = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd photon_b = Eigen::Matrix2cd::Identity();

    static Prerotation identity() { return {}; }
    static Prerotation for_variant(Variant variant);
    static Prerotation hadamard_on_a();
};

/// Amplitude tensor psi[mode_1][mode_2][i][j][e]. Each photon has four modes,
/// indexed slot * 2 + polarization; slots are the ports (a, b) at the input
/// stage and (c, d) at the output stage. Photon 1 starts in port a, photon 2
/// in port b.
class TwoPhotonState {
  public:
    static constexpr int kModes = 4;

    TwoPhotonState(const FrequencyGrid &grid, Eigen::Index env_dim, Stage stage);

    const FrequencyGrid &grid() const { return grid_; }
    Eigen::Index env_dim() const { return env_dim_; }
    Stage stage() const { return stage_; }

    Complex &at(int mode_1, int mode_2, int i, int j, Eigen::Index e) { return data_[index(mode_1, mode_2, i, j, e)]; }
    Complex at(int mode_1, int mode_2, int i, int j, Eigen::Index e) const {
        return data_[index(mode_1, mode_2, i, j, e)];
    }

    double norm_squared() const;
    /// Probability of each frequency bin for photon 1 or 2.
    std::vector<double> marginal(int photon) const;
    /// Probability that photon 1 and photon 2 occupy the given port slots.
    double slot_probability(int slot_1, int slot_2) const;

  private:
    std::size_t index(int mode_1, int mode_2, int i, int j, Eigen::Index e) const {
        const auto m = static_cast<std::size_t>(grid_.bins());
        return (((static_cast<std::size_t>(mode_1) * kModes + mode_2) * m + i) * m + j) * env_dim_ + e;
    }

    FrequencyGrid grid_;
    Eigen::Index env_dim_;
    Stage stage_;
    std::vector<Complex> data_;

    friend TwoPhotonState apply_pbs(const TwoPhotonState &state);
    friend TwoPhotonState build_input(const ParityInput &, const WavePacket &, const WavePacket &,
                                      const FrequencyGrid &, const Prerotation &);
};

inline constexpr int kMaxBins = 256;
inline constexpr Eigen::Index kMaxEnvDim = 16;

/// Throws GridCoverage when either packet loses more than 1e-6 of its mass to
/// the grid, CapacityExceeded beyond the desk-scale caps.
TwoPhotonState build_input(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                           const FrequencyGrid &grid, const Prerotation &prerotation);

/// Polarizing beamsplitter: a_H -> c_H, b_H -> d_H, a_V -> d_V, b_V -> c_V.
TwoPhotonState apply_pbs(const TwoPhotonState &state);

struct BranchResult {
    Branch branch = Branch::Success;
    Eigen::MatrixXcd op;
    double probability = 0.0;
};

struct DetectionResult {
    BranchResult success;
    BranchResult failure_c;
    BranchResult failure_d;
    BranchResult loss;

    std::vector<BranchResult> branches() const { return {success, failure_c, failure_d, loss}; }
    double total_probability() const {
        return success.probability + failure_c.probability + failure_d.probability + loss.probability;
    }
};

/// Cell-averaged click weight of every bin, from integrating the click window
/// over all window centers in [-Delta, Delta].
std::vector<double> bin_acceptance(const FrequencyGrid &grid, const DetectorModel &det);

/// Diagonal-basis readout of both ports. Success operators carry the
/// feed-forward sign fix on the component whose port-c photon is V-polarized;
/// success probabilities are taken before that fix.
DetectionResult apply_detection(const TwoPhotonState &state, const DetectorModel &det_c, const DetectorModel &det_d,
                                Execution execution = Execution::Parallel);

/// |rho_ij| / sqrt(rho_ii rho_jj).
double coherence_ratio(const Eigen::MatrixXcd &rho, Eigen::Index i, Eigen::Index j);

/// Trace distance between normalized operators; 0 when both are empty and 1
/// when only one is.
double branch_distance(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma);

DetectionResult simulate(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                         const DetectorModel &det_c, const DetectorModel &det_d, const FrequencyGrid &grid,
                         Variant variant, Execution execution = Execution::Parallel);

struct ModelComparison {
    double success_distance = 0.0;
    double failure_c_distance = 0.0;
    double failure_d_distance = 0.0;
    double success_probability_error = 0.0;
    double failure_probability_error = 0.0;
    double loss_probability_error = 0.0;
    double completeness_error = 0.0;

    double max_distance() const;
};

/// Runs the dense simulation and the analytic model on the same input.
ModelComparison compare_with_model(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                                   const DetectorModel &det_c, const DetectorModel &det_d, const FrequencyGrid &grid,
                                   Variant variant);

/// Grid used by the comparison helpers: +/-8 sigma around both packets.
FrequencyGrid oracle_grid(const WavePacket &a, const WavePacket &b, int bins);

} // namespace fusionsim::oracle
